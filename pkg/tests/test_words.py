import pytest

from quiverbench import registry
from quiverbench.errors import InputError, UnsupportedError
from quiverbench.words import (canonical_band, enumerate_bands, is_band, is_string, order_cmp,
                               order_lt, parse_word, q_generating_pair, same_band,
                               sigma_words, string_algebra)

from oracles import closed_walk_bands, order_lt_literal

# [DERIVED] by the closed-walk oracle, then frozen
BAND_COUNTS = {("a1", 6): 5, ("nzs", 6): 3, ("sphere5", 6): 18, ("a2", 8): 1,
               ("shadow:bge_graph", 6): 12}
STRING_COUNTS = {"a1": [8, 12, 16, 24, 32, 48], "sphere5": [36, 72, 144, 288, 576, 1152],
                 "nzs": [12, 16, 20, 26, 32, 42]}


def w(p, text):
    return parse_word(p.quiver, text)


def test_parse_and_print(a1):
    s = w(a1, "alpha gamma delta^-1")
    assert str(s) == "alpha gamma delta^-1"
    assert s.walk[0] == a1.quiver.source("alpha")
    assert str(s.inverse()) == "delta gamma^-1 alpha^-1"


def test_parse_rejects_broken_walk(a1):
    with pytest.raises(InputError):
        w(a1, "alpha alpha")


def test_string_violations(a1):
    ok, _ = is_string(w(a1, "alpha gamma"), a1)
    assert ok
    bad = [s for s in string_algebra(a1).strings(2)]
    assert all(is_string(s, a1)[0] for s in bad)


def test_relation_blocks_string(sphere5):
    rel = sphere5.relations[0].terms[0][1]
    word = w(sphere5, " ".join(rel))
    assert not is_string(word, sphere5)[0]
    assert not is_string(word.inverse(), sphere5)[0]


def test_nonmonomial_rejected():
    with pytest.raises(UnsupportedError):
        string_algebra(registry.presentation("nz"))


@pytest.mark.parametrize("name", sorted(STRING_COUNTS))
def test_string_counts(name):
    p = registry.presentation(name)
    got = [0] * 6
    for s in string_algebra(p).strings(6):
        got[len(s) - 1] += 1
    assert got == STRING_COUNTS[name]


@pytest.mark.parametrize("key", sorted(BAND_COUNTS))
def test_bands_match_walk_oracle(key):
    name, n = key
    p = registry.presentation(name)
    got = {str(b) for b in enumerate_bands(p, n)}
    assert got == closed_walk_bands(p, n, is_string, canonical_band)
    assert len(got) == BAND_COUNTS[key]


def test_band_properties(sphere5):
    for b in enumerate_bands(sphere5, 6):
        assert is_band(b, sphere5)
        assert same_band(b, b.inverse().rotation(1))
        assert not is_band(b * 2, sphere5)


def test_order_examples(a1):
    a = w(a1, "alpha")
    longer_inverse = w(a1, "alpha beta^-1")
    longer_direct = w(a1, "alpha gamma")
    assert order_cmp(a, longer_inverse) == -1
    assert order_cmp(longer_direct, a) == -1
    assert order_lt(longer_direct, longer_inverse, "alpha")
    assert order_lt(longer_inverse, longer_direct, "alpha", convention="reversed")
    with pytest.raises(InputError):
        order_lt(a, w(a1, "beta"), "alpha")


def test_order_agrees_with_literal_conditions(sphere5):
    ws = [s for s in string_algebra(sphere5).strings(5) if s.letters[0] == w(sphere5, "a1").letters[0]]
    for s in ws:
        for t in ws:
            assert (order_cmp(s, t) == -1) == order_lt_literal(s, t)


def test_sigma_words():
    assert sigma_words(0) == [""]
    assert len(sigma_words(3)) == 15
    assert sigma_words(1) == ["", "U", "V"]


def test_q_generating_rejects_prolongation(a1):
    u = w(a1, "alpha beta^-1")
    ok, rep = q_generating_pair(u, u * 2, a1)
    assert not ok and not rep["no_prolongation"]


def test_q_generating_orientation():
    inst = registry.instance("inst_nz")
    ok, rep = q_generating_pair(inst.u, inst.v, inst.presentation, strict=True)
    assert ok and rep["orientation"] == "U<V"
    ok, rep = q_generating_pair(inst.v, inst.u, inst.presentation, strict=True)
    assert not ok and rep["orientation"] == "V<U"
