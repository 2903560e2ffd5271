import pytest

from quiverbench import registry
from quiverbench.lattice import (ChainSpec, dense_chain_verify, equiv, independent_pair_verify,
                                 instance_chains, inverse_chain, le, lt,
                                 nonsymmetric_verify, pushdown_pipeline_verify, sup_inf,
                                 wide_sample_verify)
from quiverbench.modules import pointed_direct_sum, pointed_pushout_general, string_module
from quiverbench.words import order_cmp, parse_word


@pytest.fixture(scope="module")
def diamond():
    return registry.instance("inst_diamond")


def sm(p, text):
    return string_module(parse_word(p.quiver, text), p)


def test_le_matches_string_order(a1):
    low, high = sm(a1, "alpha gamma"), sm(a1, "alpha")
    assert le(low, high) and lt(low, high)
    assert not le(high, low)
    assert equiv(low, low)


def test_sup_inf_bounds(a1):
    a, b = sm(a1, "alpha gamma"), sm(a1, "beta")
    sup, inf = sup_inf(a, b)
    assert le(inf, a) and le(inf, b)
    assert le(a, sup) and le(b, sup)
    assert equiv(sup, pointed_direct_sum(a, b))
    assert equiv(inf, pointed_pushout_general(a, b))


def test_oriented_swaps_symbols():
    inst = registry.instance("inst_sphere5")
    p = inst.presentation
    plain = ChainSpec(p, inst.u, inst.v, "UV", "V")
    oriented = ChainSpec.oriented(p, inst.u, inst.v, "UV", "V")
    assert order_cmp(oriented.u, oriented.v) == -1
    if order_cmp(inst.u, inst.v) == 1:
        assert (oriented.s, oriented.t) == ("VU", "U")
        assert oriented.u == plain.v


def test_chain_size_and_order(diamond):
    c1, c2 = instance_chains(diamond)
    for c in (c1, c2):
        words = [w for _, w in c.elements()]
        assert len(words) == 15
        assert all(order_cmp(a, b) == -1 for a, b in zip(words, words[1:]))


def test_dense_chain_report(diamond):
    c1, _ = instance_chains(diamond)
    rep = dense_chain_verify(c1)
    assert rep.ok, rep.failures()
    ids = {c.id for c in rep.checks}
    assert {"pairwise_non_iso", "order_total"} <= ids
    assert rep.to_json()["ok"] is True


def test_dense_chain_rejects_bad_pair(a1):
    u = parse_word(a1.quiver, "alpha beta^-1")
    rep = dense_chain_verify(ChainSpec(a1, u, u, depth=2))
    assert not rep.ok
    assert rep.failures()[0].id.startswith("precondition")


def test_dense_chain_rejects_wrong_orientation():
    inst = registry.instance("inst_nz")
    rep = dense_chain_verify(ChainSpec(inst.presentation, inst.v, inst.u, depth=2))
    assert not rep.ok


def test_independent_needs_distinct_first_letters(diamond):
    c1, _ = instance_chains(diamond)
    rep = independent_pair_verify(c1, c1)
    assert not rep.ok


def test_independent_pair(diamond):
    c1, c2 = instance_chains(diamond)
    rep = independent_pair_verify(c1, c2)
    assert rep.ok, rep.failures()


def test_nonsymmetric(diamond):
    c1, c2 = instance_chains(diamond)
    assert nonsymmetric_verify(c1, c2, diamond.action).ok


def test_inverse_chain(diamond):
    c1, c2 = instance_chains(diamond)
    inv = inverse_chain(c1, diamond.chain2["S"], diamond.chain2["T"])
    assert [w for _, w in inv.elements()] == [w for _, w in c2.elements()]


def test_wide_sample(diamond):
    c1, c2 = instance_chains(diamond)
    rep = wide_sample_verify(c1, c2, sample=3, seed=1)
    assert rep.ok, rep.failures()


def test_wide_sample_small_chain_is_vacuous(diamond):
    p = diamond.presentation
    c1 = ChainSpec.oriented(p, diamond.u, diamond.v, depth=0)
    c2 = ChainSpec.oriented(p, diamond.u.inverse(), diamond.v.inverse(), depth=0)
    rep = wide_sample_verify(c1, c2, sample=2)
    assert rep.ok and [c.id for c in rep.checks] == ["vacuous"]


@pytest.mark.slow
def test_pushdown_pipeline(diamond):
    c1, c2 = instance_chains(diamond)
    rep = pushdown_pipeline_verify(c1, c2, diamond.action, sample=2)
    assert rep.ok, rep.failures()
