import itertools

import pytest

from quiverbench import linalg as la
from quiverbench.errors import InputError
from quiverbench.modules import (Representation, band_module, decompose, dim_hom, direct_sum,
                                 hom_space, is_hom, is_indecomposable_oracle, isomorphic,
                                 pointed_direct_sum, pointed_hom_exists, pointed_isomorphic,
                                 pointed_pushout_general, pointed_pushout_string,
                                 representation_from_json, string_module)
from quiverbench.words import enumerate_bands, parse_word, string_algebra

from oracles import hom_dim_dense, walk_counts

# [DERIVED] sum of dim Hom(M, N) over A1 string modules of length <= 3, dense oracle
A1_HOM_TOTAL = 980


def sm(p, text):
    return string_module(parse_word(p.quiver, text), p)


def test_string_module_dimension_vector(sphere5):
    for s in string_algebra(sphere5).strings(5):
        m = string_module(s, sphere5)
        counts = walk_counts(s)
        assert {v: d for v, d in m.rep.dims.items() if d} == counts
        assert not m.rep.relation_residue()


def test_hom_dimensions_match_dense_oracle(a1):
    reps = [string_module(s, a1).rep for s in string_algebra(a1).strings(3)]
    total = 0
    for m, n in itertools.product(reps, reps):
        d = dim_hom(m, n)
        assert d == hom_dim_dense(m, n)
        total += d
    assert total == A1_HOM_TOTAL


def test_hom_basis_elements_are_homs(a1):
    m, n = sm(a1, "alpha").rep, sm(a1, "alpha gamma").rep
    basis = hom_space(m, n)
    assert basis and all(is_hom(f, m, n) for f in basis)


def test_relation_violation_rejected(a1):
    rel = a1.relations[0].terms[0][1]
    q = a1.quiver
    dims = {q.source(rel[0]): 1, q.target(rel[0]): 1, q.target(rel[1]): 1}
    mats = {rel[0]: la.from_rows([[1]]), rel[1]: la.from_rows([[1]])}
    if len({q.source(rel[0]), q.target(rel[0]), q.target(rel[1])}) == 3:
        with pytest.raises(InputError):
            Representation(a1, dims, mats)


def test_bad_shape_rejected(a1):
    with pytest.raises(InputError):
        Representation(a1, {"1": 1}, {"alpha": la.from_rows([[1, 1]])})


def test_json_roundtrip(sphere5):
    m = sm(sphere5, "a1 a2^-1 a3").rep
    back = representation_from_json(sphere5, m.to_json())
    assert back.to_json() == m.to_json()


def test_pointed_homs_follow_string_order(a1):
    # alpha gamma < alpha < alpha beta^-1; homs run from the larger string
    low, mid, high = sm(a1, "alpha gamma"), sm(a1, "alpha"), sm(a1, "alpha beta^-1")
    assert pointed_hom_exists(mid, low) is not None
    assert pointed_hom_exists(high, mid) is not None
    assert pointed_hom_exists(low, mid) is None
    assert pointed_hom_exists(mid, high) is None


def test_pushout_string_matches_general(a1):
    t = parse_word(a1.quiver, "alpha")
    s = parse_word(a1.quiver, "beta")
    a = pointed_pushout_string(t, s, a1)
    b = pointed_pushout_general(string_module(s, a1), string_module(t, a1))
    assert a.dim == b.dim == 3
    assert pointed_isomorphic(a, b, local=True)


def test_pushout_is_below_both(a1):
    s, t = sm(a1, "alpha gamma"), sm(a1, "beta")
    po = pointed_pushout_general(s, t)
    assert pointed_hom_exists(s, po) is not None
    assert pointed_hom_exists(t, po) is not None


def test_pointed_direct_sum_dimension(a1):
    a, b = sm(a1, "alpha"), sm(a1, "beta")
    assert pointed_direct_sum(a, b).dim == a.dim + b.dim


def test_indecomposable_oracle(sphere5):
    b = enumerate_bands(sphere5, 4)[0]
    m = band_module(b, sphere5, scalar=3).rep
    assert is_indecomposable_oracle(m).verdict == "indecomposable"
    d = direct_sum(m, sm(sphere5, "a1").rep)
    assert is_indecomposable_oracle(d).verdict == "decomposable"
    assert len(decompose(d)) == 2


def test_band_scalars_distinguish(a1):
    b = enumerate_bands(a1, 2)[0]
    m2, m3 = band_module(b, a1, scalar=2).rep, band_module(b, a1, scalar=3).rep
    assert isomorphic(m2, m2) is True
    assert isomorphic(m2, m3) is False
    assert dim_hom(m2, m3) == hom_dim_dense(m2, m3)


def test_inverse_string_gives_isomorphic_module(sphere5):
    s = parse_word(sphere5.quiver, "a1 a2^-1 a3")
    assert isomorphic(string_module(s, sphere5).rep, string_module(s.inverse(), sphere5).rep)
