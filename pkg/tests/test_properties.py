from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from quiverbench import registry
from quiverbench.lattice import equiv, le, sup_inf
from quiverbench.modules import band_module, dim_hom, string_module, twist_rep
from quiverbench.quiver import Potential, cyclic_derivative
from quiverbench.words import (Letter, Word, enumerate_bands, is_string, order_cmp,
                               string_algebra, twist_word)

from oracles import hom_dim_dense

settings.register_profile("ci", deadline=None, derandomize=True, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

SPHERE = registry.presentation("sphere5")
A1 = registry.presentation("a1")
_, SWAP = registry.action("sphere5_swap")
_, A1_SWAP = registry.action("a1_swap")
SPHERE_STRINGS = list(string_algebra(SPHERE).strings(5))
A1_STRINGS = [w for w in string_algebra(A1).strings(4) if w.letters[0] == Letter("alpha")]
SPHERE_BANDS = enumerate_bands(SPHERE, 6)
W_QUIVER, W_PRIME = registry.potential("w_prime")


@st.composite
def walks(draw, p=SPHERE, max_len=7):
    """Reduced walks in the quiver, not necessarily strings."""
    q = p.quiver
    v = draw(st.sampled_from(q.vertices))
    letters, path = [], [v]
    for _ in range(draw(st.integers(1, max_len))):
        opts = [(Letter(a, True), q.target(a)) for a in q.arrows_from(path[-1])]
        opts += [(Letter(a, False), q.source(a)) for a in q.arrows_to(path[-1])]
        opts = [o for o in opts if not letters or o[0] != letters[-1].inverse()]
        if not opts:
            break
        x, nxt = draw(st.sampled_from(opts))
        letters.append(x)
        path.append(nxt)
    return Word(tuple(letters), tuple(path))


strings = st.sampled_from(SPHERE_STRINGS)
a1_strings = st.sampled_from(A1_STRINGS)


@given(walks())
def test_string_iff_inverse_string(w):
    assert is_string(w, SPHERE)[0] == is_string(w.inverse(), SPHERE)[0]


@given(walks())
def test_inverse_is_involution(w):
    assert w.inverse().inverse() == w
    assert len(w.inverse()) == len(w)


@given(strings, strings)
def test_order_antisymmetric(s, t):
    assert order_cmp(s, t) == -order_cmp(t, s)


@given(strings, strings)
def test_hom_dim_matches_dense_oracle(s, t):
    m, n = string_module(s, SPHERE).rep, string_module(t, SPHERE).rep
    assert dim_hom(m, n) == hom_dim_dense(m, n)


cycles = st.sampled_from([path for _, path in W_PRIME.terms])
coefs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@given(cycles, cycles, coefs, coefs, st.sampled_from([a.name for a in W_QUIVER.arrows]))
def test_derivative_linear(c1, c2, x, y, a):
    w = Potential(((x, c1), (y, c2)))
    left = dict((p, c) for c, p in cyclic_derivative(w, a).terms)
    right = {}
    for coef, cyc in ((x, c1), (y, c2)):
        for c, p in cyclic_derivative(Potential(((1, cyc),)), a).terms:
            right[p] = right.get(p, 0) + coef * c
    assert left == {p: c for p, c in right.items() if c}


@given(cycles, st.integers(0, 5))
def test_derivative_rotation_invariant(cyc, k):
    k %= len(cyc)
    rotated = cyc[k:] + cyc[:k]
    for a in set(cyc):
        assert cyclic_derivative(Potential(((1, cyc),)), a) == \
            cyclic_derivative(Potential(((1, rotated),)), a)


@settings(max_examples=30)
@given(a1_strings, a1_strings, a1_strings)
def test_le_is_a_preorder(x, y, z):
    a, b, c = (string_module(w, A1) for w in (x, y, z))
    assert le(a, a)
    if le(a, b) and le(b, c):
        assert le(a, c)


@settings(max_examples=20)
@given(a1_strings, a1_strings)
def test_sup_inf_commute(x, y):
    a, b = string_module(x, A1), string_module(y, A1)
    s1, i1 = sup_inf(a, b)
    s2, i2 = sup_inf(b, a)
    assert equiv(s1, s2) and equiv(i1, i2)


@given(st.sampled_from(SPHERE_BANDS), st.fractions(min_value=-7, max_value=7).filter(bool))
def test_band_modules_satisfy_relations(b, lam):
    m = band_module(b, SPHERE, scalar=Fraction(lam)).rep
    assert not m.relation_residue()


@given(strings)
def test_twist_involution(w):
    assert twist_word(SWAP, twist_word(SWAP, w)) == w
    m = string_module(w, SPHERE).rep
    assert twist_rep(SWAP, twist_rep(SWAP, m)).to_json() == m.to_json()


@given(strings, strings)
def test_hom_dim_twist_invariant(s, t):
    m, n = string_module(s, SPHERE).rep, string_module(t, SPHERE).rep
    assert dim_hom(twist_rep(SWAP, m), twist_rep(SWAP, n)) == dim_hom(m, n)
