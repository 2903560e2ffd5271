import pytest

from quiverbench import registry
from quiverbench.errors import InputError
from quiverbench.quiver import (Arrow, Potential, Presentation, Quiver, Relation, classify,
                                cyclic_derivative, jacobian_presentation)
from quiverbench.serialize import presentation_from_json, presentation_to_json

from oracles import derivative_count


def kronecker(rel=()):
    q = Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "1", "2")))
    return Presentation(q, tuple(rel))


def test_quiver_rejects_duplicate_arrows():
    with pytest.raises(InputError):
        Quiver(("1",), (Arrow("a", "1", "1"), Arrow("a", "1", "1")))


def test_quiver_rejects_unknown_vertex():
    with pytest.raises(InputError):
        Quiver(("1",), (Arrow("a", "1", "2"),))


def test_path_checks():
    q = registry.presentation("a1").quiver
    assert q.is_path(("alpha", "gamma"))
    assert not q.is_path(("gamma", "alpha"))
    with pytest.raises(InputError):
        q.check_path(("gamma", "alpha"))


def test_relation_collects_terms():
    r = Relation(((1, ("a", "b")), (2, ("a", "b")), (-3, ("a", "b"))))
    assert r.is_zero


def test_kronecker_is_gentle():
    c = classify(kronecker())
    assert c.gentle and c.string and c.special_biserial


def test_three_arrows_out_is_not_special_biserial():
    q = Quiver(("1", "2"), tuple(Arrow(n, "1", "2") for n in "abc"))
    c = classify(Presentation(q))
    assert not c.special_biserial and not c.gentle
    assert c.witnesses


@pytest.mark.parametrize("name,flags", [
    ("a1", (True, True, True)),
    ("sphere5", (True, True, True)),
    ("nzs", (True, True, True)),
    ("a2", (True, True, True)),
    ("brauer:bge_graph", (True, False, False)),
    ("shadow:bge_graph", (True, True, False)),
])
def test_classification_table(name, flags):
    c = classify(registry.presentation(name))
    assert (c.special_biserial, c.string, c.gentle) == flags


def test_nz_skew_algebra_is_not_special_biserial():
    c = classify(registry.presentation("nz"))
    assert not c.special_biserial and not c.string
    assert c.witnesses["special_biserial"]["vertex"] == "v3"


def test_presentation_json_roundtrip():
    p = registry.presentation("sphere5")
    assert presentation_from_json(presentation_to_json(p)) == p


def test_cyclic_derivative_rotation():
    q = Quiver(("1", "2", "3"), (Arrow("a", "1", "2"), Arrow("b", "2", "3"), Arrow("c", "3", "1")))
    w = Potential(((1, ("a", "b", "c")),))
    assert cyclic_derivative(w, "a").terms == ((1, ("b", "c")),)
    assert cyclic_derivative(w, "b").terms == ((1, ("c", "a")),)
    assert Potential(((1, ("b", "c", "a")),)) == w
    p = jacobian_presentation(q, w)
    assert len(p.relations) == 3


def test_w_prime_derivative_count():
    q, w = registry.potential("w_prime")
    rels = jacobian_presentation(q, w).relations
    assert sum(len(r.terms) for r in rels) == derivative_count(w) == 9


def test_jacobian_rejects_short_derivatives():
    q = Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "2", "1")))
    with pytest.raises(InputError):
        jacobian_presentation(q, Potential(((1, ("a", "b")),)))
