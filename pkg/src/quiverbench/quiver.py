"""Quivers, paths, relations, presentations and potentials.

Paths compose left to right: ``("a", "b")`` means *a then b*, so the target
of ``a`` is the source of ``b``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InputError

Path = tuple  # tuple[str, ...] of arrow names


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex identifier")
        seen = set()
        vs = set(self.vertices)
        for a in arrows:
            if a.name in seen:
                raise InputError(f"duplicate arrow name {a.name!r}")
            seen.add(a.name)
            if a.source not in vs or a.target not in vs:
                raise InputError(f"arrow {a.name!r} has an undeclared endpoint")

    @cached_property
    def _by_name(self) -> dict:
        return {a.name: a for a in self.arrows}

    @cached_property
    def _out(self) -> dict:
        d = defaultdict(list)
        for a in self.arrows:
            d[a.source].append(a.name)
        return {v: tuple(d[v]) for v in self.vertices}

    @cached_property
    def _in(self) -> dict:
        d = defaultdict(list)
        for a in self.arrows:
            d[a.target].append(a.name)
        return {v: tuple(d[v]) for v in self.vertices}

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise InputError(f"unknown arrow {name!r}") from None

    def source(self, name: str) -> str:
        return self.arrow(name).source

    def target(self, name: str) -> str:
        return self.arrow(name).target

    def arrows_from(self, v: str) -> tuple:
        return self._out[v]

    def arrows_to(self, v: str) -> tuple:
        return self._in[v]

    def is_path(self, path: Sequence[str]) -> bool:
        if not path or any(not self.has_arrow(a) for a in path):
            return False
        return all(self.target(a) == self.source(b) for a, b in zip(path, path[1:]))

    def check_path(self, path: Sequence[str]) -> None:
        if not path:
            raise InputError("empty path")
        for a in path:
            self.arrow(a)
        for a, b in zip(path, path[1:]):
            if self.target(a) != self.source(b):
                raise InputError(f"arrows {a!r} and {b!r} do not compose")

    def path_source(self, path: Sequence[str]) -> str:
        return self.source(path[0])

    def path_target(self, path: Sequence[str]) -> str:
        return self.target(path[-1])


def _collect(terms: Iterable) -> tuple:
    acc: dict = {}
    for coef, path in terms:
        path = tuple(path)
        acc[path] = acc.get(path, Fraction(0)) + Fraction(coef)
    return tuple(sorted(((c, p) for p, c in acc.items() if c), key=lambda t: t[1]))


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths; ``terms`` are (coefficient, path)."""

    terms: tuple
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "terms", _collect(self.terms))

    @classmethod
    def monomial(cls, *arrows: str, label: str = "") -> "Relation":
        return cls(((1, tuple(arrows)),), label)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def paths(self) -> tuple:
        return tuple(p for _, p in self.terms)

    def scaled(self, c) -> "Relation":
        return Relation(((Fraction(c) * k, p) for k, p in self.terms), self.label)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for c, p in self.terms:
            w = "·".join(p) if p else "e"
            parts.append(w if c == 1 else f"-{w}" if c == -1 else f"{c}*{w}")
        return " + ".join(parts).replace("+ -", "- ")


def check_relation(q: Quiver, r: Relation, min_length: int = 2) -> None:
    if r.is_zero:
        raise InputError("zero relation")
    ends = set()
    for _, p in r.terms:
        if len(p) < min_length:
            raise InputError(f"relation term {'·'.join(p) or 'e'} shorter than {min_length}")
        q.check_path(p)
        ends.add((q.path_source(p), q.path_target(p)))
    if len(ends) != 1:
        raise InputError(f"relation {r} mixes paths with different endpoints")


@dataclass(frozen=True)
class Presentation:
    """A bound quiver ``KQ/I`` with ``I`` generated by ``relations``."""

    quiver: Quiver
    relations: tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        rels = tuple(self.relations)
        object.__setattr__(self, "relations", rels)
        for r in rels:
            if not isinstance(r, Relation):
                raise InputError("relations must be Relation objects")
            check_relation(self.quiver, r)

    @property
    def is_monomial(self) -> bool:
        return all(r.is_monomial for r in self.relations)

    def relation_endpoints(self, r: Relation) -> tuple:
        p = r.terms[0][1]
        return self.quiver.path_source(p), self.quiver.path_target(p)

    @cached_property
    def endpoints(self) -> tuple:
        """``relation_endpoints`` of every relation, in order."""
        return tuple(self.relation_endpoints(r) for r in self.relations)


def _min_rotation(path: tuple) -> tuple:
    return min(path[i:] + path[:i] for i in range(len(path)))


@dataclass(frozen=True)
class Potential:
    """Finite linear combination of cycles; terms are stored up to rotation."""

    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms",
                           _collect((c, _min_rotation(tuple(p))) for c, p in self.terms))

    def check(self, q: Quiver) -> None:
        for _, p in self.terms:
            q.check_path(p)
            if q.path_target(p) != q.path_source(p):
                raise InputError(f"potential term {'·'.join(p)} is not cyclic")

    def __add__(self, other: "Potential") -> "Potential":
        return Potential(self.terms + other.terms)


def cyclic_derivative(w: Potential, a: str) -> Relation:
    """Cyclic derivative of ``w`` with respect to the arrow ``a``."""
    out = []
    for c, p in w.terms:
        for i, x in enumerate(p):
            if x == a:
                out.append((c, p[i + 1:] + p[:i]))
    return Relation(out)


def jacobian_presentation(q: Quiver, w: Potential) -> Presentation:
    """Relations are the nonzero cyclic derivatives (no completion).

    Raises InputError when a derivative has a term of length below two, i.e.
    when the potential has 2-cycles or loops that would need reduction.
    """
    w.check(q)
    rels = []
    for a in q.arrows:
        r = cyclic_derivative(w, a.name)
        if not r.is_zero:
            rels.append(r)
    try:
        return Presentation(q, tuple(rels))
    except InputError as e:
        raise InputError(f"derivative is not admissible: {e}") from None


def quotient_presentation(p: Presentation, extra: Iterable[Relation]) -> Presentation:
    rels = list(p.relations)
    seen = set(rels)
    for r in extra:
        check_relation(p.quiver, r)
        if r not in seen:
            seen.add(r)
            rels.append(r)
    return Presentation(p.quiver, tuple(rels), p.name)


@dataclass(frozen=True)
class SkewGentleTriple:
    quiver: Quiver
    special: frozenset
    relations: tuple

    def __post_init__(self):
        object.__setattr__(self, "special", frozenset(self.special))
        object.__setattr__(self, "relations", tuple(self.relations))
        if not self.special <= set(self.quiver.vertices):
            raise InputError("special vertices must be vertices of the quiver")
        for r in self.relations:
            check_relation(self.quiver, r)
            if not r.is_monomial or len(r.terms[0][1]) != 2:
                raise InputError(f"triple relation {r} is not a monomial of length 2")

    def loop_name(self, v: str) -> str:
        name = f"eps_{v}"
        while self.quiver.has_arrow(name):
            name += "'"
        return name

    def sp_presentation(self) -> Presentation:
        """The pair obtained by adding a loop ``e`` with ``e·e`` in I at each special vertex."""
        q = self.quiver
        loops = [Arrow(self.loop_name(v), v, v) for v in q.vertices if v in self.special]
        rels = self.relations + tuple(Relation.monomial(l.name, l.name) for l in loops)
        return Presentation(Quiver(q.vertices, q.arrows + tuple(loops)), rels)


@dataclass(frozen=True)
class Classification:
    special_biserial: bool
    string: bool
    gentle: bool
    witnesses: dict
    admissible: str

    def to_json(self) -> dict:
        return {"special_biserial": self.special_biserial, "string": self.string,
                "gentle": self.gentle, "witnesses": self.witnesses,
                "admissible": self.admissible}


class _QuadraticIdeal:
    """Membership of length-2 paths in the degree-2 part of the ideal.

    Exact when every generator is homogeneous; for other inputs only the
    generators all of whose terms have length two are taken into account.
    """

    def __init__(self, p: Presentation):
        from .linalg import Subspace

        self._index: dict = {}
        self._spaces: dict = {}
        by_ends = defaultdict(list)
        for r in p.relations:
            if all(len(path) == 2 for path in r.paths):
                by_ends[p.relation_endpoints(r)].append(r)
        for ends, rels in by_ends.items():
            paths = sorted({path for r in rels for path in r.paths})
            idx = {path: i for i, path in enumerate(paths)}
            sub = Subspace(len(paths))
            for r in rels:
                v = [0] * len(paths)
                for c, path in r.terms:
                    v[idx[path]] = c
                sub.add(v)
            for path in paths:
                self._index[path] = (ends, idx)
            self._spaces[ends] = sub

    def contains(self, path: tuple) -> bool:
        if path not in self._index:
            return False
        ends, idx = self._index[path]
        v = [0] * len(idx)
        v[idx[path]] = 1
        return self._spaces[ends].contains(v)


def admissibility(p: Presentation, bound: int = 64) -> str:
    """'verified' if the monomial generators kill every path of length ``bound``."""
    q = p.quiver
    mono = {r.terms[0][1] for r in p.relations if r.is_monomial}
    if any(len(r.paths[0]) < 2 for r in p.relations):
        return "not verified"
    keep = max((len(m) for m in mono), default=1) - 1
    # a state records the last ``keep`` arrows of a relation-avoiding path
    frontier = {((a.name,) if keep else (), a.name) for a in q.arrows}
    for _ in range(bound - 1):
        nxt = set()
        for suffix, last in frontier:
            for b in q.arrows_from(q.target(last)):
                full = suffix + (b,)
                if any(full[i:] in mono for i in range(len(full))):
                    continue
                nxt.add((full[-keep:] if keep else (), b))
        if not nxt:
            return "verified"
        frontier = nxt
    return "not verified"


def classify(p: Presentation, admissibility_bound: int = 64) -> Classification:
    """Decide the special biserial, string and gentle conditions.

    Every flag that fails carries a witness naming the offending vertex,
    arrow or relation.
    """
    q = p.quiver
    wit: dict = {"special_biserial": None, "string": None, "gentle": None}
    in_ideal = _QuadraticIdeal(p).contains

    sb = None
    for v in q.vertices:
        if len(q.arrows_from(v)) > 2:
            sb = {"condition": "at most two arrows start at each vertex", "vertex": v,
                  "arrows": list(q.arrows_from(v))}
            break
        if len(q.arrows_to(v)) > 2:
            sb = {"condition": "at most two arrows end at each vertex", "vertex": v,
                  "arrows": list(q.arrows_to(v))}
            break
    if sb is None:
        for a in q.arrows:
            succ = [b for b in q.arrows_from(a.target) if not in_ideal((a.name, b))]
            if len(succ) > 1:
                sb = {"condition": "at most one arrow b with a·b outside I", "arrow": a.name,
                      "arrows": succ}
                break
            pred = [c for c in q.arrows_to(a.source) if not in_ideal((c, a.name))]
            if len(pred) > 1:
                sb = {"condition": "at most one arrow c with c·a outside I", "arrow": a.name,
                      "arrows": pred}
                break
    wit["special_biserial"] = sb

    st = sb
    if st is None:
        bad = next((r for r in p.relations if not r.is_monomial), None)
        if bad is not None:
            st = {"condition": "I generated by paths", "relation": str(bad)}
    wit["string"] = st

    ge = st
    if ge is None:
        bad = next((r for r in p.relations if len(r.terms[0][1]) != 2), None)
        if bad is not None:
            ge = {"condition": "relations are paths of length two", "relation": str(bad)}
    if ge is None:
        for a in q.arrows:
            succ = [b for b in q.arrows_from(a.target) if in_ideal((a.name, b))]
            if len(succ) > 1:
                ge = {"condition": "at most one arrow b with a·b in I", "arrow": a.name,
                      "arrows": succ}
                break
            pred = [c for c in q.arrows_to(a.source) if in_ideal((c, a.name))]
            if len(pred) > 1:
                ge = {"condition": "at most one arrow c with c·a in I", "arrow": a.name,
                      "arrows": pred}
                break
    wit["gentle"] = ge
    return Classification(sb is None, st is None, ge is None, wit,
                          admissibility(p, admissibility_bound))


def is_skew_gentle_triple(t: SkewGentleTriple) -> tuple[bool, dict | None]:
    c = classify(t.sp_presentation())
    return c.gentle, c.witnesses["gentle"]
