"""Brauer graphs, their quivers and relation ideals, and string shadows."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import InputError, UnsupportedError
from .quiver import Arrow, Presentation, Quiver, Relation, classify


@dataclass(frozen=True)
class BrauerVertex:
    id: str
    m: int
    order: tuple


@dataclass(frozen=True)
class BrauerEdge:
    id: str
    ends: tuple


@dataclass(frozen=True)
class BrauerGraph:
    vertices: tuple
    edges: tuple

    def __post_init__(self):
        ids = [v.id for v in self.vertices]
        if len(set(ids)) != len(ids):
            raise InputError("duplicate Brauer vertex id")
        eids = [e.id for e in self.edges]
        if len(set(eids)) != len(eids):
            raise InputError("duplicate edge id")
        ends = {v: Counter() for v in ids}
        for e in self.edges:
            if len(e.ends) != 2 or any(x not in ends for x in e.ends):
                raise InputError(f"edge {e.id!r} must join two declared vertices")
            for x in e.ends:
                ends[x][e.id] += 1
        for v in self.vertices:
            if v.m < 1:
                raise InputError(f"multiplicity of {v.id!r} must be positive")
            got = Counter(v.order)
            want = ends[v.id]
            val = sum(want.values())
            double = (val == 1 and v.m > 1 and len(v.order) == 2
                      and got == Counter({next(iter(want)): 2}))
            if got != want and not double:
                raise InputError(f"order at {v.id!r} must list exactly its edge-ends")

    def valency(self, v: BrauerVertex) -> int:
        return sum(x == v.id for e in self.edges for x in e.ends)

    def truncated(self, v: BrauerVertex) -> bool:
        return self.valency(v) * v.m == 1

    def vertex(self, vid: str) -> BrauerVertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise InputError(f"unknown vertex {vid!r}")


@dataclass(frozen=True)
class SpecialCycle:
    """Arrows around a vertex, listed in the cyclic order starting at ``start``."""

    vertex: str
    start: str
    arrows: tuple


def graph_from_json(d: dict) -> BrauerGraph:
    try:
        vs = tuple(BrauerVertex(str(v["id"]), int(v.get("m", 1)),
                                tuple(str(x) for x in v["order"])) for v in d["vertices"])
        es = tuple(BrauerEdge(str(e["id"]), tuple(str(x) for x in e["ends"]))
                   for e in d["edges"])
    except (KeyError, TypeError, ValueError):
        raise InputError("malformed Brauer graph") from None
    return BrauerGraph(vs, es)


def graph_to_json(g: BrauerGraph) -> dict:
    return {"kind": "graph",
            "vertices": [{"id": v.id, "m": v.m, "order": list(v.order)} for v in g.vertices],
            "edges": [{"id": e.id, "ends": list(e.ends)} for e in g.edges]}


def _vertex_arrows(g: BrauerGraph, v: BrauerVertex) -> list[Arrow]:
    if g.truncated(v):
        return []
    if g.valency(v) == 1:
        x = v.order[0]
        return [Arrow(f"{v.id}1", x, x)]
    o = v.order
    return [Arrow(f"{v.id}{i + 1}", o[i], o[(i + 1) % len(o)]) for i in range(len(o))]


def brauer_quiver(g: BrauerGraph) -> tuple[Quiver, list[SpecialCycle]]:
    """Quiver on the edges of ``g`` and the special cycles, one per edge-end."""
    arrows: list[Arrow] = []
    cycles: list[SpecialCycle] = []
    for v in g.vertices:
        va = _vertex_arrows(g, v)
        arrows += va
        for k in range(len(va)):
            rot = va[k:] + va[:k]
            cycles.append(SpecialCycle(v.id, rot[0].source, tuple(a.name for a in rot)))
    return Quiver(tuple(e.id for e in g.edges), tuple(arrows)), cycles


def brauer_relations(g: BrauerGraph) -> list[Relation]:
    q, cycles = brauer_quiver(g)
    mult = {v.id: v.m for v in g.vertices}
    rels: list[Relation] = []
    for e in g.edges:
        at = [c for c in cycles if c.start == e.id]
        for c in at[1:]:
            rels.append(Relation(((1, at[0].arrows * mult[at[0].vertex]),
                                  (-1, c.arrows * mult[c.vertex])), "I"))
    for c in cycles:
        rels.append(Relation(((1, c.arrows * mult[c.vertex] + c.arrows[:1]),), "II"))
    inside = set()
    for c in cycles:
        n = len(c.arrows)
        for i in range(n):
            inside.add((c.arrows[i], c.arrows[(i + 1) % n]))
    loops = {f"{v.id}1" for v in g.vertices
             if g.valency(v) == 1 and v.m > 1}
    for a in q.arrows:
        for b in q.arrows_from(a.target):
            if (a.name, b) in inside or (a.name == b and a.name in loops):
                continue
            rels.append(Relation.monomial(a.name, b, label="III"))
    out, seen = [], set()
    for r in rels:
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


def brauer_algebra(g: BrauerGraph) -> Presentation:
    q, _ = brauer_quiver(g)
    return Presentation(q, tuple(brauer_relations(g)), "brauer")


def shadow(p: Presentation) -> Presentation:
    """String algebra whose ideal is generated by every path occurring in a relation."""
    if not classify(p).special_biserial:
        raise UnsupportedError("shadow needs a special biserial presentation")
    rels, seen = [], set()
    for r in p.relations:
        if len(r.terms) > 2:
            raise UnsupportedError(f"relation {r} has more than two terms")
        for path in r.paths:
            m = Relation.monomial(*path, label=r.label)
            if m not in seen:
                seen.add(m)
                rels.append(m)
    return Presentation(p.quiver, tuple(rels), p.name + "^" if p.name else "")
