"""Cyclic group actions, skew-gentle constructions and the pushdown functor.

Only cyclic groups are modelled, and end-to-end skew support (target
presentation plus pushdown) is available for order two. Twisting follows
``twist_rep``: the module ``^gM`` carries ``M(g^-1 x)`` at ``x``.

The pushdown is the induction functor ``KG ⊗ M``: its underlying space is
``M ⊕ M`` with copy ``h`` holding ``g^h ⊗ M``, an element ``x`` of the algebra
acting on copy ``h`` through ``g^h(x)``. Vertex spaces of the skew algebra are
cut out by the idempotents ``e_i`` (free orbit, ``i`` the chosen
representative) and ``e_j (1 ± g)/2`` (fixed vertex ``j``).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from sympy import QQ

from . import linalg as la
from .errors import InputError, UnsupportedError
from .modules import (ModuleElement, PointedModule, Representation, decompose, dim_hom,
                      is_indecomposable_oracle, isomorphic, twist_rep)
from .quiver import Arrow, Presentation, Quiver, Relation, SkewGentleTriple
from .words import Word, twist_word


# ------------------------------------------------------------ actions

@dataclass(frozen=True)
class GroupAction:
    """Action of the cyclic group of order ``order`` through its generator.

    Missing map entries are fixed points.
    """

    order: int
    vertex_map: Mapping[str, str] = field(default_factory=dict)
    arrow_map: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if int(self.order) < 1:
            raise InputError("group order must be positive")
        object.__setattr__(self, "order", int(self.order))
        object.__setattr__(self, "vertex_map",
                           {str(k): str(v) for k, v in self.vertex_map.items() if k != v})
        object.__setattr__(self, "arrow_map",
                           {str(k): str(v) for k, v in self.arrow_map.items() if k != v})

    def vertex(self, v: str) -> str:
        return self.vertex_map.get(v, v)

    def arrow(self, a: str) -> str:
        return self.arrow_map.get(a, a)

    def power(self, k: int) -> "GroupAction":
        k %= self.order
        vm, am = {}, {}
        keys_v = set(self.vertex_map) | set(self.vertex_map.values())
        keys_a = set(self.arrow_map) | set(self.arrow_map.values())
        for v in keys_v:
            x = v
            for _ in range(k):
                x = self.vertex(x)
            vm[v] = x
        for a in keys_a:
            x = a
            for _ in range(k):
                x = self.arrow(x)
            am[a] = x
        return GroupAction(self.order, vm, am)

    @property
    def inverse(self) -> "GroupAction":
        return self.power(-1)

    @property
    def elements(self) -> range:
        return range(self.order)

    def to_json(self) -> dict:
        return {"order": self.order, "vertex_map": dict(sorted(self.vertex_map.items())),
                "arrow_map": dict(sorted(self.arrow_map.items()))}


def action_from_json(d: dict) -> GroupAction:
    try:
        return GroupAction(int(d["order"]), dict(d.get("vertex_map", {})),
                           dict(d.get("arrow_map", {})))
    except (KeyError, TypeError, ValueError, AttributeError):
        raise InputError("malformed group action") from None


def identity_action(order: int = 2) -> GroupAction:
    return GroupAction(order)


def _orbit(f, x, n) -> list:
    out = [x]
    for _ in range(n - 1):
        out.append(f(out[-1]))
    return out


def _relation_vector(r: Relation) -> dict:
    return {path: Fraction(c) for c, path in r.terms}


def _map_relation(g: GroupAction, r: Relation) -> Relation:
    return Relation((c, tuple(g.arrow(a) for a in path)) for c, path in r.terms)


def _in_span(target: dict, gens: list[dict]) -> bool:
    cols = sorted(set(target).union(*gens)) if gens else sorted(target)
    sub = la.Subspace(len(cols), [[la.q(v.get(p, 0)) for p in cols] for v in gens])
    return sub.contains([la.q(target.get(p, 0)) for p in cols])


def validate_action(p: Presentation, g: GroupAction) -> tuple[bool, dict]:
    """Check that ``g`` acts on ``p`` by automorphisms preserving the ideal.

    Relation images are tested for membership in the span of the generators
    sharing their endpoints, which is exact for ideals generated in a single
    path length.
    """
    q = p.quiver
    viol = []
    verts, arrs = set(q.vertices), {a.name for a in q.arrows}
    for name, keys, f in (("vertex", verts, g.vertex), ("arrow", arrs, g.arrow)):
        unknown = (set(g.vertex_map if name == "vertex" else g.arrow_map)) - keys
        if unknown:
            viol.append({"kind": f"{name}_unknown", "items": sorted(unknown)})
            continue
        if {f(x) for x in keys} != keys:
            viol.append({"kind": f"{name}_not_bijective"})
        bad = sorted(x for x in keys if _orbit(f, x, g.order + 1)[-1] != x)
        if bad:
            viol.append({"kind": f"{name}_order", "items": bad})
    if not viol:
        for a in q.arrows:
            b = q.arrow(g.arrow(a.name))
            if (b.source, b.target) != (g.vertex(a.source), g.vertex(a.target)):
                viol.append({"kind": "endpoints", "arrow": a.name, "image": b.name})
        if not viol:
            by_ends = defaultdict(list)
            for r in p.relations:
                by_ends[p.relation_endpoints(r)].append(_relation_vector(r))
            for r in p.relations:
                img = _map_relation(g, r)
                ends = p.relation_endpoints(img)
                if not _in_span(_relation_vector(img), by_ends.get(ends, [])):
                    viol.append({"kind": "ideal", "relation": str(r), "image": str(img)})
    table = []
    seen = set()
    if not any(v["kind"].startswith("vertex") for v in viol):
        for v in q.vertices:
            if v in seen:
                continue
            orb = list(dict.fromkeys(_orbit(g.vertex, v, g.order)))
            seen.update(orb)
            table.append({"representative": v, "orbit": orb,
                          "stabilizer_order": g.order // len(orb)})
    assumption = all(row["stabilizer_order"] in (1, g.order) for row in table)
    if not assumption:
        viol.append({"kind": "assumption", "detail": "a proper nontrivial stabilizer occurs"})
    return not viol, {"violations": viol, "orbits": table, "assumption": assumption,
                      "order": g.order}


# ---------------------------------------------------- skew-gentle pairs

def _plus(x: str) -> str:
    return f"{x}+"


def _minus(x: str) -> str:
    return f"{x}-"


def g_pair(t: SkewGentleTriple) -> tuple[Presentation, GroupAction]:
    """Gentle pair with its involution: ordinary vertices and all arrows doubled."""
    q = t.quiver
    sp = t.special
    verts = []
    vmap = {}
    for v in q.vertices:
        if v in sp:
            verts.append(v)
        else:
            verts += [_plus(v), _minus(v)]
            vmap[_plus(v)], vmap[_minus(v)] = _minus(v), _plus(v)

    def end(v, sign):
        return v if v in sp else (_plus(v) if sign > 0 else _minus(v))

    arrows, amap = [], {}
    for a in q.arrows:
        arrows.append(Arrow(_plus(a.name), end(a.source, 1), end(a.target, 1)))
        arrows.append(Arrow(_minus(a.name), end(a.source, -1), end(a.target, -1)))
        amap[_plus(a.name)], amap[_minus(a.name)] = _minus(a.name), _plus(a.name)
    rels = []
    for r in t.relations:
        x, y = r.terms[0][1]
        if q.target(x) in sp:
            rels += [Relation.monomial(_plus(x), _minus(y)), Relation.monomial(_minus(x), _plus(y))]
        else:
            rels += [Relation.monomial(_plus(x), _plus(y)), Relation.monomial(_minus(x), _minus(y))]
    return Presentation(Quiver(tuple(verts), tuple(arrows)), tuple(rels)), GroupAction(2, vmap, amap)


@dataclass(frozen=True)
class SkewTarget:
    """A basic presentation of the skew group algebra with its idempotent data.

    ``vertices`` maps a target vertex to ``(vertex, sign)``: ``sign`` is None
    for a free orbit (idempotent ``e_vertex``) and ``±1`` for a fixed vertex
    (idempotent ``e_vertex (1 ± g)/2``). ``arrows`` maps a target arrow to the
    arrow ``x`` of the acted-on algebra with ``e_a x e_b`` as its element.
    """

    presentation: Presentation
    vertices: Mapping[str, tuple]
    arrows: Mapping[str, str]
    source: Presentation | None = None

    def multiplicity(self, vertex: str) -> int:
        """How often the projective at ``vertex`` occurs in the skew group algebra.

        A free orbit contributes two isomorphic idempotents ``e_i`` and ``e_{gi}``
        of which the basic presentation keeps one.
        """
        return 2 if self.vertices[vertex][1] is None else 1

    def skew_dim(self, rep: Representation) -> int:
        """Dimension of the module over the skew group algebra itself."""
        return sum(self.multiplicity(v) * d for v, d in rep.dims.items())

    def skew_vertex_set(self) -> list[tuple[str, str]]:
        return [(v, "triv" if s in (None, 1) else "sgn") for v, s in self.vertices.values()]


def _sg_vertices(t: SkewGentleTriple) -> dict:
    out = {}
    for v in t.quiver.vertices:
        out[v] = [(_plus(v), 1), (_minus(v), -1)] if v in t.special else [(v, None)]
    return out


def sg_target(t: SkewGentleTriple) -> SkewTarget:
    """The skew-gentle pair of ``t`` together with its identification inside
    the skew group algebra of ``g_pair(t)``."""
    q, sp = t.quiver, t.special
    refine = _sg_vertices(t)
    verts, vinfo = [], {}
    for v in q.vertices:
        for name, sign in refine[v]:
            verts.append(name)
            vinfo[name] = (v if v in sp else _plus(v), sign)
    arrows, ainfo = [], {}
    names = {}
    for a in q.arrows:
        for sa, _ in refine[a.source]:
            for tb, _ in refine[a.target]:
                if a.source in sp or a.target in sp:
                    name = f"{a.name}:{sa}>{tb}"
                else:
                    name = a.name
                arrows.append(Arrow(name, sa, tb))
                ainfo[name] = _plus(a.name)
                names[(a.name, sa, tb)] = name
    rels = []
    for r in t.relations:
        x, y = r.terms[0][1]
        m = q.target(x)
        for sa, _ in refine[q.source(x)]:
            for tc, _ in refine[q.target(y)]:
                terms = [(Fraction(-1 if sign == -1 else 1),
                          (names[(x, sa, mb)], names[(y, mb, tc)])) for mb, sign in refine[m]]
                rels.append(Relation(terms))
    pres = Presentation(Quiver(tuple(verts), tuple(arrows)), tuple(rels))
    return SkewTarget(pres, vinfo, ainfo, g_pair(t)[0])


def sg_pair(t: SkewGentleTriple) -> Presentation:
    """Special vertices split into ``j+``/``j-``; arrows refined over endpoints."""
    return sg_target(t).presentation


def rename_presentation(p: Presentation, vmap: Mapping[str, str],
                        amap: Mapping[str, str], name: str = "") -> Presentation:
    q = p.quiver
    vs = tuple(vmap.get(v, v) for v in q.vertices)
    arrows = tuple(Arrow(amap.get(a.name, a.name), vmap.get(a.source, a.source),
                         vmap.get(a.target, a.target)) for a in q.arrows)
    rels = tuple(Relation(((c, tuple(amap.get(x, x) for x in path)) for c, path in r.terms),
                          r.label) for r in p.relations)
    return Presentation(Quiver(vs, arrows), rels, name or p.name)


def same_presentation(a: Presentation, b: Presentation) -> bool:
    """Equality of vertex sets, arrows with endpoints, and relation sets."""
    qa, qb = a.quiver, b.quiver
    if set(qa.vertices) != set(qb.vertices):
        return False
    if {(x.name, x.source, x.target) for x in qa.arrows} != \
            {(x.name, x.source, x.target) for x in qb.arrows}:
        return False
    return set(a.relations) == set(b.relations)


# ---------------------------------------------- recovering the triple

class _Parity:
    """Union-find with parity for the sign labelling of orbit representatives."""

    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        if x not in self.parent:
            self.parent[x] = (x, 0)
        root, par = self.parent[x]
        if root == x:
            return x, 0
        r, p2 = self.find(root)
        self.parent[x] = (r, par ^ p2)
        return r, par ^ p2

    def union(self, x, y, diff: int) -> bool:
        (rx, px), (ry, py) = self.find(x), self.find(y)
        if rx == ry:
            return (px ^ py) == diff
        self.parent[rx] = (ry, px ^ py ^ diff)
        return True


def triple_from_action(p: Presentation, g: GroupAction) -> tuple[SkewGentleTriple, dict]:
    """Recover a triple ``t`` with ``g_pair(t)`` equal to ``(p, g)`` up to renaming.

    Returns the triple and the identification ``{"vertices": ..., "arrows": ...}``
    sending names of ``g_pair(t)`` to names of ``p``.
    """
    ok, rep = validate_action(p, g)
    if not ok:
        raise InputError(f"invalid action: {rep['violations'][0]}")
    if g.order != 2:
        raise UnsupportedError("skew-gentle recovery is implemented for order two only")
    q = p.quiver
    fixed = {v for v in q.vertices if g.vertex(v) == v}
    if any(g.arrow(a.name) == a.name for a in q.arrows):
        raise UnsupportedError("an arrow fixed by the involution has no skew-gentle model")
    if not all(r.is_monomial and len(r.terms[0][1]) == 2 for r in p.relations):
        raise UnsupportedError("skew-gentle recovery needs quadratic monomial relations")
    uf = _Parity()
    cons = []
    for v in q.vertices:
        if v not in fixed:
            cons.append((("v", v), ("v", g.vertex(v)), 1))
    for a in q.arrows:
        cons.append((("a", a.name), ("a", g.arrow(a.name)), 1))
        for end in (a.source, a.target):
            if end not in fixed:
                cons.append((("a", a.name), ("v", end), 0))
    for r in p.relations:
        x, y = r.terms[0][1]
        cons.append((("a", x), ("a", y), 1 if q.target(x) in fixed else 0))
    for x, y, d in cons:
        if not uf.union(x, y, d):
            raise UnsupportedError(f"no consistent sign labelling ({x[1]} vs {y[1]})")

    flip = {}
    for key in [("v", v) for v in q.vertices if v not in fixed] + [("a", a.name) for a in q.arrows]:
        root, par = uf.find(key)
        flip.setdefault(root, par)

    def plus(kind, name):
        root, par = uf.find((kind, name))
        return par == flip[root]

    vident, aident = {}, {}
    tv, ta = [], []
    for v in q.vertices:
        if v in fixed:
            tv.append(v)
            vident[v] = v
        elif plus("v", v):
            tv.append(v)
            vident[_plus(v)], vident[_minus(v)] = v, g.vertex(v)
    base = {}
    for v in q.vertices:
        base[v] = v if v in fixed or plus("v", v) else g.vertex(v)
    for a in q.arrows:
        if plus("a", a.name):
            ta.append(Arrow(a.name, base[a.source], base[a.target]))
            aident[_plus(a.name)], aident[_minus(a.name)] = a.name, g.arrow(a.name)
    rels = []
    for r in p.relations:
        x, y = r.terms[0][1]
        if plus("a", x):
            yy = y if plus("a", y) else g.arrow(y)
            rels.append(Relation.monomial(x, yy))
    t = SkewGentleTriple(Quiver(tuple(tv), tuple(ta)), frozenset(fixed), tuple(rels))
    gp, gg = g_pair(t)
    ident = {"vertices": vident, "arrows": aident}
    if not same_presentation(rename_presentation(gp, vident, aident), p):
        raise UnsupportedError("the action is not the involution of a skew-gentle triple")
    return t, ident


def skew_target(p: Presentation, g: GroupAction) -> SkewTarget:
    """Basic presentation of the skew group algebra of ``(p, g)``, order two only."""
    t, ident = triple_from_action(p, g)
    base = sg_target(t)
    vinfo = {k: (ident["vertices"][v], s) for k, (v, s) in base.vertices.items()}
    ainfo = {k: ident["arrows"][a] for k, a in base.arrows.items()}
    return SkewTarget(base.presentation, vinfo, ainfo, p)


# ------------------------------------------------------------ pushdown

def _check_target(p: Presentation, g: GroupAction, target: SkewTarget) -> None:
    if not isinstance(target, SkewTarget):
        raise InputError("pushdown target must be a SkewTarget")
    if g.order != 2:
        raise UnsupportedError("pushdown is implemented for order two only")
    if target.source is not None and not same_presentation(target.source, p):
        raise InputError("pushdown target does not belong to this presentation")
    q = p.quiver
    for v, s in target.vertices.values():
        if not q.vertices or v not in q.vertices:
            raise InputError(f"target refers to unknown vertex {v!r}")
        if (s is None) == (g.vertex(v) == v):
            raise InputError(f"target idempotent at {v!r} does not match the action")
    for a in target.arrows.values():
        if not q.has_arrow(a):
            raise InputError(f"target refers to unknown arrow {a!r}")


def _embedding(m: Representation, g: GroupAction, v: str, sign) -> list[dict]:
    """Basis of ``E · FM`` as vectors over coordinates ``(copy, vertex, index)``."""
    if sign is None:
        return ([{(0, v, k): QQ(1)} for k in range(m.dims[v])]
                + [{(1, g.vertex(v), k): QQ(1)} for k in range(m.dims[g.vertex(v)])])
    return [{(0, v, k): QQ(1), (1, v, k): QQ(sign)} for k in range(m.dims[v])]


def _coords(m: Representation, g: GroupAction, v: str, sign, w: dict) -> list:
    if sign is None:
        d0 = m.dims[v]
        out = [QQ(0)] * (d0 + m.dims[g.vertex(v)])
        for (h, x, k), c in w.items():
            if c and h == 0 and x == v:
                out[k] = c
            elif c and h == 1 and x == g.vertex(v):
                out[d0 + k] = c
            elif c:
                raise AssertionError("vector outside the idempotent image")
        return out
    out = [QQ(0)] * m.dims[v]
    half = QQ(1, 2)
    for (h, x, k), c in w.items():
        if c and x == v:
            out[k] += c * half * (1 if h == 0 else sign)
        elif c:
            raise AssertionError("vector outside the idempotent image")
    return out


def _act(m: Representation, g: GroupAction, arrow: str, w: dict) -> dict:
    q = m.quiver
    out = defaultdict(lambda: QQ(0))
    rows = {}
    for (h, v, k), c in w.items():
        b = g.arrow(arrow) if h else arrow
        if q.target(b) != v or not c:
            continue
        if b not in rows:
            rows[b] = la.to_rows(m.mats[b])
        s = q.source(b)
        for r, row in enumerate(rows[b]):
            if row[k]:
                out[(h, s, r)] += row[k] * c
    return dict(out)


def pushdown(p: Presentation, g: GroupAction, target: SkewTarget,
             m: Representation) -> Representation:
    """The induced module ``KG ⊗ M`` written over the target presentation."""
    _check_target(p, g, target)
    if m.presentation is not p and not same_presentation(m.presentation, p):
        raise InputError("module is not over the acted-on presentation")
    tq = target.presentation.quiver
    dims = {}
    for tv in tq.vertices:
        v, s = target.vertices[tv]
        dims[tv] = len(_embedding(m, g, v, s))
    mats = {}
    for a in tq.arrows:
        sv, ss = target.vertices[a.source]
        tv, ts = target.vertices[a.target]
        cols = []
        for w in _embedding(m, g, tv, ts):
            cols.append(_coords(m, g, sv, ss, _act(m, g, target.arrows[a.name], w)))
        mats[a.name] = la.matrix({i: {j: col[i] for j, col in enumerate(cols)}
                                  for i in range(dims[a.source])},
                                 (dims[a.source], dims[a.target]))
    return Representation(target.presentation, dims, mats)


def pushdown_element(p: Presentation, g: GroupAction, target: SkewTarget,
                     m: Representation, x: ModuleElement) -> ModuleElement:
    """Image of ``x`` in the pushdown: components at a non-representative
    vertex of a free orbit are moved to copy one by ``g``."""
    coords = {}
    for tv, (v, s) in target.vertices.items():
        w = {}
        if s is None:
            for k, c in enumerate(x.coords[v]):
                w[(0, v, k)] = c
            for k, c in enumerate(x.coords[g.vertex(v)]):
                w[(1, g.vertex(v), k)] = c
        else:
            for k, c in enumerate(x.coords[v]):
                w[(0, v, k)] = c
        coords[tv] = tuple(_coords(m, g, v, s, w))
    return ModuleElement(coords)


def pointed_pushdown(p: Presentation, g: GroupAction, target: SkewTarget,
                     a: PointedModule) -> PointedModule:
    rep = pushdown(p, g, target, a.rep)
    return PointedModule(rep, tuple(pushdown_element(p, g, target, a.rep, x) for x in a.points))


# ---------------------------------------------------- hom identities

def stabilizer_of_module(m: Representation | Word, g: GroupAction, seed: int = 0) -> dict:
    """``{h : ^h M ≅ M}``; words use the string criterion, representations the oracle."""
    elems = []
    method = "word" if isinstance(m, Word) else "oracle"
    for h in g.elements:
        if isinstance(m, Word):
            tw = twist_word(g.power(h), m)
            same = tw == m or tw == m.inverse()
        else:
            same = isomorphic(twist_rep(g, m, h), m, seed=seed)
            if same is None:
                raise UnsupportedError("isomorphism oracle was inconclusive")
        if same:
            elems.append(h)
    return {"elements": elems, "order": len(elems), "full": len(elems) == g.order,
            "method": method}


def hom_dim_check(p: Presentation, g: GroupAction, target: SkewTarget,
                  m: Representation, n: Representation, seed: int = 0) -> dict:
    """Compare ``dim Hom(FM, FN)`` with the case-matched sum over the group."""
    lhs = dim_hom(pushdown(p, g, target, m), pushdown(p, g, target, n))
    full_m = stabilizer_of_module(m, g, seed)["full"] if m.dim else True
    full_n = stabilizer_of_module(n, g, seed)["full"] if n.dim else True
    if not full_m:
        case = "G_M != G"
        rhs = sum(dim_hom(twist_rep(g, m, h), n) for h in g.elements)
    elif not full_n:
        case = "G_N != G"
        rhs = sum(dim_hom(m, twist_rep(g, n, h)) for h in g.elements)
    else:
        case = "G_MN = G"
        rhs = g.order * dim_hom(m, n)
    general = sum(dim_hom(m, twist_rep(g, n, h)) for h in g.elements)
    return {"lhs": lhs, "rhs": rhs, "case": case, "general_rhs": general,
            "ok": lhs == rhs == general}


def splitting_check(p: Presentation, g: GroupAction, target: SkewTarget,
                    m: Representation, max_dim: int = 12, seed: int = 0) -> dict:
    """Number of indecomposable summands of ``FM`` against the stabilizer rule."""
    stab = stabilizer_of_module(m, g, seed)
    fm = pushdown(p, g, target, m)
    expected = g.order if stab["full"] else 1
    if fm.dim > max_dim:
        return {"stabilizer": stab["elements"], "expected": expected, "summands": None,
                "ok": None, "dim": fm.dim}
    if expected == 1:
        v = is_indecomposable_oracle(fm, max_dim=max_dim, seed=seed).verdict
        count = 1 if v == "indecomposable" else None
    else:
        count = len(decompose(fm, max_dim=max_dim, seed=seed))
    return {"stabilizer": stab["elements"], "expected": expected, "summands": count,
            "ok": count == expected, "dim": fm.dim}
