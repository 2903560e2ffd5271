"""Representations of bound quivers, string modules and pointed modules.

Modules are left modules over ``KQ/I`` with paths composed left to right.
An arrow ``a = e_s a e_t`` therefore maps the space at its target to the
space at its source, and its matrix has shape ``dim(source) x dim(target)``.
The path ``("a", "b")`` acts as ``M(a) @ M(b)``.

String module of ``S = l_1 ... l_n``: ``z_1`` sits at the source of S and
``z_{j+1}`` at the vertex reached after ``l_j``. A direct letter ``a`` sends
``z_{j+1}`` to ``z_j``; for an inverse letter ``a^-1`` the arrow ``a`` sends
``z_j`` to ``z_{j+1}``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from sympy import Poly, QQ, symbols
from sympy.polys.matrices import DomainMatrix

from . import linalg as la
from .errors import InputError
from .quiver import Presentation
from .words import Word, is_string


@dataclass(frozen=True, eq=False)
class Representation:
    presentation: Presentation
    dims: Mapping[str, int]
    mats: Mapping[str, DomainMatrix]
    labels: Mapping[str, tuple] | None = None

    def __post_init__(self):
        q = self.presentation.quiver
        extra = set(self.dims) - set(q.vertices)
        if extra:
            raise InputError(f"dimensions given for unknown vertices {sorted(extra)}")
        dims = {v: int(self.dims.get(v, 0)) for v in q.vertices}
        if any(d < 0 for d in dims.values()):
            raise InputError("negative dimension")
        extra = set(self.mats) - {a.name for a in q.arrows}
        if extra:
            raise InputError(f"matrices given for unknown arrows {sorted(extra)}")
        mats = {}
        for a in q.arrows:
            shape = (dims[a.source], dims[a.target])
            m = self.mats.get(a.name)
            if m is None:
                m = la.zeros(*shape)
            if tuple(m.shape) != shape:
                raise InputError(f"matrix of {a.name!r} has shape {m.shape}, expected {shape}")
            mats[a.name] = m.to_sparse()
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "mats", mats)
        bad = self.relation_residue()
        if bad:
            raise InputError(f"representation violates relation {bad[0]}")

    # -- structure
    @property
    def quiver(self):
        return self.presentation.quiver

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> dict:
        return dict(self.dims)

    def offsets(self) -> dict:
        off, n = {}, 0
        for v in self.quiver.vertices:
            off[v] = n
            n += self.dims[v]
        return off

    def _path_rows(self, path: Sequence[str]) -> dict:
        # product of sparse rows, stopping as soon as it vanishes
        rows = self.mats[path[0]].rep
        for a in path[1:]:
            b = self.mats[a].rep
            out = {}
            for i, row in rows.items():
                acc = {}
                for k, v in row.items():
                    for j, w in b.get(k, {}).items():
                        acc[j] = acc.get(j, 0) + v * w
                acc = {j: x for j, x in acc.items() if x}
                if acc:
                    out[i] = acc
            if not out:
                return {}
            rows = out
        return rows

    def path_matrix(self, path: Sequence[str]) -> DomainMatrix:
        q = self.quiver
        shape = (self.dims[q.source(path[0])], self.dims[q.target(path[-1])])
        return DomainMatrix({i: dict(r) for i, r in self._path_rows(path).items()}, shape, QQ)

    def relation_residue(self) -> list:
        """Relations whose evaluation is not the zero matrix."""
        bad = []
        p = self.presentation
        for r, (s, t) in zip(p.relations, p.endpoints):
            if not self.dims[s] or not self.dims[t]:
                continue
            acc: dict = {}
            for c, path in r.terms:
                c = la.q(c)
                for i, row in self._path_rows(path).items():
                    for j, x in row.items():
                        acc[(i, j)] = acc.get((i, j), 0) + c * x
            if any(acc.values()):
                bad.append(str(r))
        return bad

    def total_matrix(self, f: Mapping[str, DomainMatrix]) -> DomainMatrix:
        return la.block_diag([f[v] for v in self.quiver.vertices])

    def to_json(self) -> dict:
        return {"dims": dict(self.dims),
                "mats": {a: [[str(x) for x in row] for row in la.to_rows(m)]
                         for a, m in self.mats.items()}}


def _scale(m: DomainMatrix, c) -> DomainMatrix:
    c = la.q(c)
    return DomainMatrix({i: {j: v * c for j, v in row.items()}
                         for i, row in m.to_sparse().rep.items()}, m.shape, QQ)


def representation_from_json(p: Presentation, d: dict) -> Representation:
    try:
        dims = {str(v): int(n) for v, n in d["dims"].items()}
        mats = {}
        for a, rows in d.get("mats", {}).items():
            arrow = p.quiver.arrow(a)
            shape = (dims.get(arrow.source, 0), dims.get(arrow.target, 0))
            mats[a] = la.matrix({i: {j: la.q(x) for j, x in enumerate(r)}
                                 for i, r in enumerate(rows)}, shape)
    except (KeyError, TypeError, ValueError, AttributeError):
        raise InputError("malformed representation") from None
    return Representation(p, dims, mats)


@dataclass(frozen=True)
class ModuleElement:
    coords: Mapping[str, tuple]

    @classmethod
    def zero(cls, rep: Representation) -> "ModuleElement":
        return cls({v: (QQ(0),) * n for v, n in rep.dims.items()})

    @classmethod
    def unit(cls, rep: Representation, vertex: str, index: int) -> "ModuleElement":
        e = cls.zero(rep)
        c = dict(e.coords)
        vec = list(c[vertex])
        vec[index] = QQ(1)
        c[vertex] = tuple(vec)
        return cls(c)

    def check(self, rep: Representation) -> None:
        for v, n in rep.dims.items():
            if len(self.coords.get(v, ())) != n:
                raise InputError(f"point has wrong length at vertex {v!r}")

    @property
    def is_zero(self) -> bool:
        return not any(x for vec in self.coords.values() for x in vec)

    def to_json(self) -> dict:
        return {v: [str(x) for x in vec] for v, vec in self.coords.items()}


@dataclass(frozen=True, eq=False)
class PointedModule:
    """A representation with a tuple of distinguished elements.

    A single point models pointing by the algebra itself; several points
    model pointing by a direct sum of simples.
    """

    rep: Representation
    points: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        for p in self.points:
            p.check(self.rep)

    @property
    def point(self) -> ModuleElement:
        return self.points[0]

    @property
    def dim(self) -> int:
        return self.rep.dim

    def to_json(self) -> dict:
        return {"rep": self.rep.to_json(), "points": [p.to_json() for p in self.points]}


@dataclass(frozen=True, eq=False)
class HomMatrix:
    maps: Mapping[str, DomainMatrix]

    def apply(self, x: ModuleElement) -> ModuleElement:
        return ModuleElement({v: tuple(la.apply(m, x.coords[v])) for v, m in self.maps.items()})


def is_hom(f: HomMatrix, m: Representation, n: Representation) -> bool:
    for a in m.quiver.arrows:
        left = la.mul(f.maps[a.source], m.mats[a.name])
        right = la.mul(n.mats[a.name], f.maps[a.target])
        if not la.mat_equal(left, right):
            return False
    return True


# ---------------------------------------------------------------- strings

def string_module(s: Word, p: Presentation) -> PointedModule:
    """String module of ``s`` pointed at ``z_1``."""
    ok, idx = is_string(s, p)
    if not ok:
        raise InputError(f"{s} is not a string (violation at {idx})")
    return _walk_module(s, p, cyclic=False)


def _walk_module(s: Word, p: Presentation, cyclic: bool, scalar=1) -> PointedModule:
    q = p.quiver
    n = len(s) if cyclic else len(s) + 1
    walk = s.walk[:n]
    where = []
    count = {v: 0 for v in q.vertices}
    labels: dict = {v: [] for v in q.vertices}
    for j, v in enumerate(walk):
        where.append((v, count[v]))
        count[v] += 1
        labels[v].append(f"z{j + 1}")
    entries: dict = {a.name: {} for a in q.arrows}
    for j, x in enumerate(s.letters):
        k = (j + 1) % n if cyclic else j + 1
        c = la.q(scalar) if cyclic and j == len(s) - 1 else QQ(1)
        src, dst = (where[k], where[j]) if x.direct else (where[j], where[k])
        entries[x.arrow].setdefault(dst[1], {})[src[1]] = c
    mats = {a.name: la.matrix(entries[a.name], (count[a.source], count[a.target]))
            for a in q.arrows}
    rep = Representation(p, count, mats, {v: tuple(l) for v, l in labels.items()})
    return PointedModule(rep, (ModuleElement.unit(rep, walk[0], 0),))


def band_module(b: Word, p: Presentation, scalar=1) -> PointedModule:
    """Band module of multiplicity one; the last letter carries ``scalar``."""
    from .words import is_band

    if not is_band(b, p):
        raise InputError(f"{b} is not a band")
    if la.q(scalar) == 0:
        raise InputError("band parameter must be nonzero")
    return _walk_module(b, p, cyclic=True, scalar=scalar)


def element_at(m: PointedModule, index: int) -> ModuleElement:
    """Basis vector ``z_{index+1}`` of a string module."""
    labels = m.rep.labels
    for v, ls in labels.items():
        if f"z{index + 1}" in ls:
            return ModuleElement.unit(m.rep, v, ls.index(f"z{index + 1}"))
    raise InputError(f"no basis vector z{index + 1}")


def iso_string_modules(s1: Word, s2: Word) -> bool:
    return s1 == s2 or s1 == s2.inverse()


# ------------------------------------------------------------ hom solving

def _hom_system(m: Representation, n: Representation):
    q = m.quiver
    off, nv = {}, 0
    for v in q.vertices:
        off[v] = nv
        nv += n.dims[v] * m.dims[v]
    rows: dict = {}
    r = 0
    for a in q.arrows:
        s, t = a.source, a.target
        dms, dmt = m.dims[s], m.dims[t]
        eqs: dict = {}
        # f_s M(a) - N(a) f_t = 0, entry (i, j) with i < dim N_s, j < dim M_t
        for k, j, val in la.entries(m.mats[a.name]):
            for i in range(n.dims[s]):
                row = eqs.setdefault((i, j), {})
                var = off[s] + i * dms + k
                row[var] = row.get(var, 0) + val
        for i, k, val in la.entries(n.mats[a.name]):
            for j in range(dmt):
                row = eqs.setdefault((i, j), {})
                var = off[t] + k * dmt + j
                row[var] = row.get(var, 0) - val
        for key in sorted(eqs):
            row = {c: x for c, x in eqs[key].items() if x}
            if row:
                rows[r] = row
                r += 1
    return rows, r, off, nv


def _unpack(x: Sequence, m: Representation, n: Representation, off: dict) -> HomMatrix:
    maps = {}
    for v in m.quiver.vertices:
        dm, dn = m.dims[v], n.dims[v]
        maps[v] = la.matrix({i: {j: x[off[v] + i * dm + j] for j in range(dm)}
                             for i in range(dn)}, (dn, dm))
    return HomMatrix(maps)


def _same(m: Representation, n: Representation) -> None:
    if m.presentation != n.presentation:
        raise InputError("representations over different presentations")


def hom_space(m: Representation, n: Representation) -> list[HomMatrix]:
    _same(m, n)
    rows, _, off, nv = _hom_system(m, n)
    return [_unpack(x, m, n, off) for x in la.nullspace(rows, nv)]


def dim_hom(m: Representation, n: Representation) -> int:
    _same(m, n)
    rows, _, _, nv = _hom_system(m, n)
    return nv - la.rank(rows, nv)


def pointed_hom_exists(src: PointedModule, dst: PointedModule) -> HomMatrix | None:
    """A hom sending each point of ``src`` to the matching point of ``dst``."""
    m, n = src.rep, dst.rep
    _same(m, n)
    if len(src.points) != len(dst.points):
        raise InputError("pointed modules with different numbers of points")
    rows, r, off, nv = _hom_system(m, n)
    rhs = {}
    for x, y in zip(src.points, dst.points):
        for v in m.quiver.vertices:
            dm = m.dims[v]
            xv = x.coords[v]
            for i in range(n.dims[v]):
                row = {off[v] + i * dm + j: xv[j] for j in range(dm) if xv[j]}
                target = y.coords[v][i]
                if not row:
                    if target:
                        return None
                    continue
                rows[r] = row
                rhs[r] = target
                r += 1
    sol = la.solve(rows, rhs, nv)
    return None if sol is None else _unpack(sol, m, n, off)


# ------------------------------------------------------ sums and pushouts

def direct_sum(m: Representation, n: Representation) -> Representation:
    _same(m, n)
    dims = {v: m.dims[v] + n.dims[v] for v in m.quiver.vertices}
    mats = {a: la.block_diag([m.mats[a], n.mats[a]]) for a in m.mats}
    return Representation(m.presentation, dims, mats)


def _pair(x: ModuleElement, y: ModuleElement, sign=1) -> ModuleElement:
    return ModuleElement({v: tuple(x.coords[v]) + tuple(sign * c for c in y.coords[v])
                          for v in x.coords})


def pointed_direct_sum(a: PointedModule, b: PointedModule) -> PointedModule:
    if len(a.points) != len(b.points):
        raise InputError("pointed modules with different numbers of points")
    rep = direct_sum(a.rep, b.rep)
    return PointedModule(rep, tuple(_pair(x, y) for x, y in zip(a.points, b.points)))


def zero_pointed(p: Presentation, npoints: int = 1) -> PointedModule:
    rep = Representation(p, {}, {})
    return PointedModule(rep, (ModuleElement.zero(rep),) * npoints)


def generated_subrep(rep: Representation, gens: Sequence[ModuleElement]) -> dict:
    """Per-vertex subspaces of the smallest subrepresentation containing ``gens``."""
    q = rep.quiver
    spaces = {v: la.Subspace(rep.dims[v]) for v in q.vertices}
    queue = []
    for g in gens:
        for v in q.vertices:
            w = spaces[v].add(g.coords[v]) if rep.dims[v] else None
            if w is not None:
                queue.append((v, w))
    while queue:
        v, w = queue.pop()
        for a in q.arrows_to(v):
            t = q.source(a)
            if not rep.dims[t]:
                continue
            img = la.apply(rep.mats[a], w)
            nw = spaces[t].add(img)
            if nw is not None:
                queue.append((t, nw))
    return spaces


def quotient(rep: Representation, spaces: Mapping[str, la.Subspace]):
    """Quotient by a subrepresentation, using non-pivot coordinates as basis.

    Returns the quotient representation and the projection (a function on
    ModuleElements).
    """
    q = rep.quiver
    keep = {v: spaces[v].complement_indices() for v in q.vertices}

    def proj_vec(v, vec):
        red = spaces[v].reduce(vec)
        return [red[j] for j in keep[v]]

    mats = {}
    for a in q.arrows:
        s, t = a.target, a.source  # domain and codomain of the arrow's map
        cols = {}
        dense = la.to_rows(rep.mats[a.name]) if rep.dims[s] and rep.dims[t] else []
        for jj, j in enumerate(keep[s]):
            col = [dense[i][j] for i in range(rep.dims[t])] if dense else [QQ(0)] * rep.dims[t]
            for ii, x in enumerate(proj_vec(t, col)):
                if x:
                    cols.setdefault(ii, {})[jj] = x
        mats[a.name] = la.matrix(cols, (len(keep[t]), len(keep[s])))
    qrep = Representation(rep.presentation, {v: len(keep[v]) for v in q.vertices}, mats)

    def project(x: ModuleElement) -> ModuleElement:
        return ModuleElement({v: tuple(proj_vec(v, x.coords[v])) if rep.dims[v] else ()
                              for v in q.vertices})

    return qrep, project


def pointed_pushout_general(a: PointedModule, b: PointedModule) -> PointedModule:
    """Quotient of the direct sum by the subrepresentation generated by (m, -n)."""
    if len(a.points) != len(b.points):
        raise InputError("pointed modules with different numbers of points")
    rep = direct_sum(a.rep, b.rep)
    gens = [_pair(x, y, -1) for x, y in zip(a.points, b.points)]
    spaces = generated_subrep(rep, gens)
    qrep, project = quotient(rep, spaces)
    zero_b = ModuleElement.zero(b.rep)
    return PointedModule(qrep, tuple(project(_pair(x, zero_b)) for x in a.points))


def pointed_pushout_string(t: Word, s: Word, p: Presentation) -> PointedModule:
    """Pushout of string modules via the string ``t^-1 s`` pointed at ``z_{len t + 1}``."""
    if t.source != s.source:
        raise InputError("strings must start at the same vertex")
    w = t.inverse() + s
    ok, idx = is_string(w, p)
    if not ok:
        raise InputError(f"{w} is not a string (violation at {idx}); formula inapplicable")
    m = string_module(w, p)
    return PointedModule(m.rep, (element_at(m, len(t)),))


def pointed_isomorphic(a: PointedModule, b: PointedModule, local: bool = False,
                       seed: int = 0) -> bool | None:
    """Decide whether a point-preserving isomorphism exists.

    With ``local`` (the endomorphism ring of ``a`` is known to be local and
    the point is nonzero) homs in both directions already force an
    isomorphism, so the answer is exact. Otherwise a seeded random element
    of the affine space of pointed homs is tested for invertibility; None
    means that no invertible sample was found.
    """
    if a.rep.dim_vector() != b.rep.dim_vector():
        return False
    f = pointed_hom_exists(a, b)
    g = pointed_hom_exists(b, a)
    if f is None or g is None:
        return False
    if local and any(not x.is_zero for x in a.points):
        return True
    if _invertible(f, a.rep):
        return True
    basis = hom_space(a.rep, b.rep)
    rng = random.Random(seed)
    for _ in range(8):
        maps = {}
        for v in a.quiver.vertices:
            m = f.maps[v]
            for h in basis:
                c = rng.randint(-9, 9)
                m = m + _scale(h.maps[v], c) if c else m
            maps[v] = m
        cand = HomMatrix(maps)
        if pointed_maps_points(cand, a, b) and _invertible(cand, a.rep):
            return True
    return None


def pointed_maps_points(f: HomMatrix, a: PointedModule, b: PointedModule) -> bool:
    return all(f.apply(x).coords == {v: tuple(c) for v, c in y.coords.items()}
               for x, y in zip(a.points, b.points))


def _invertible(f: HomMatrix, rep: Representation) -> bool:
    for v in rep.quiver.vertices:
        d = rep.dims[v]
        if d and f.maps[v].to_dense().rank() != d:
            return False
    return True


# ------------------------------------------------ decomposition oracles

def _end_basis(m: Representation) -> list[DomainMatrix]:
    return [m.total_matrix(h.maps) for h in hom_space(m, m)]


@dataclass
class Verdict:
    verdict: str
    summands: tuple = ()
    detail: str = ""


def _radical_codim(basis: list[DomainMatrix]) -> int:
    """dim End - dim rad End, with rad = {x : tr(xy) = 0 for all y}."""
    k = len(basis)
    form = {}
    for i in range(k):
        for j in range(k):
            t = la.trace(la.mul(basis[i], basis[j]))
            if t:
                form.setdefault(i, {})[j] = t
    return la.rank(form, k)


def _restrict(rep: Representation, bases: Mapping[str, list]) -> Representation:
    """Subrepresentation spanned per vertex by the given vectors (assumed invariant)."""
    q = rep.quiver
    spaces = {v: la.Subspace(rep.dims[v], bases[v]) for v in q.vertices}
    mats = {}
    for a in q.arrows:
        s, t = a.target, a.source  # domain and codomain of the arrow's map
        cols = {}
        for jj, row in enumerate(spaces[s].rows):
            img = la.apply(rep.mats[a.name], row)
            for ii, x in enumerate(spaces[t].coordinates(img)):
                if x:
                    cols.setdefault(ii, {})[jj] = x
        mats[a.name] = la.matrix(cols, (spaces[t].dim, spaces[s].dim))
    return Representation(rep.presentation, {v: spaces[v].dim for v in q.vertices}, mats)


def _poly_at(coeffs: Sequence, x: DomainMatrix) -> DomainMatrix:
    n = x.shape[0]
    acc = la.zeros(n, n)
    for c in coeffs:
        acc = la.mul(acc, x) + _scale(la.eye(n), c)
    return acc


def _split(m: Representation, phi: DomainMatrix):
    t = symbols("t")
    cp = Poly([QQ.to_sympy(c) for c in phi.charpoly()], t, domain="QQ")
    _, factors = cp.factor_list()
    if len(factors) < 2:
        return None
    f1, e1 = factors[0]
    rest = Poly(1, t, domain="QQ")
    for f, e in factors[1:]:
        rest *= f ** e
    parts = []
    off = m.offsets()
    for poly in (f1 ** e1, rest):
        coeffs = [la.q(str(c)) for c in poly.all_coeffs()]
        k = _poly_at(coeffs, phi)
        rows = {i: dict(r) for i, r in k.to_sparse().rep.items()}
        ker = la.nullspace(rows, m.dim)
        bases = {v: [vec[off[v]:off[v] + m.dims[v]] for vec in ker] for v in m.quiver.vertices}
        parts.append(_restrict(m, bases))
    return tuple(parts)


def is_indecomposable_oracle(m: Representation, max_dim: int = 24, probes: int = 12,
                             seed: int = 0) -> Verdict:
    if m.dim == 0:
        return Verdict("decomposable", (), "zero module")
    if m.dim > max_dim:
        return Verdict("unknown", (), f"dimension {m.dim} above bound {max_dim}")
    basis = _end_basis(m)
    k = _radical_codim(basis)
    if k == 1:
        return Verdict("indecomposable", (), "End/rad End is one-dimensional")
    rng = random.Random(seed)
    cands = list(basis)
    for _ in range(probes):
        acc = la.zeros(m.dim, m.dim)
        for b in basis:
            acc = acc + _scale(b, rng.randint(-5, 5))
        cands.append(acc)
    for phi in cands:
        parts = _split(m, phi)
        if parts and all(x.dim for x in parts):
            return Verdict("decomposable", parts, "primary decomposition of an endomorphism")
    return Verdict("unknown", (), f"End/rad End has dimension {k}; no splitting found")


def decompose(m: Representation, max_dim: int = 24, seed: int = 0) -> list[tuple]:
    """Split recursively; returns (summand, verdict) pairs."""
    v = is_indecomposable_oracle(m, max_dim=max_dim, seed=seed)
    if v.verdict == "decomposable" and v.summands:
        out = []
        for s in v.summands:
            out += decompose(s, max_dim, seed)
        return out
    return [(m, v.verdict)]


def isomorphic(m: Representation, n: Representation, seed: int = 0) -> bool | None:
    """Isomorphism test; exact when End(m) is local, otherwise randomized."""
    _same(m, n)
    if m.dim_vector() != n.dim_vector():
        return False
    fs = hom_space(m, n)
    gs = hom_space(n, m)
    if not fs or not gs:
        return m.dim == 0
    ebasis = _end_basis(m)
    if _radical_codim(ebasis) == 1:
        # End(m) local: some g f outside the radical iff m is a summand of n
        for f in fs:
            for g in gs:
                gf = la.mul(m.total_matrix(g.maps), m.total_matrix(f.maps))
                if any(la.trace(la.mul(gf, y)) for y in ebasis):
                    return True
        return False
    rng = random.Random(seed)
    for _ in range(8):
        maps = {}
        for v in m.quiver.vertices:
            acc = la.zeros(n.dims[v], m.dims[v])
            for f in fs:
                acc = acc + _scale(f.maps[v], rng.randint(-9, 9))
            maps[v] = acc
        if _invertible(HomMatrix(maps), m):
            return True
    return None


def twist_rep(g, m: Representation, power: int = 1) -> Representation:
    """The representation ``M o g^-1``: vertex x carries ``M(g^-1 x)``."""
    h = g.power(-power)
    q = m.quiver
    dims = {v: m.dims[h.vertex(v)] for v in q.vertices}
    mats = {a.name: m.mats[h.arrow(a.name)] for a in q.arrows}
    return Representation(m.presentation, dims, mats)
