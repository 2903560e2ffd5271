"""Exact rational linear algebra on top of sympy's ``DomainMatrix`` over QQ.

Vectors are plain lists of QQ elements. Matrices are sparse ``DomainMatrix``
objects; ``entries`` iterates their nonzero entries.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Vector = list


_MPQ = type(QQ(1))


def q(x) -> "QQ":
    """Coerce an int, Fraction, str or QQ element into QQ."""
    if type(x) is _MPQ:
        return x
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x)
        return QQ(f.numerator, f.denominator)
    return QQ(x)


def to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def matrix(entries: dict, shape: tuple[int, int]) -> DomainMatrix:
    """Sparse matrix from ``{row: {col: value}}`` (zero values dropped)."""
    clean = {}
    for i, row in entries.items():
        r = {j: q(v) for j, v in row.items() if v}
        if r:
            clean[i] = r
    if not clean:
        return zeros(*shape)
    return DomainMatrix(clean, shape, QQ)


@lru_cache(maxsize=4096)
def zeros(rows: int, cols: int) -> DomainMatrix:
    # shared instances: matrices are never modified in place
    return DomainMatrix({}, (rows, cols), QQ)


def eye(n: int) -> DomainMatrix:
    return DomainMatrix({i: {i: QQ(1)} for i in range(n)}, (n, n), QQ)


def from_rows(rows: Sequence[Sequence], ncols: int | None = None) -> DomainMatrix:
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return matrix({i: {j: v for j, v in enumerate(r)} for i, r in enumerate(rows)},
                  (len(rows), ncols))


def to_rows(m: DomainMatrix) -> list[list]:
    r, c = m.shape
    out = [[QQ(0)] * c for _ in range(r)]
    for i, j, v in entries(m):
        out[i][j] = v
    return out


def entries(m: DomainMatrix) -> Iterator[tuple[int, int, object]]:
    rep = m.to_sparse().rep
    for i, row in rep.items():
        for j, v in row.items():
            if v:
                yield i, j, v


def is_zero(m: DomainMatrix) -> bool:
    return not any(True for _ in entries(m))


def mat_equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    return a.shape == b.shape and is_zero(a - b)


def mul(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} x {b.shape}")
    if 0 in a.shape or 0 in b.shape:
        return zeros(a.shape[0], b.shape[1])
    return (a * b).to_sparse()


def apply(m: DomainMatrix, v: Sequence) -> list:
    out = [QQ(0)] * m.shape[0]
    for i, j, x in entries(m):
        if v[j]:
            out[i] += x * v[j]
    return out


def block_diag(blocks: Sequence[DomainMatrix]) -> DomainMatrix:
    rows = cols = 0
    data: dict = {}
    for b in blocks:
        for i, j, v in entries(b):
            data.setdefault(rows + i, {})[cols + j] = v
        rows += b.shape[0]
        cols += b.shape[1]
    return DomainMatrix(data, (rows, cols), QQ)


def trace(m: DomainMatrix) -> object:
    rep = m.to_sparse().rep
    return sum((row.get(i, QQ(0)) for i, row in rep.items()), QQ(0))


def rref_rows(rows: dict, ncols: int) -> tuple[dict[int, dict], tuple[int, ...]]:
    """Row-reduce a sparse system given as ``{row: {col: value}}``.

    Returns the reduced rows keyed by row index and the pivot columns.
    """
    if not rows or ncols == 0:
        return {}, ()
    nrows = max(rows) + 1
    m = DomainMatrix({i: dict(r) for i, r in rows.items() if r}, (nrows, ncols), QQ)
    red, pivots = m.rref()
    return dict(red.to_sparse().rep), tuple(pivots)


def nullspace(rows: dict, ncols: int) -> list[list]:
    """Basis of ``{x : A x = 0}`` for a sparse ``A`` given row-wise."""
    red, pivots = rref_rows(rows, ncols)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    piv_rows = [(red[i], p) for i, p in enumerate(pivots)]
    for f in free:
        v = [QQ(0)] * ncols
        v[f] = QQ(1)
        for row, p in piv_rows:
            c = row.get(f)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def rank(rows: dict, ncols: int) -> int:
    return len(rref_rows(rows, ncols)[1])


def solve(rows: dict, rhs: dict, ncols: int) -> list | None:
    """One solution of ``A x = b`` (free variables zero), or None if inconsistent.

    ``rhs`` maps row index to value; missing rows have right-hand side 0.
    """
    aug = {i: dict(r) for i, r in rows.items()}
    for i, v in rhs.items():
        if v:
            aug.setdefault(i, {})[ncols] = q(v)
    if not aug:
        return [QQ(0)] * ncols
    red, pivots = rref_rows(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [QQ(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = red[i].get(ncols, QQ(0))
    return x


class Subspace:
    """Incrementally built subspace of QQ^n kept in reduced echelon form."""

    def __init__(self, n: int, vectors: Iterable[Sequence] = ()):
        self.n = n
        self.rows: list[list] = []
        self.pivots: list[int] = []
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence) -> list:
        w = [q(x) for x in v]
        for row, p in zip(self.rows, self.pivots):
            c = w[p]
            if c:
                for j in range(self.n):
                    if row[j]:
                        w[j] -= c * row[j]
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence) -> list | None:
        """Add ``v``; return its reduced (normalized) form if it enlarged the space."""
        w = self.reduce(v)
        p = next((j for j, x in enumerate(w) if x), None)
        if p is None:
            return None
        inv = 1 / w[p]
        w = [x * inv for x in w]
        for row in self.rows:
            c = row[p]
            if c:
                for j in range(self.n):
                    if w[j]:
                        row[j] -= c * w[j]
        self.rows.append(w)
        self.pivots.append(p)
        return w

    def complement_indices(self) -> list[int]:
        """Standard basis positions spanning a complement (non-pivot columns)."""
        piv = set(self.pivots)
        return [j for j in range(self.n) if j not in piv]

    def coordinates(self, v: Sequence) -> list:
        """Coordinates of ``v`` (assumed inside) with respect to ``rows``."""
        return [q(v[p]) for p in self.pivots]


def column_space(vectors: Sequence[Sequence], n: int) -> Subspace:
    return Subspace(n, vectors)
