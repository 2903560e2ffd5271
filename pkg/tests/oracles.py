"""Independent brute-force oracles used to derive frozen test values.

None of these share code paths with the library's solvers: they use
sympy's dense ``Matrix`` and plain enumeration.
"""
from __future__ import annotations

from sympy import Matrix, Rational, zeros

from quiverbench.linalg import to_rows


def order_lt_literal(s, t) -> bool:
    """The three defining conditions, checked by trying every split."""
    S, T = s.letters, t.letters
    # condition 1: S phi^-1 U = T
    if len(T) > len(S) and T[:len(S)] == S and not T[len(S)].direct:
        return True
    # condition 2: S = T psi V
    if len(S) > len(T) and S[:len(T)] == T and S[len(T)].direct:
        return True
    # condition 3: S = S' psi W, T = S' phi^-1 X
    for k in range(min(len(S), len(T))):
        if S[:k] == T[:k] and S[k].direct and not T[k].direct:
            return True
    return False


def dense(m):
    return Matrix([[Rational(int(x.numerator), int(x.denominator)) for x in row]
                   for row in to_rows(m)]) if m.shape[0] and m.shape[1] else zeros(*m.shape)


def hom_dim_dense(m, n) -> int:
    """dim Hom(M, N) from the intertwining equations as one dense system."""
    q = m.quiver
    var = {}
    for v in q.vertices:
        for i in range(n.dims[v]):
            for j in range(m.dims[v]):
                var[(v, i, j)] = len(var)
    rows = []
    for a in q.arrows:
        s, t = a.source, a.target
        A, B = dense(m.mats[a.name]), dense(n.mats[a.name])
        # f_s M(a) = N(a) f_t, entries (i, j) with i < dim N_s, j < dim M_t
        for i in range(n.dims[s]):
            for j in range(m.dims[t]):
                row = [0] * len(var)
                for k in range(m.dims[s]):
                    if A[k, j]:
                        row[var[(s, i, k)]] += A[k, j]
                for k in range(n.dims[t]):
                    if B[i, k]:
                        row[var[(t, k, j)]] -= B[i, k]
                rows.append(row)
    if not var:
        return 0
    if not rows:
        return len(var)
    return len(var) - Matrix(rows).rank()


def walk_counts(w) -> dict:
    out = {}
    for v in w.walk:
        out[v] = out.get(v, 0) + 1
    return out


def derivative_count(potential) -> int:
    """Sum of term lengths: every arrow position in every cycle is one term."""
    return sum(len(p) for _, p in potential.terms)


def sg_arrow_count(t) -> int:
    size = {v: 2 if v in t.special else 1 for v in t.quiver.vertices}
    return sum(size[a.source] * size[a.target] for a in t.quiver.arrows)


def closed_walk_bands(p, max_len, is_string, canonical):
    """Band classes by depth-first search over reduced closed walks."""
    from quiverbench.words import Letter, Word

    q = p.quiver
    out_letters = {v: [] for v in q.vertices}
    for a in q.arrows:
        out_letters[a.source].append((Letter(a.name, True), a.target))
        out_letters[a.target].append((Letter(a.name, False), a.source))
    found = set()

    def visit(seq, walk):
        n = len(seq)
        if n and walk[-1] == walk[0] and seq[-1] != seq[0].inverse():
            mixed = {x.direct for x in seq} == {True, False}
            primitive = not any(n % d == 0 and seq == seq[:d] * (n // d) for d in range(1, n))
            if mixed and primitive:
                w = Word(tuple(seq), tuple(walk))
                if is_string(w + w, p)[0]:
                    found.add(str(canonical(w)))
        if n == max_len:
            return
        for x, nxt in out_letters[walk[-1]]:
            if not seq or x != seq[-1].inverse():
                visit(seq + [x], walk + [nxt])

    for v in q.vertices:
        visit([], [v])
    return found
