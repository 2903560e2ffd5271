"""Letters, words, strings and bands over a bound quiver.

A word is a walk: each letter is an arrow traversed forwards (direct) or
backwards (inverse). ``Word.walk`` lists the vertices visited, so a word of
length n has n + 1 walk vertices and the empty word still knows its vertex.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from itertools import product
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import InputError, UnsupportedError
from .quiver import Presentation, Quiver


class Letter(NamedTuple):
    arrow: str
    direct: bool = True

    def inverse(self) -> "Letter":
        return Letter(self.arrow, not self.direct)

    @property
    def key(self) -> tuple:
        return (self.arrow, 0 if self.direct else 1)

    def __str__(self) -> str:
        return self.arrow if self.direct else f"{self.arrow}^-1"


def letter_source(q: Quiver, x: Letter) -> str:
    a = q.arrow(x.arrow)
    return a.source if x.direct else a.target


def letter_target(q: Quiver, x: Letter) -> str:
    a = q.arrow(x.arrow)
    return a.target if x.direct else a.source


@dataclass(frozen=True)
class Word:
    letters: tuple
    walk: tuple

    def __post_init__(self):
        if len(self.walk) != len(self.letters) + 1:
            raise InputError("walk length must exceed letter count by one")

    @property
    def source(self) -> str:
        return self.walk[0]

    @property
    def target(self) -> str:
        return self.walk[-1]

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    @property
    def key(self) -> tuple:
        return tuple(x.key for x in self.letters)

    @property
    def is_cyclic(self) -> bool:
        return bool(self.letters) and self.source == self.target

    def inverse(self) -> "Word":
        return Word(tuple(x.inverse() for x in reversed(self.letters)), self.walk[::-1])

    def __add__(self, other: "Word") -> "Word":
        if self.target != other.source:
            raise InputError(f"cannot concatenate: {self.target!r} != {other.source!r}")
        return Word(self.letters + other.letters, self.walk + other.walk[1:])

    def __mul__(self, n: int) -> "Word":
        if n < 1 or (n > 1 and not self.is_cyclic):
            raise InputError("only cyclic words have powers")
        w = self
        for _ in range(n - 1):
            w = w + self
        return w

    def sub(self, i: int, j: int) -> "Word":
        """Subword of letters ``i..j-1``."""
        return Word(self.letters[i:j], self.walk[i:j + 1])

    def rotation(self, k: int) -> "Word":
        if not self.is_cyclic:
            raise InputError("rotation of a non-cyclic word")
        k %= len(self.letters)
        return Word(self.letters[k:] + self.letters[:k], self.walk[k:] + self.walk[1:k + 1])

    def starts_with(self, prefix: "Word") -> bool:
        return (self.source == prefix.source
                and self.letters[:len(prefix.letters)] == prefix.letters)

    def __str__(self) -> str:
        if not self.letters:
            return f"e_{self.source}"
        return " ".join(str(x) for x in self.letters)

    def to_json(self) -> list:
        return [{"arrow": x.arrow, "dir": "+" if x.direct else "-"} for x in self.letters]


def make_word(q: Quiver, letters: Iterable, vertex: str | None = None) -> Word:
    """Build a word, checking that consecutive letters compose."""
    letters = tuple(x if isinstance(x, Letter) else Letter(*x) for x in letters)
    if not letters:
        if vertex is None or vertex not in q.vertices:
            raise InputError("the empty word needs a vertex of the quiver")
        return Word((), (vertex,))
    walk = [letter_source(q, letters[0])]
    if vertex is not None and vertex != walk[0]:
        raise InputError(f"word does not start at {vertex!r}")
    for x in letters:
        if letter_source(q, x) != walk[-1]:
            raise InputError(f"letter {x} does not compose at vertex {walk[-1]!r}")
        walk.append(letter_target(q, x))
    return Word(letters, tuple(walk))


def parse_letters(text: str) -> tuple:
    out = []
    for tok in text.split():
        for suffix in ("^-1", "^-"):
            if tok.endswith(suffix):
                out.append(Letter(tok[: -len(suffix)], False))
                break
        else:
            out.append(Letter(tok, True))
    return tuple(out)


def parse_word(q: Quiver, text: str, vertex: str | None = None) -> Word:
    """Parse ``"a3 a1 a2^-1"``; an inverse letter carries the suffix ``^-1``."""
    return make_word(q, parse_letters(text), vertex)


def word_from_json(q: Quiver, data: list, vertex: str | None = None) -> Word:
    letters = []
    for d in data:
        if d.get("dir") not in ("+", "-"):
            raise InputError(f"bad letter direction in {d!r}")
        letters.append(Letter(str(d["arrow"]), d["dir"] == "+"))
    return make_word(q, letters, vertex)


def inverse(w: Word) -> Word:
    return w.inverse()


class StringAlgebra:
    """Relation lookup tables for a monomial presentation."""

    def __init__(self, p: Presentation):
        if not p.is_monomial:
            raise UnsupportedError("string combinatorics needs monomial relations")
        self.presentation = p
        self.quiver = p.quiver
        self.relations = frozenset(r.terms[0][1] for r in p.relations)
        self.lengths = sorted({len(r) for r in self.relations})
        q = self.quiver
        self.letters_at = {
            v: tuple([Letter(a, True) for a in q.arrows_from(v)]
                     + [Letter(a, False) for a in q.arrows_to(v)])
            for v in q.vertices
        }

    def _hits(self, letters: Sequence[Letter], end: int) -> int | None:
        """Start of a relation occurrence ending at position ``end`` (exclusive)."""
        for n in self.lengths:
            i = end - n
            if i < 0:
                break
            seg = letters[i:end]
            if all(x.direct for x in seg):
                if tuple(x.arrow for x in seg) in self.relations:
                    return i
            elif not any(x.direct for x in seg):
                if tuple(x.arrow for x in reversed(seg)) in self.relations:
                    return i
        return None

    def can_append(self, letters: Sequence[Letter], x: Letter) -> bool:
        if letters and letters[-1] == x.inverse():
            return False
        return self._hits(tuple(letters) + (x,), len(letters) + 1) is None

    def violation(self, w: Word) -> int | None:
        """1-based start of the first offending subword, or None for a string."""
        ls = w.letters
        for k in range(1, len(ls) + 1):
            if k >= 2 and ls[k - 1] == ls[k - 2].inverse():
                return k - 1
            i = self._hits(ls, k)
            if i is not None:
                return i + 1
        return None

    def extensions(self, w: Word) -> list[Letter]:
        return [x for x in self.letters_at[w.target] if self.can_append(w.letters, x)]

    def strings(self, max_len: int, start: Letter | None = None,
                include_empty: bool = False) -> Iterator[Word]:
        """All strings of length <= max_len, depth first in letter order."""
        q = self.quiver
        if include_empty and start is None:
            for v in q.vertices:
                yield Word((), (v,))
        if start is not None:
            roots = [start]
        else:
            roots = sorted((Letter(a.name, d) for a in q.arrows for d in (True, False)),
                           key=lambda x: x.key)
        stack = []
        for x in reversed(roots):
            w = make_word(q, [x])
            if self.violation(w) is None:
                stack.append(w)
        while stack:
            w = stack.pop()
            yield w
            if len(w) < max_len:
                nxt = sorted(self.extensions(w), key=lambda x: x.key, reverse=True)
                for x in nxt:
                    stack.append(Word(w.letters + (x,), w.walk + (letter_target(q, x),)))


def string_algebra(p: Presentation) -> StringAlgebra:
    # kept on the instance: hashing a presentation on every call is costly
    alg = p.__dict__.get("_string_algebra")
    if alg is None:
        alg = StringAlgebra(p)
        object.__setattr__(p, "_string_algebra", alg)
    return alg


def is_string(w: Word, p: Presentation) -> tuple[bool, int | None]:
    i = string_algebra(p).violation(w)
    return i is None, i


def is_primitive(w: Word) -> bool:
    n = len(w)
    return not any(n % d == 0 and w.letters == w.letters[:d] * (n // d) for d in range(1, n))


def is_band(w: Word, p: Presentation) -> bool:
    if not w.is_cyclic:
        return False
    if not any(x.direct for x in w) or all(x.direct for x in w):
        return False
    if not is_primitive(w):
        return False
    return is_string(w + w, p)[0]


def canonical_band(w: Word) -> Word:
    """Least rotation of ``w`` or of its inverse under the letter key order."""
    cands = [w.rotation(k) for k in range(len(w))]
    inv = w.inverse()
    cands += [inv.rotation(k) for k in range(len(inv))]
    return min(cands, key=lambda u: u.key)


def same_band(u: Word, v: Word) -> bool:
    return len(u) == len(v) and canonical_band(u) == canonical_band(v)


def enumerate_bands(p: Presentation, max_len: int) -> list[Word]:
    alg = string_algebra(p)
    found = {}
    for w in alg.strings(max_len):
        if len(w) >= 2 and w.is_cyclic and is_band(w, p):
            c = canonical_band(w)
            found.setdefault(c.key, c)
    return [found[k] for k in sorted(found, key=lambda k: (len(k), k))]


CONVENTIONS = ("quoted", "reversed")


def _check_in_s(w: Word, a: str) -> None:
    if not w.letters or w.letters[0] != Letter(a, True):
        raise InputError(f"word {w} does not start with the direct letter {a}")


def order_cmp(s: Word, t: Word) -> int:
    """-1 if s < t, 1 if t < s, 0 if equal or incomparable.

    The comparison looks at the first position after the longest common
    prefix: a word that continues with a direct letter, or stops where the
    other continues with an inverse letter, is the smaller one.
    """
    ls, lt = s.letters, t.letters
    k = 0
    while k < len(ls) and k < len(lt) and ls[k] == lt[k]:
        k += 1
    if k == len(ls) and k == len(lt):
        return 0
    if k == len(ls):
        return -1 if not lt[k].direct else 1
    if k == len(lt):
        return -1 if ls[k].direct else 1
    if ls[k].direct and not lt[k].direct:
        return -1
    if lt[k].direct and not ls[k].direct:
        return 1
    return 0


def order_lt(s: Word, t: Word, a: str, convention: str = "quoted") -> bool:
    """Strict order on S(a), the strings starting with the direct letter ``a``."""
    _check_in_s(s, a)
    _check_in_s(t, a)
    if convention not in CONVENTIONS:
        raise InputError(f"unknown order convention {convention!r}")
    c = order_cmp(s, t)
    return c == -1 if convention == "quoted" else c == 1


def sort_words(ws: Iterable[Word]) -> list[Word]:
    return sorted(ws, key=cmp_to_key(order_cmp))


def is_prolongation(v: Word, u: Word) -> bool:
    """True when ``v = u·Y`` for some (possibly empty) word Y."""
    return v.starts_with(u)


def q_generating_pair(u: Word, v: Word, p: Presentation,
                      strict: bool = False) -> tuple[bool, dict]:
    """Check the conditions for (u, v) to seed dense chains.

    With ``strict`` the pair must satisfy u < v; otherwise either orientation
    is accepted and recorded in the report.
    """
    rep: dict = {"U": str(u), "V": str(v)}
    rep["U_band"] = is_band(u, p)
    rep["V_band"] = is_band(v, p)
    rep["different"] = not same_band(u, v) if u.letters and v.letters else False
    fu, fv = (u.letters[:1], v.letters[:1])
    rep["same_first_direct"] = bool(fu) and fu == fv and fu[0].direct
    lu, lv = (u.letters[-1:], v.letters[-1:])
    rep["same_last_inverse"] = bool(lu) and lu == lv and not lu[0].direct
    c = order_cmp(u, v) if rep["same_first_direct"] else 0
    rep["orientation"] = {-1: "U<V", 1: "V<U", 0: "incomparable"}[c]
    rep["ordered"] = c == -1 if strict else c != 0
    rep["no_prolongation"] = not is_prolongation(u, v) and not is_prolongation(v, u)
    keys = ("U_band", "V_band", "different", "same_first_direct", "same_last_inverse",
            "ordered", "no_prolongation")
    ok = all(rep[k] for k in keys)
    rep["ok"] = ok
    return ok, rep


# ---------------------------------------------------------------- Σ(U, V)

def sigma_words(depth: int) -> list[str]:
    """All words over {U, V} of length <= depth, shortest first."""
    out = [""]
    for n in range(1, depth + 1):
        out += ["".join(t) for t in product("UV", repeat=n)]
    return out


def realize(symbols: str, u: Word, v: Word) -> Word:
    if u.source != v.source:
        raise InputError("bands must share their base vertex")
    w = Word((), (u.source,))
    for s in symbols:
        if s == "U":
            w = w + u
        elif s == "V":
            w = w + v
        else:
            raise InputError(f"bad Σ-symbol {s!r}")
    return w


@dataclass(frozen=True)
class ChainElement:
    x: str
    word: Word
    violation: int | None = None

    @property
    def valid(self) -> bool:
        return self.violation is None


def chain_word(s: str, x: str, t: str, u: Word, v: Word) -> Word:
    return realize(s + x + t + "U", u, v)


def chain_elements(s: str, t: str, u: Word, v: Word, depth: int,
                   p: Presentation) -> list[ChainElement]:
    """Realizations of S·X·T·U for X up to length ``depth``.

    Valid strings come first, sorted by the string order; invalid ones
    follow with the offending index.
    """
    good, bad = [], []
    for x in sigma_words(depth):
        w = chain_word(s, x, t, u, v)
        ok, idx = is_string(w, p)
        (good if ok else bad).append(ChainElement(x, w, idx))
    good.sort(key=cmp_to_key(lambda a, b: order_cmp(a.word, b.word)))
    return good + bad


def density_witness(lo: Word, hi: Word, s: str, t: str, u: Word, v: Word,
                    max_depth: int, p: Presentation) -> str | None:
    """A Σ-word X with lo < S·X·T·U < hi, searched up to ``max_depth``."""
    for x in sigma_words(max_depth):
        w = chain_word(s, x, t, u, v)
        if order_cmp(lo, w) == -1 and order_cmp(w, hi) == -1 and is_string(w, p)[0]:
            return x
    return None


# ------------------------------------------------------- witness search

@dataclass(frozen=True)
class Witness:
    alpha: str
    u: Word
    v: Word
    evidence: dict = field(compare=False, default_factory=dict)

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "U": self.u.to_json(), "V": self.v.to_json(),
                "U_text": str(self.u), "V_text": str(self.v), "evidence": self.evidence}


def _b_alpha(bands: list[Word]) -> dict:
    """Band rotations starting with a direct letter and ending with an inverse one."""
    out: dict = {}
    for b in bands:
        for w in {b.rotation(k) for k in range(len(b))} | {
                b.inverse().rotation(k) for k in range(len(b))}:
            if w.letters[0].direct and not w.letters[-1].direct:
                out.setdefault(w.letters[0].arrow, []).append(w)
    for a in out:
        out[a].sort(key=lambda w: (len(w), w.key))
    return out


def _has_inner_pattern(w: Word, alpha: str, beta: str) -> bool:
    pat = (Letter(alpha, True), Letter(beta, False))
    ls = w.letters
    if len(ls) == 2:
        return False
    return any(ls[i:i + 2] == pat for i in range(len(ls) - 1))


def nondomestic_witness_search(p: Presentation, max_len: int) -> Witness | None:
    """Find two commuting bands in B(alpha) sharing their last letter.

    Returns the first witness in the order (total length, alpha, U, V) or
    None. A None result only means nothing was found up to ``max_len``.
    """
    alg = string_algebra(p)
    bands = enumerate_bands(p, max_len)
    groups = _b_alpha(bands)
    best = None
    for alpha in sorted(groups):
        ws = groups[alpha]
        for u in ws:
            for v in ws:
                if u.letters[-1] != v.letters[-1] or same_band(u, v):
                    continue
                beta = u.letters[-1].arrow
                if _has_inner_pattern(u, alpha, beta) or _has_inner_pattern(v, alpha, beta):
                    continue
                if is_prolongation(u, v) or is_prolongation(v, u):
                    continue
                if alg.violation(u + v) is not None or alg.violation(v + u) is not None:
                    continue
                key = (len(u) + len(v), len(u), alpha, u.key, v.key)
                if best is None or key < best[0]:
                    best = (key, alpha, u, v)
    if best is None:
        return None
    _, alpha, u, v = best
    evidence = {"UV_string": True, "VU_string": True, "no_prolongation": True,
                "last_letter": str(u.letters[-1]), "max_len": max_len,
                "sigma_depth3_strings": all(is_string(realize(x, u, v), p)[0]
                                            for x in sigma_words(3) if x)}
    return Witness(alpha, u, v, evidence)


def twist_word(g, w: Word) -> Word:
    """Image of ``w`` under an action given by ``vertex_map``/``arrow_map``."""
    try:
        letters = tuple(Letter(g.arrow(x.arrow), x.direct) for x in w.letters)
        walk = tuple(g.vertex(v) for v in w.walk)
    except KeyError as e:
        raise InputError(f"action undefined on {e}") from None
    return Word(letters, walk)
