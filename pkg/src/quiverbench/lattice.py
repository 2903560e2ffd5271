"""Lattice of pointed modules and finite verifiers for chains and pairs.

``le(a, b)`` holds when a pointed hom ``b -> a`` exists; sup is the pointed
direct sum and inf the pointed pushout. All verifiers look at finite
fragments of infinite families and record depth and seed in their reports.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cmp_to_key

from .modules import (PointedModule, is_indecomposable_oracle, pointed_direct_sum,
                      pointed_hom_exists, pointed_pushout_general, pointed_pushout_string,
                      pointed_isomorphic, string_module)
from .quiver import Presentation
from .words import (Word, chain_elements, chain_word, density_witness, is_string, order_cmp,
                    q_generating_pair, sigma_words, twist_word)


def le(a: PointedModule, b: PointedModule) -> bool:
    return pointed_hom_exists(b, a) is not None


def equiv(a: PointedModule, b: PointedModule) -> bool:
    return le(a, b) and le(b, a)


def lt(a: PointedModule, b: PointedModule) -> bool:
    return le(a, b) and not le(b, a)


def sup_inf(a: PointedModule, b: PointedModule) -> tuple[PointedModule, PointedModule]:
    return pointed_direct_sum(a, b), pointed_pushout_general(a, b)


@dataclass(frozen=True)
class ChainSpec:
    """The family S·X·T·U over X in Σ(U, V) up to ``depth`` symbols."""

    presentation: Presentation
    u: Word
    v: Word
    s: str = ""
    t: str = ""
    depth: int = 3
    name: str = ""

    def elements(self) -> list[tuple[str, Word]]:
        """(X, word) pairs for the valid realizations, in increasing string order."""
        return [(e.x, e.word) for e in chain_elements(self.s, self.t, self.u, self.v,
                                                      self.depth, self.presentation)
                if e.valid]

    @classmethod
    def oriented(cls, presentation: Presentation, u: Word, v: Word, s: str = "", t: str = "",
                 depth: int = 3, name: str = "") -> "ChainSpec":
        """Chain whose terminal band is the smaller of the two.

        When ``v < u`` the bands trade places and the symbols of ``s`` and ``t``
        are swapped with them, so S and T denote the same strings.
        """
        if order_cmp(u, v) == 1:
            swap = str.maketrans("UV", "VU")
            return cls(presentation, v, u, s.translate(swap), t.translate(swap), depth, name)
        return cls(presentation, u, v, s, t, depth, name)

    def to_json(self) -> dict:
        return {"U": self.u.to_json(), "V": self.v.to_json(), "U_text": str(self.u),
                "V_text": str(self.v), "S": self.s, "T": self.t, "depth": self.depth}


def inverse_chain(c: ChainSpec, s: str, t: str, name: str = "") -> ChainSpec:
    """Chain over the inverse bands, oriented so the terminal band is smaller."""
    return ChainSpec.oriented(c.presentation, c.u.inverse(), c.v.inverse(), s, t, c.depth, name)


@dataclass
class Check:
    id: str
    verdict: bool
    inputs: dict = field(default_factory=dict)
    witness: object = None

    def to_json(self) -> dict:
        return {"id": self.id, "verdict": self.verdict, "inputs": self.inputs,
                "witness": self.witness}


@dataclass
class PairReport:
    kind: str
    depth: int
    seed: int | None = None
    checks: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def add(self, id: str, verdict: bool, inputs: dict | None = None, witness=None) -> bool:
        self.checks.append(Check(id, bool(verdict), inputs or {}, witness))
        return bool(verdict)

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(c.verdict for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.verdict]

    def to_json(self) -> dict:
        return {"kind": self.kind, "ok": self.ok, "depth": self.depth, "seed": self.seed,
                "notes": self.notes, "checks": [c.to_json() for c in self.checks]}


def _iso_key(w: Word) -> tuple:
    return min((w.walk, w.key), (w.inverse().walk, w.inverse().key))


def dense_chain_verify(c: ChainSpec, oracle_max_dim: int = 24,
                       density_slack: int = 2) -> PairReport:
    """Check the dense-chain conditions on the depth-bounded fragment.

    In the string order, homs run from the larger element to the smaller
    one, so the chain is indexed by the string order and checked through
    ``le``.
    """
    p = c.presentation
    rep = PairReport("dense_chain", c.depth, notes={"chain": c.to_json()})
    ok, qrep = q_generating_pair(c.u, c.v, p, strict=True)
    if not rep.add("precondition.q_generating", ok, witness=qrep):
        return rep
    elems = []
    for x in sigma_words(c.depth):
        w = chain_word(c.s, x, c.t, c.u, c.v)
        good, idx = is_string(w, p)
        rep.add(f"string[{x}]", good, {"X": x, "word": str(w)},
                None if good else {"violation_index": idx})
        if good:
            elems.append((x, w))
    elems.sort(key=cmp_to_key(lambda a, b: order_cmp(a[1], b[1])))
    rep.notes["order"] = [x for x, _ in elems]
    rep.add("count", len(elems) == 2 ** (c.depth + 1) - 1, {"elements": len(elems)})

    mods = {x: string_module(w, p) for x, w in elems}
    rep.add("point_nonzero", all(not m.point.is_zero for m in mods.values()),
            {"elements": len(mods)})

    checked = []
    for x, w in elems:
        m = mods[x]
        if m.dim <= oracle_max_dim:
            v = is_indecomposable_oracle(m.rep, max_dim=oracle_max_dim).verdict
            checked.append(x)
            if v != "indecomposable":
                rep.add(f"indecomposable[{x}]", False, {"dim": m.dim}, v)
    rep.add("indecomposable", True, {"basis": "string modules are indecomposable",
                                     "oracle_checked": checked})

    total = all(order_cmp(a[1], b[1]) == -1 for i, a in enumerate(elems)
                for b in elems[i + 1:])
    rep.add("order_total", total, {"elements": len(elems)})

    for i, (xi, wi) in enumerate(elems):
        for xj, wj in elems[i + 1:]:
            f = pointed_hom_exists(mods[xj], mods[xi])
            rep.add(f"hom[{xj}->{xi}]", f is not None, {"from": xj, "to": xi})

    keys = {}
    clash = None
    for x, w in elems:
        k = _iso_key(w)
        if k in keys:
            clash = [keys[k], x]
            break
        keys[k] = x
    rep.add("pairwise_non_iso", clash is None, {"criterion": "word equality up to inversion"},
            clash)

    for (xa, wa), (xb, wb) in zip(elems, elems[1:]):
        x3 = density_witness(wa, wb, c.s, c.t, c.u, c.v, c.depth + density_slack, p)
        rep.add(f"density[{xa}|{xb}]", x3 is not None, {"lower": xa, "upper": xb},
                x3)
    return rep


def _pushout_word(sq: Word, tt: Word) -> Word:
    return tt.inverse() + sq


def _pointed_key(w: Word, k: int) -> tuple:
    """Pointed string ``(M(w), z_{k+1})`` up to the inversion ``w -> w^-1``."""
    n = len(w)
    wi = w.inverse()
    return min((w.walk, w.key, k), (wi.walk, wi.key, n - k))


def _pointed_clash(words: dict, e1: list, e2: list):
    """First pair of pushouts sharing one index and equal as pointed strings."""
    tl = {y: len(tt) for y, tt in e2}
    for axis in (0, 1):
        groups: dict = {}
        for (x, y), w in words.items():
            fixed = (x, y)[axis]
            k = _pointed_key(w, tl[y])
            other = groups.setdefault((fixed, k), (x, y))
            if other != (x, y):
                return [list(other), [x, y]]
    return None


def _starts_direct(w: Word) -> bool:
    return not w.letters or w.letters[0].direct


def independent_pair_verify(c1: ChainSpec, c2: ChainSpec, oracle_samples: int = 2,
                            seed: int = 0) -> PairReport:
    """Check the independence conditions via pushout strings T^-1 S."""
    p = c1.presentation
    rep = PairReport("independent_pair", c1.depth, seed,
                     notes={"chain1": c1.to_json(), "chain2": c2.to_json()})
    ok1, r1 = q_generating_pair(c1.u, c1.v, p)
    ok2, r2 = q_generating_pair(c2.u, c2.v, p)
    rep.add("precondition.q_generating", ok1 and ok2, witness={"chain1": r1, "chain2": r2})
    e1, e2 = c1.elements(), c2.elements()
    compat = (bool(e1) and bool(e2) and e1[0][1].source == e2[0][1].source
              and all(_starts_direct(w) for _, w in e1 + e2)
              and e1[0][1].letters[:1] != e2[0][1].letters[:1])
    if not rep.add("precondition.compatible", compat,
                   witness={"first_letters": sorted({str(w.letters[0]) for _, w in e1 + e2
                                                     if w.letters})}):
        return rep
    words = {}
    bad = []
    for x, sq in e1:
        for y, tt in e2:
            w = _pushout_word(sq, tt)
            good, idx = is_string(w, p)
            if not good:
                bad.append({"X": x, "Y": y, "violation_index": idx})
            words[(x, y)] = w
    rep.add("pushout_strings", not bad, {"pairs": len(words)}, bad[:5] or None)
    rep.add("local_endomorphisms", not bad,
            {"basis": "pushouts are string modules, hence have local endomorphism rings"})
    clash = _pointed_clash(words, e1, e2)
    rep.add("pushouts_pointed_non_iso", clash is None,
            {"pairs": len(words), "criterion": "pointed string up to inversion, one index varying"},
            clash)
    rng = random.Random(seed)
    small = sorted(words, key=lambda k: (len(words[k]), k))[:max(oracle_samples * 4, 1)]
    for x, y in sorted(rng.sample(small, min(oracle_samples, len(small)))):
        sq = dict(e1)[x]
        tt = dict(e2)[y]
        gen = pointed_pushout_general(string_module(sq, p), string_module(tt, p))
        st = pointed_pushout_string(tt, sq, p)
        rep.add(f"pushout_oracle[{x},{y}]", pointed_isomorphic(gen, st, local=True) is True,
                {"X": x, "Y": y, "dim": st.dim})
    return rep


def nonsymmetric_verify(c1: ChainSpec, c2: ChainSpec, g) -> PairReport:
    """Twist conditions: no chain element or pushout is isomorphic to a twisted one."""
    from .skew import validate_action

    p = c1.presentation
    rep = PairReport("nonsymmetric", c1.depth, notes={"chain1": c1.to_json(),
                                                      "chain2": c2.to_json()})
    ok, vrep = validate_action(p, g)
    rep.add("precondition.action", ok and g.order == 2,
            witness={"violations": vrep["violations"]})
    if not ok:
        return rep
    for name, c in (("U", c1.u), ("V", c1.v)):
        tw = twist_word(g, c)
        rep.add(f"discrimination[{name}]", tw.letters[0] != c.letters[0],
                {"band": str(c), "twisted": str(tw)},
                {"first_letter": str(c.letters[0]), "twisted_first_letter": str(tw.letters[0])})
    for cid, c in (("1", c1), ("2", c2)):
        ws = [w for _, w in c.elements()]
        keys = {_iso_key(w) for w in ws}
        hit = [str(w) for w in ws if _iso_key(twist_word(g, w)) in keys]
        rep.add(f"chain{cid}_twist_non_iso", not hit, {"elements": len(ws)}, hit[:3] or None)
    e1, e2 = c1.elements(), c2.elements()
    pw = [_pushout_word(sq, tt) for _, sq in e1 for _, tt in e2]
    keys = {_iso_key(w) for w in pw}
    hit = [str(w) for w in pw if _iso_key(twist_word(g, w)) in keys]
    rep.add("pushout_twist_non_iso", not hit, {"pairs": len(pw)}, hit[:3] or None)
    return rep


def wide_sample_verify(c1: ChainSpec, c2: ChainSpec, sample: int = 5,
                       seed: int = 0) -> PairReport:
    """Exhibit wideness witnesses for sampled comparable pairs.

    Pairs are p = a_i * b_j and q = a_k + b_l with chain elements a, b and
    at least one chain element strictly between i and k and between j and l.
    Candidates M, N are the chain elements in between.
    """
    p = c1.presentation
    rep = PairReport("wide_sample", c1.depth, seed,
                     notes={"domain": "inf of chain elements below sup of chain elements"})
    e1 = [w for _, w in c1.elements()]
    e2 = [w for _, w in c2.elements()]
    if len(e1) < 3 or len(e2) < 3:
        rep.add("vacuous", True, {"fragment_sizes": [len(e1), len(e2)]})
        return rep
    m1 = [string_module(w, p) for w in e1]
    m2 = [string_module(w, p) for w in e2]
    rng = random.Random(seed)
    done = 0
    tried = set()
    while done < sample and len(tried) < 200:
        i, k = sorted(rng.sample(range(len(e1)), 2))
        j, l = sorted(rng.sample(range(len(e2)), 2))
        if k - i < 2 or l - j < 2 or (i, k, j, l) in tried:
            tried.add((i, k, j, l))
            continue
        tried.add((i, k, j, l))
        lo = pointed_pushout_string(e2[j], e1[i], p)
        hi = pointed_direct_sum(m1[k], m2[l])
        found = None
        if lt(lo, hi):
            for m in range(i + 1, k):
                for n in range(j + 1, l):
                    M, N = m1[m], m2[n]
                    if le(M, N) or le(N, M):
                        continue
                    if not (lt(lo, M) and lt(lo, N) and lt(M, hi) and lt(N, hi)):
                        continue
                    inf = pointed_pushout_string(e2[n], e1[m], p)
                    sup = pointed_direct_sum(M, N)
                    if lt(lo, inf) and lt(inf, sup) and lt(sup, hi):
                        found = {"M": str(e1[m]), "N": str(e2[n])}
                        break
                if found:
                    break
        rep.add(f"wide[{i},{k};{j},{l}]", found is not None,
                {"p": f"a{i}*b{j}", "q": f"a{k}+b{l}"},
                found if found else "not witnessed at depth")
        done += 1
    if done < sample:
        rep.add("sample_size", False, {"requested": sample, "drawn": done})
    return rep


def instance_chains(inst) -> tuple[ChainSpec, ChainSpec]:
    """The two chains of a registry instance; the second uses the inverse bands."""
    p = inst.presentation
    c1 = ChainSpec.oriented(p, inst.u, inst.v, inst.chain1["S"], inst.chain1["T"],
                            inst.depth, "chain1")
    c2 = ChainSpec.oriented(p, inst.u.inverse(), inst.v.inverse(), inst.chain2["S"],
                            inst.chain2["T"], inst.depth, "chain2")
    return c1, c2


def pushdown_pipeline_verify(c1: ChainSpec, c2: ChainSpec, g, sample: int = 4,
                             seed: int = 0, oracle_max_dim: int = 64) -> PairReport:
    """Push sampled chain elements and pushouts down to the skew algebra.

    Checks that pointed homs between consecutive elements survive, that no
    reverse hom appears (so images stay pairwise non-isomorphic), and that
    small pushed-down pushouts are indecomposable.
    """
    from .skew import pointed_pushdown, skew_target

    p = c1.presentation
    rep = PairReport("pushdown_pipeline", c1.depth, seed)
    target = skew_target(p, g)
    rep.notes["target"] = {"vertices": len(target.presentation.quiver.vertices),
                           "arrows": len(target.presentation.quiver.arrows),
                           "relations": len(target.presentation.relations)}

    def down(w: Word) -> PointedModule:
        return pointed_pushdown(p, g, target, string_module(w, p))

    rng = random.Random(seed)
    for cid, c in (("1", c1), ("2", c2)):
        el = c.elements()
        starts = sorted(rng.sample(range(len(el) - 1), min(sample, len(el) - 1)))
        for i in starts:
            (xa, wa), (xb, wb) = el[i], el[i + 1]
            a, b = down(wa), down(wb)
            fwd, back = le(a, b), le(b, a)
            rep.add(f"chain{cid}[{xa}<{xb}]", fwd and not back,
                    {"lower": xa, "upper": xb, "dims": [a.dim, b.dim]},
                    {"hom_upper_to_lower": fwd, "hom_lower_to_upper": back})
    e1, e2 = c1.elements(), c2.elements()
    pairs = sorted(((x, y) for x, _ in e1 for y, _ in e2),
                   key=lambda k: (len(dict(e1)[k[0]]) + len(dict(e2)[k[1]]), k))
    for x, y in pairs[:sample]:
        st = pointed_pushout_string(dict(e2)[y], dict(e1)[x], p)
        fm = pointed_pushdown(p, g, target, st)
        if fm.dim > oracle_max_dim:
            continue
        v = is_indecomposable_oracle(fm.rep, max_dim=oracle_max_dim, seed=seed).verdict
        rep.add(f"pushout_indecomposable[{x},{y}]", v == "indecomposable",
                {"X": x, "Y": y, "dim": fm.dim}, v)
    return rep
