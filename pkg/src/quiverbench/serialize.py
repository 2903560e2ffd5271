"""JSON encoding and decoding for the library's value types."""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .errors import InputError
from .quiver import Arrow, Potential, Presentation, Quiver, Relation, SkewGentleTriple


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(obj) -> str:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(text.encode()).hexdigest()


def _need(d: dict, key: str):
    if not isinstance(d, dict) or key not in d:
        raise InputError(f"missing field {key!r}")
    return d[key]


def quiver_to_json(q: Quiver) -> dict:
    return {"vertices": list(q.vertices),
            "arrows": [{"name": a.name, "source": a.source, "target": a.target}
                       for a in q.arrows]}


def quiver_from_json(d: dict) -> Quiver:
    try:
        arrows = [Arrow(str(a["name"]), str(a["source"]), str(a["target"]))
                  for a in _need(d, "arrows")]
    except (KeyError, TypeError):
        raise InputError("arrows need name, source and target") from None
    return Quiver(tuple(str(v) for v in _need(d, "vertices")), tuple(arrows))


def terms_to_json(terms) -> list:
    return [{"coef": str(c), "path": list(p)} for c, p in terms]


def terms_from_json(data) -> list:
    out = []
    for t in data:
        try:
            out.append((Fraction(str(t["coef"])), tuple(str(a) for a in t["path"])))
        except (KeyError, TypeError, ValueError, ZeroDivisionError):
            raise InputError(f"bad term {t!r}") from None
    return out


def relation_to_json(r: Relation) -> list:
    return terms_to_json(r.terms)


def relation_from_json(data) -> Relation:
    if isinstance(data, dict):
        return Relation(terms_from_json(_need(data, "terms")), str(data.get("label", "")))
    return Relation(terms_from_json(data))


def presentation_to_json(p: Presentation) -> dict:
    d = {"kind": "presentation", **quiver_to_json(p.quiver)}
    d["relations"] = [relation_to_json(r) for r in p.relations]
    return d


def presentation_from_json(d: dict) -> Presentation:
    q = quiver_from_json(d)
    rels = tuple(relation_from_json(r) for r in d.get("relations", []))
    return Presentation(q, rels, str(d.get("name", "")))


def potential_to_json(w: Potential) -> dict:
    return {"kind": "potential", "terms": terms_to_json(w.terms)}


def potential_from_json(d) -> Potential:
    if isinstance(d, dict):
        d = _need(d, "terms")
    return Potential(terms_from_json(d))


def triple_to_json(t: SkewGentleTriple) -> dict:
    d = {"kind": "triple", **quiver_to_json(t.quiver)}
    d["special"] = sorted(t.special)
    d["relations"] = [relation_to_json(r) for r in t.relations]
    return d


def triple_from_json(d: dict) -> SkewGentleTriple:
    q = quiver_from_json(d)
    rels = tuple(relation_from_json(r) for r in d.get("relations", []))
    return SkewGentleTriple(q, frozenset(str(v) for v in d.get("special", [])), rels)
