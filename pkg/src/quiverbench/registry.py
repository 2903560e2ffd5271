"""Built-in example data shipped as JSON files.

Set ``QUIVERBENCH_REGISTRY`` to a directory to load entries from there
instead of the packaged files.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .errors import InputError
from .serialize import potential_from_json, presentation_from_json, triple_from_json

ENV = "QUIVERBENCH_REGISTRY"


def directory() -> Path:
    return Path(os.environ.get(ENV) or Path(__file__).with_name("registry"))


def names(kind: str | None = None) -> list[str]:
    out = []
    for f in sorted(directory().glob("*.json")):
        if kind is None or raw(f.stem).get("kind") == kind:
            out.append(f.stem)
    return out


def raw(name: str) -> dict:
    return _raw(str(directory()), name)


@lru_cache(maxsize=None)
def _raw(root: str, name: str) -> dict:
    path = Path(root) / f"{name}.json"
    if not path.is_file():
        raise InputError(f"no registry entry {name!r}")
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def load(ref) -> dict:
    """JSON object for ``ref``: an inline dict, a file path, or a registry name."""
    if isinstance(ref, dict):
        return ref
    if not isinstance(ref, str):
        raise InputError(f"cannot resolve reference {ref!r}")
    path = Path(ref)
    if path.suffix == ".json" or path.is_file():
        try:
            with open(path, encoding="utf-8") as fh:
                d = json.load(fh)
        except OSError as e:
            raise InputError(f"cannot read {ref}: {e.strerror}") from None
        except json.JSONDecodeError as e:
            raise InputError(f"{ref} is not valid JSON: {e.msg}") from None
        if not isinstance(d, dict):
            raise InputError(f"{ref} must hold a JSON object")
        return d
    return raw(ref)


def _kind(d: dict, kind: str, name) -> dict:
    if d.get("kind") != kind:
        label = name if isinstance(name, str) else "inline entry"
        raise InputError(f"{label!r} is a {d.get('kind')}, not a {kind}")
    return d


def presentation(ref):
    """Load a presentation; ``shadow:<graph>`` gives the string shadow of a Brauer graph
    and ``brauer:<graph>`` the Brauer graph algebra."""
    if isinstance(ref, str) and (ref.startswith("shadow:") or ref.startswith("brauer:")):
        from .brauer import brauer_algebra, shadow

        kind, g = ref.split(":", 1)
        alg = brauer_algebra(graph(g))
        return shadow(alg) if kind == "shadow" else alg
    d = load(ref)
    if d.get("kind") == "graph":
        from .brauer import brauer_algebra

        return brauer_algebra(graph(d))
    p = presentation_from_json(_kind(d, "presentation", ref))
    name = ref if isinstance(ref, str) else str(d.get("name", ""))
    return type(p)(p.quiver, p.relations, name)


def potential(ref):
    d = _kind(load(ref), "potential", ref)
    return presentation(d["quiver"]).quiver, potential_from_json(d)


def triple(ref):
    return triple_from_json(_kind(load(ref), "triple", ref))


def graph(ref):
    from .brauer import graph_from_json

    return graph_from_json(_kind(load(ref), "graph", ref))


def action(ref):
    from .skew import action_from_json

    d = _kind(load(ref), "action", ref)
    return presentation(d["presentation"]), action_from_json(d)


@dataclass(frozen=True)
class Instance:
    name: str
    presentation: object
    action: object
    u: object
    v: object
    chain1: dict
    chain2: dict
    depth: int


def instance(ref) -> Instance:
    from .words import parse_word

    d = _kind(load(ref), "instance", ref)
    try:
        p = presentation(d["presentation"])
        g = None
        if d.get("action"):
            ap, g = action(d["action"])
            if ap.quiver != p.quiver:
                raise InputError("instance action belongs to another presentation")
        return Instance(ref if isinstance(ref, str) else str(d.get("name", "")), p, g,
                        parse_word(p.quiver, d["U"]), parse_word(p.quiver, d["V"]),
                        {"S": str(d["chain1"]["S"]), "T": str(d["chain1"]["T"])},
                        {"S": str(d["chain2"]["S"]), "T": str(d["chain2"]["T"])},
                        int(d.get("depth", 3)))
    except (KeyError, TypeError, ValueError):
        raise InputError("instance needs presentation, U, V, chain1 and chain2") from None
