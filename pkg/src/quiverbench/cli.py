"""Command-line interface.

Every command prints a certificate: canonical JSON holding the command, its
parameters, a digest of the resolved input and the result. Certificates
carry no timestamps, so re-running the recorded arguments reproduces them
byte for byte (``quiverbench replay``).

Exit codes: 0 success or witness found, 1 honest negative at the given
depth, 2 invalid input.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import __version__, registry
from .errors import InputError
from .serialize import (digest, dumps, potential_from_json, presentation_to_json,
                        triple_to_json)

OK, NEGATIVE, INVALID = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _certificate(command: str, argv: list, params: dict, source: dict, result: dict,
                 verdict: str) -> dict:
    return {"tool": "quiverbench", "version": __version__, "command": command,
            "argv": list(argv), "parameters": params,
            "input": {"digest": digest(source)}, "result": result, "verdict": verdict}


def _input(ref: str) -> dict:
    """Resolved JSON of an input reference, used for digests."""
    if ref.startswith(("shadow:", "brauer:")):
        return presentation_to_json(registry.presentation(ref))
    return registry.load(ref)


# ------------------------------------------------------------ commands

def cmd_list(args) -> tuple:
    entries = {n: registry.raw(n).get("kind") for n in registry.names(args.kind)}
    return {"entries": entries}, "ok", OK, {}


def cmd_classify(args) -> tuple:
    from .quiver import classify

    p = registry.presentation(args.input)
    c = classify(p)
    return ({"classification": c.to_json(),
             "size": {"vertices": len(p.quiver.vertices), "arrows": len(p.quiver.arrows),
                      "relations": len(p.relations)}},
            "gentle" if c.gentle else "string" if c.string else
            "special_biserial" if c.special_biserial else "none", OK, {})


def cmd_bands(args) -> tuple:
    from .words import enumerate_bands

    bands = enumerate_bands(registry.presentation(args.input), args.max_len)
    res = {"bands": [str(b) for b in bands], "count": len(bands)}
    return res, "found" if bands else "none at depth", OK if bands else NEGATIVE, \
        {"max_len": args.max_len}


def cmd_witness(args) -> tuple:
    from .words import nondomestic_witness_search

    w = nondomestic_witness_search(registry.presentation(args.input), args.max_len)
    if w is None:
        return {"witness": None}, "none at depth", NEGATIVE, {"max_len": args.max_len}
    return {"witness": w.to_json()}, "witness", OK, {"max_len": args.max_len}


def _chain_arg(text: str | None) -> dict | None:
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 2 or any(set(x) - {"U", "V"} for x in parts):
        raise InputError(f"chain must be 'S,T' over the letters U and V, got {text!r}")
    return {"S": parts[0], "T": parts[1]}


def cmd_verify(args) -> tuple:
    from . import lattice as L

    inst = registry.instance(args.input)
    changes = {}
    if args.depth is not None:
        changes["depth"] = args.depth
    if args.chain1:
        changes["chain1"] = _chain_arg(args.chain1)
    if args.chain2:
        changes["chain2"] = _chain_arg(args.chain2)
    if args.action:
        ap, g = registry.action(args.action)
        if ap.quiver != inst.presentation.quiver:
            raise InputError("action belongs to another presentation")
        changes["action"] = g
    if args.depth is not None and args.depth < 0:
        raise InputError("depth must be non-negative")
    inst = dataclasses.replace(inst, **changes)
    c1, c2 = L.instance_chains(inst)
    reports = {"dense_chain_1": L.dense_chain_verify(c1),
               "dense_chain_2": L.dense_chain_verify(c2),
               "independent_pair": L.independent_pair_verify(c1, c2, seed=args.seed)}
    if inst.action is not None:
        reports["nonsymmetric"] = L.nonsymmetric_verify(c1, c2, inst.action)
    if args.wide_sample:
        reports["wide_sample"] = L.wide_sample_verify(c1, c2, sample=args.wide_sample,
                                                      seed=args.seed)
    if args.pushdown:
        if inst.action is None:
            raise InputError("--pushdown needs an action")
        reports["pushdown_pipeline"] = L.pushdown_pipeline_verify(c1, c2, inst.action,
                                                                  seed=args.seed)
    ok = all(r.ok for r in reports.values())
    res = {"reports": {k: r.to_json() for k, r in reports.items()},
           "summary": {k: r.ok for k, r in reports.items()}}
    params = {"depth": inst.depth, "seed": args.seed, "chain1": inst.chain1,
              "chain2": inst.chain2, "wide_sample": args.wide_sample,
              "pushdown": bool(args.pushdown),
              "action": inst.action.to_json() if inst.action else None}
    return res, "pass" if ok else "fail", OK if ok else NEGATIVE, params


def cmd_skew(args) -> tuple:
    from . import skew as S
    from .modules import string_module
    from .words import parse_word

    params = {"mode": "triple" if args.triple else "action", "emit": args.emit,
              "module": args.module}
    if args.triple:
        t = registry.triple(args.input)
        p, g = S.g_pair(t)
        target = S.sg_target(t)
    else:
        p, g = registry.action(args.input)
        ok, rep = S.validate_action(p, g)
        if not ok:
            return {"validation": rep}, "invalid action", NEGATIVE, params
        target = S.skew_target(p, g)
    if args.emit == "g":
        res = {"presentation": presentation_to_json(p), "action": g.to_json()}
        if not args.triple:
            res["triple"] = triple_to_json(S.triple_from_action(p, g)[0])
    elif args.emit == "sg":
        tp = target.presentation
        res = {"presentation": presentation_to_json(tp),
               "size": {"vertices": len(tp.quiver.vertices), "arrows": len(tp.quiver.arrows),
                        "relations": len(tp.relations)},
               "idempotents": {k: [v, s] for k, (v, s) in sorted(target.vertices.items())}}
    else:
        if not args.module:
            raise InputError("--emit pushdown needs --module WORD")
        m = string_module(parse_word(p.quiver, args.module), p)
        fm = S.pointed_pushdown(p, g, target, m)
        res = {"module": m.rep.to_json(), "pushdown": fm.to_json(),
               "dims": {"module": m.dim, "basic": fm.dim, "skew": target.skew_dim(fm.rep)},
               "stabilizer": S.stabilizer_of_module(parse_word(p.quiver, args.module), g)}
    return res, "ok", OK, params


def cmd_brauer(args) -> tuple:
    from .brauer import brauer_algebra, graph_to_json, shadow
    from .quiver import classify

    g = registry.graph(args.input)
    p = brauer_algebra(g)
    sh = shadow(p)
    res = {"graph": graph_to_json(g), "presentation": presentation_to_json(p),
           "classification": classify(p).to_json(), "shadow": presentation_to_json(sh),
           "shadow_classification": classify(sh).to_json()}
    return res, "ok", OK, {}


def cmd_jacobian(args) -> tuple:
    from .quiver import jacobian_presentation

    if args.quiver:
        q = registry.presentation(args.quiver).quiver
        w = potential_from_json(registry.load(args.input))
    else:
        q, w = registry.potential(args.input)
    p = jacobian_presentation(q, w)
    return {"presentation": presentation_to_json(p), "relations": [str(r) for r in p.relations]}, \
        "ok", OK, {"quiver": args.quiver}


def cmd_validate(args) -> tuple:
    from .skew import validate_action

    d = registry.load(args.input)
    kind = d.get("kind")
    loaders = {"presentation": registry.presentation, "triple": registry.triple,
               "graph": registry.graph, "potential": registry.potential,
               "instance": registry.instance}
    if kind == "action":
        p, g = registry.action(args.input)
        ok, rep = validate_action(p, g)
        return {"kind": kind, "report": rep}, "valid" if ok else "invalid", \
            OK if ok else NEGATIVE, {}
    if kind not in loaders:
        raise InputError(f"unknown kind {kind!r}")
    loaders[kind](args.input)
    return {"kind": kind}, "valid", OK, {}


def cmd_replay(args) -> tuple:
    path = Path(args.certificate)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    cert = registry.load(str(path))
    argv = cert.get("argv")
    if not isinstance(argv, list) or not argv or argv[0] == "replay":
        raise InputError("certificate has no replayable command")
    code, out = run(argv)
    same = out == text
    res = {"argv": argv, "identical": same, "exit_code": code}
    return res, "identical" if same else "differs", OK if same else NEGATIVE, {}


# --------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="quiverbench",
                 description="String, band and skew-gentle computations with certificates.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, input_help="registry name or JSON file"):
        p = sub.add_parser(name, help=help_, description=help_)
        if input_help:
            p.add_argument("input", help=input_help)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--out", help="also write the certificate to this file")
        p.set_defaults(func=func)
        return p

    p = add("list", cmd_list, "list registry entries", None)
    p.add_argument("--kind")
    add("classify", cmd_classify, "special biserial / string / gentle flags with witnesses")
    p = add("bands", cmd_bands, "enumerate bands up to a length")
    p.add_argument("--max-len", type=int, default=8)
    p = add("witness", cmd_witness, "search two commuting bands (non-domesticity witness)")
    p.add_argument("--max-len", type=int, default=8)
    p = add("verify", cmd_verify, "run the chain and pair verifiers on an instance")
    p.add_argument("--depth", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chain1", help="S,T over U and V")
    p.add_argument("--chain2", help="S,T over U^-1 and V^-1, written with U and V")
    p.add_argument("--action", help="group action overriding the instance's")
    p.add_argument("--wide-sample", type=int, default=0, metavar="N")
    p.add_argument("--pushdown", action="store_true")
    p = add("skew", cmd_skew, "skew-gentle constructions and the pushdown")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--triple", action="store_true", help="input is a skew-gentle triple")
    mode.add_argument("--action", action="store_true", help="input is a group action")
    p.add_argument("--emit", choices=("sg", "g", "pushdown"), default="sg")
    p.add_argument("--module", help="string (e.g. 'a1 b1^-1') to push down")
    add("brauer", cmd_brauer, "Brauer graph algebra, its classification and its shadow")
    p = add("jacobian", cmd_jacobian, "presentation from the cyclic derivatives of a potential")
    p.add_argument("--quiver", help="quiver for a bare potential file")
    add("validate", cmd_validate, "parse and check any registry object")
    p = sub.add_parser("replay", help="re-run a certificate and compare byte for byte")
    p.add_argument("certificate")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_replay)
    return ap


def _text(cert: dict) -> str:
    lines = [f"{cert['command']}: {cert['verdict']}"]
    res = cert["result"]
    if "summary" in res:
        lines += [f"  {k}: {'pass' if v else 'FAIL'}" for k, v in sorted(res["summary"].items())]
    if "classification" in res and isinstance(res["classification"], dict):
        c = res["classification"]
        lines.append("  " + ", ".join(f"{k}={c[k]}" for k in
                                      ("special_biserial", "string", "gentle", "admissible")))
    if res.get("witness"):
        lines.append(f"  U = {res['witness']['U_text']}")
        lines.append(f"  V = {res['witness']['V_text']}")
    if "entries" in res:
        lines += [f"  {n} ({k})" for n, k in res["entries"].items()]
    if "bands" in res:
        lines += [f"  {b}" for b in res["bands"]]
    if "relations" in res and isinstance(res["relations"], list):
        lines += [f"  {r}" for r in res["relations"]]
    if "size" in res:
        lines.append("  " + ", ".join(f"{k}={v}" for k, v in res["size"].items()))
    return "\n".join(lines) + "\n"


def run(argv: list) -> tuple[int, str]:
    """Execute a command and return ``(exit code, output text)``."""
    args = build_parser().parse_args(argv)
    source = {}
    if getattr(args, "input", None) is not None:
        source = _input(args.input)
    result, verdict, code, params = args.func(args)
    params = {k: v for k, v in params.items() if v is not None} | {"format": args.format}
    cert = _certificate(args.command, argv, params, source, result, verdict)
    text = dumps(cert) if args.format == "json" else _text(cert)
    if args.out:
        Path(args.out).write_text(dumps(cert), encoding="utf-8")
    return code, text


def main(argv: list | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        code, text = run(argv)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return INVALID
    sys.stdout.write(text)
    return code
