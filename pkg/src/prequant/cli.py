"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 domain error,
3 internal consistency failure (including a failed axiom suite).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, TextIO

from . import alcove, catalog
from .algebra import default_degree_cap
from .errors import DomainError, PrequantError, UsageError
from .hopf import verify_axioms


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--ascii", action="store_true", default=argparse.SUPPRESS,
                        help="write tensors as 'a (x) b'")

    p = _Parser(prog="prequant", parents=[common],
                description="Level obstructions for pre-quantization of moduli of flat bundles.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("l0", parents=[common], help="l0 of one group")
    s.add_argument("spec")

    s = sub.add_parser("table", parents=[common], help="l0 for every catalog group up to a size")
    s.add_argument("--max-n", type=_int, required=True)

    s = sub.add_parser("phi-star", parents=[common], help="commutator pullback of the z3 lift")
    s.add_argument("spec")
    s.add_argument("--prime", type=_int, required=True)

    s = sub.add_parser("verify-hopf", parents=[common], help="run the Hopf axiom suite")
    s.add_argument("spec")
    s.add_argument("--prime", type=_int, required=True)
    s.add_argument("--max-degree", type=_int, default=None)

    s = sub.add_parser("check-level", parents=[common], help="is a level pre-quantizable")
    s.add_argument("spec")
    s.add_argument("--level", type=_int, required=True)
    s.add_argument("--genus", type=_int, required=True)

    s = sub.add_parser("marked-points", parents=[common],
                       help="PU(n) with marked conjugacy classes")
    s.add_argument("--n", type=_int, required=True)
    s.add_argument("--level", type=_int, required=True)
    s.add_argument("--classes", required=True, help="file with one class per line")

    s = sub.add_parser("alcove", parents=[common], help="alcove data for SU(n)")
    s.add_argument("--n", type=_int, required=True)
    s.add_argument("--reduce", default=None, help='point to reduce, e.g. "1 0 -1"')
    return p


# ---------------------------------------------------------------------------
# reports

def _l0_doc(res: catalog.L0Result) -> dict:
    return {
        "group": str(res.group),
        "l0": res.value,
        "breakdown": [{"prime": b.prime, "order": b.order, "provenance": b.provenance}
                      for b in res.breakdown],
        "citations": res.citations,
    }


def _short(prov: str) -> str:
    return "pinned" if prov.startswith("pinned(") else prov


def _l0_text(res: catalog.L0Result, header: bool = False) -> List[str]:
    parts = ", ".join(f"p={b.prime}: {b.order} ({_short(b.provenance)})" for b in res.breakdown)
    lines = [f"{res.group}: l0 = {res.value}  [{parts}]" if header
             else f"l0 = {res.value}  [{parts}]"]
    for b in res.breakdown:
        line = f"  p={b.prime}: order {b.order}  provenance: {b.provenance}"
        if b.witness:
            line += f"  witness: {b.witness}"
        lines.append(line)
    return lines


def _cmd_l0(args, use_json, ascii):
    res = catalog.l0(catalog.parse_group_spec(args.spec))
    if use_json:
        return _l0_doc(res), 0
    return _l0_text(res), 0


def _cmd_table(args, use_json, ascii):
    if args.max_n < 2:
        raise DomainError("--max-n must be at least 2")
    rows = catalog.table(args.max_n)
    if use_json:
        return [_l0_doc(r) for r in rows], 0
    lines = []
    for r in rows:
        lines.extend(_l0_text(r, header=True)[:1])
    cites = []
    for r in rows:
        for c in r.citations:
            if c not in cites:
                cites.append(c)
    lines.append("")
    lines.extend(f"pinned/tor citation: {c}" for c in cites)
    return lines, 0


def _cmd_phi_star(args, use_json, ascii):
    g = catalog.parse_group_spec(args.spec)
    data = catalog.presentation(g, args.prime)
    lift = data.lift
    if isinstance(lift, catalog.TorFormula):
        raise DomainError(f"{g} has no z3 lift in the catalog; l0 comes from the Tor formula")
    if isinstance(lift, catalog.AlgebraicLift):
        t = data.hopf.phi_star(lift.cls)
        text, prov, lift_name = t.to_str(ascii), "computed", str(lift.cls)
    else:
        t = lift.result
        text = t.to_str(ascii) if t is not None else "unknown"
        prov, lift_name = f"pinned({lift.citation})", None
    if use_json:
        return {"group": str(g), "prime": args.prime, "lift": lift_name,
                "phi_star": text, "provenance": prov}, 0
    lines = [text]
    if prov != "computed":
        lines.append(f"provenance: {prov}")
    return lines, 0


def _cmd_verify_hopf(args, use_json, ascii):
    g = catalog.parse_group_spec(args.spec)
    cap = default_degree_cap()
    top = cap if args.max_degree is None else args.max_degree
    if top < 1:
        raise DomainError("--max-degree must be positive")
    data = catalog.presentation(g, args.prime, max(cap, top))
    rep = verify_axioms(data.hopf, top)
    code = 0 if rep.ok else 3
    if use_json:
        return {"group": str(g), "prime": args.prime, "max_degree": top,
                "checks": rep.checks, "failures": rep.failures, "ok": rep.ok}, code
    lines = [f"{g} at p={args.prime}, degrees <= {top}"]
    for name, count in rep.checks.items():
        bad = sum(1 for f in rep.failures if f.startswith(name + ":"))
        lines.append(f"  {name}: {count} checks, {bad} failures")
    lines.extend(f"  FAIL {f}" for f in rep.failures)
    lines.append("OK" if rep.ok else "FAILED")
    return lines, code


def _cmd_check_level(args, use_json, ascii):
    g = catalog.parse_group_spec(args.spec)
    ok, why = catalog.check_level(g, args.level, args.genus)
    v = catalog.l0(g).value
    if use_json:
        return {"group": str(g), "level": args.level, "genus": args.genus, "l0": v,
                "prequantizable": ok, "explanation": why}, 0
    verb = "divides" if ok else "does not divide"
    return [f"{'YES' if ok else 'NO'} (l0 = {v} {verb} {args.level})",
            f"genus {args.genus}: the answer does not depend on the genus"], 0


def _cmd_marked_points(args, use_json, ascii):
    try:
        with open(args.classes, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read classes file: {e}") from None
    classes = alcove.read_classes(text, args.n)
    res = alcove.marked_points_check(args.n, args.level, classes)
    if use_json:
        return {"n": args.n, "level": args.level, "classes": [str(c) for c in classes],
                "verdict": res.verdict.value, "reasons": list(res.reasons)}, 0
    return [res.verdict.value] + [f"  {r}" for r in res.reasons], 0


def _cmd_alcove(args, use_json, ascii):
    data = alcove.alcove_vertices(args.n)
    reduced = None
    if args.reduce is not None:
        x = alcove.CartanPoint.parse(args.reduce, args.n)
        reduced = alcove.alcove_reduce(args.n, x)
    if use_json:
        doc = {"n": args.n, "vertices": [str(v) for v in data.vertices],
               "barycenter": str(data.barycenter)}
        if reduced is not None:
            doc["reduced"] = str(reduced)
        return doc, 0
    lines = [f"v{i} = {v}" for i, v in enumerate(data.vertices)]
    lines.append(f"barycenter = {data.barycenter}")
    if reduced is not None:
        lines.append(f"reduced = {reduced}")
    return lines, 0


_COMMANDS = {
    "l0": _cmd_l0, "table": _cmd_table, "phi-star": _cmd_phi_star,
    "verify-hopf": _cmd_verify_hopf, "check-level": _cmd_check_level,
    "marked-points": _cmd_marked_points, "alcove": _cmd_alcove,
}


def run(argv: Optional[List[str]] = None, out: Optional[TextIO] = None,
        err: Optional[TextIO] = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        default_degree_cap()  # validate the environment before any work
        use_json = getattr(args, "json", False)
        ascii = getattr(args, "ascii", False)
        payload, code = _COMMANDS[args.command](args, use_json, ascii)
    except PrequantError as e:
        print(f"error: {e}", file=err)
        return e.exit_code
    text = json.dumps(payload, indent=2, ensure_ascii=False) if use_json else "\n".join(payload)
    if ascii:
        text = text.replace("⊗", " (x) ").replace("·", "*")
    out.write(text + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
