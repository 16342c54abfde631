"""Command-line front end.

Exit status: 0 on success (all identities verified), 1 for computational
or input errors and failed identities, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import jetcore, projective, verify

SUITE_NAMES = list(verify.SUITES)


def _read_json(arg):
    """``arg`` is inline JSON, a file path, or ``-`` for standard input."""
    if arg == "-":
        return json.load(sys.stdin)
    text = arg.strip()
    if text.startswith(("{", "[")):
        return json.loads(text)
    return json.loads(Path(arg).read_text())


def _emit(obj):
    print(json.dumps(obj))


def cmd_verify(args):
    names = SUITE_NAMES if args.suite == "all" else [args.suite]
    records = []
    timings = {}
    for name in names:
        start = time.perf_counter()
        checks = verify.run_suite(name, seed=args.seed, samples=args.samples)
        timings[name] = time.perf_counter() - start
        records.extend((name, c) for c in checks)
    failed = sum(not c.passed for _, c in records)
    if args.format == "json":
        rows = []
        for name, c in records:
            row = {"suite": name, **c.as_dict()}
            if args.timing:
                row["suite_seconds"] = round(timings[name], 3)
            rows.append(row)
        _emit(rows)
    else:
        current = None
        for name, c in records:
            if name != current:
                current = name
                extra = f" ({timings[name]:.2f}s)" if args.timing else ""
                print(f"== {name}{extra}")
            status = "PASS" if c.passed else "FAIL"
            print(f"[{status}] {c.tag}: {c.statement} | residual: {c.rendered_residual()}")
        print(f"{len(records)} identities, {failed} failed")
    return 0 if failed == 0 else 1


def cmd_jet(args):
    if args.action == "compose":
        if len(args.inputs) != 2:
            raise jetcore.JetError("compose needs two jets: F G (computes F o G)")
        f, g = (jetcore.jet_from_json(_read_json(a)) for a in args.inputs)
        if f.order != g.order:
            raise jetcore.JetError(f"order mismatch: {f.order} vs {g.order}")
        comp = jetcore.compose2 if f.order == 2 else jetcore.compose3
        _emit(jetcore.jet_to_json(comp(f, g)))
    elif args.action == "invert":
        if len(args.inputs) != 1:
            raise jetcore.JetError("invert needs one jet")
        f = jetcore.jet_from_json(_read_json(args.inputs[0]))
        inv = jetcore.inverse2 if f.order == 2 else jetcore.inverse3
        _emit(jetcore.jet_to_json(inv(f)))
    else:
        if len(args.inputs) != 1:
            raise jetcore.JetError("lift3 needs one projective frame")
        frame = projective.ProjFrame2.from_json(_read_json(args.inputs[0]))
        lifted = projective.lift3(frame)
        out = frame.to_json()
        out["e3"] = str(projective.projective_third(frame.e, frame.e2))
        out["jet"] = jetcore.jet_to_json(lifted)
        _emit(out)
    return 0


def cmd_schwarzian(args):
    value = projective.schwarzian_polynomial(args.coeffs, args.at)
    print(str(value))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="cartanjet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITE_NAMES + ["all"])
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--timing", action="store_true", help="include elapsed time (breaks byte-identical output)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("jet", help="jet arithmetic on JSON jets")
    p.add_argument("action", choices=["compose", "invert", "lift3"])
    p.add_argument("inputs", nargs="+", help="inline JSON, a file path, or - for stdin")
    p.set_defaults(func=cmd_jet)

    p = sub.add_parser("schwarzian", help="Schwarzian of a polynomial at a point")
    p.add_argument("coeffs", nargs="+", help="rational coefficients c0 c1 c2 ... of sum c_k x^k")
    p.add_argument("--at", default="0", help="evaluation point (default 0)")
    p.set_defaults(func=cmd_schwarzian)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "samples", 1) < 1:
        parser.error("--samples must be positive")
    try:
        return args.func(args)
    except (jetcore.JetError, ValueError, ZeroDivisionError, OSError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
