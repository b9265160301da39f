"""Command-line interface: ``decide``, ``plan``, ``verify``, ``mbound`` and ``corpus``.

Exit codes: 0 success (a bundle exists), 1 verification failure, 2 input
error, 3 no bundle (``Delta < 0``), 4 the construction itself failed.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import serialization as ser
from .constructor import ConstructionError, NegativeDiscriminant, build_plan
from .corpus import generate_corpus, summarize
from .kodaira import ChernInstance, invariants, m_bound
from .verifier import verify_plan

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_NO_BUNDLE = 3
EXIT_CONSTRUCTION = 4


class InputError(Exception):
    pass


def _fmt(x: Fraction | int) -> str:
    return str(x).replace("-", "−")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_instance(path: str) -> ChernInstance:
    try:
        return ser.load_instance(_read(path))
    except ser.DecodeError as exc:
        raise InputError(f"{path}: {exc}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_decide(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    rep = invariants(inst)
    exists = rep.delta >= 0
    if args.json:
        print(ser.dumps({
            "exists": exists,
            "delta": ser.encode_rational(rep.delta),
            "R": rep.Rval,
            "d": rep.d,
            "mbound": ser.encode_rational(rep.mbound),
            "region": rep.region.value,
        }), end="")
    else:
        verdict = "exists" if exists else "none"
        print(
            f"{verdict}; Δ={_fmt(rep.delta)}; R={_fmt(rep.Rval)}; d={rep.d}; "
            f"m={_fmt(rep.mbound)}; region={rep.region.value}"
        )
    return EXIT_OK if exists else EXIT_NO_BUNDLE


def cmd_plan(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    try:
        plan = build_plan(inst)
    except NegativeDiscriminant as exc:
        print(f"no bundle: {exc}", file=sys.stderr)
        return EXIT_NO_BUNDLE
    except ConstructionError as exc:
        print(f"construction failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    _write(args.out, ser.dump_plan(plan))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    text = _read(args.plan)
    try:
        plan = ser.load_plan(text)
    except ser.SchemaError as exc:
        raise InputError(f"{args.plan}: {exc}") from None
    except ser.WitnessError as exc:
        if args.json:
            print(ser.dumps({"overall": False, "error": str(exc), "checks": []}), end="")
        else:
            print(f"FAIL  plan_well_formed  {exc}")
            print("overall: FAIL")
        return EXIT_VERIFY_FAILED
    report = verify_plan(plan, inst)
    if args.json:
        print(ser.dumps({
            "overall": report.overall,
            "checks": [
                {"name": c.name, "passed": c.passed, "lhs": str(c.lhs), "rhs": str(c.rhs)}
                for c in report.checks
            ],
        }), end="")
    else:
        width = max(len(c.name) for c in report.checks)
        for c in report.checks:
            status = "ok  " if c.passed else "FAIL"
            print(f"{status}  {c.name:<{width}}  {c.lhs}  {c.rhs}")
        print(f"overall: {'pass' if report.overall else 'FAIL'}")
    return EXIT_OK if report.overall else EXIT_VERIFY_FAILED


def cmd_mbound(args: argparse.Namespace) -> int:
    inst = _load_instance(args.instance)
    m = m_bound(inst.r, inst.c1)
    if args.json:
        print(ser.dumps({"r": inst.r, "mbound": ser.encode_rational(m)}), end="")
    else:
        print(f"m={_fmt(m)}")
    return EXIT_OK


def cmd_corpus(args: argparse.Namespace) -> int:
    if args.count < 0 or args.max_r < 2:
        raise InputError("--count must be >= 0 and --max-r >= 2")
    corpus = generate_corpus(args.seed, args.count, args.max_r)
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        width = max(4, len(str(max(args.count - 1, 0))))
        for i, inst in enumerate(corpus):
            (out / f"instance_{i:0{width}d}.json").write_text(ser.dump_instance(inst), encoding="utf-8")
        summary = {"seed": args.seed, "max_r": args.max_r, **summarize(corpus).to_json()}
        (out / "summary.json").write_text(ser.dumps(summary), encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{out}: {exc}") from None
    if args.json:
        print(ser.dumps(summary), end="")
    else:
        print(f"wrote {len(corpus)} instances to {out}")
        for key in ("branches", "regions"):
            print(f"{key}: " + ", ".join(f"{k}={v}" for k, v in summary[key].items()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kodaira-bundles", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    sp = add("decide", cmd_decide, "decide existence and print the invariants")
    sp.add_argument("--instance", required=True)
    sp = add("plan", cmd_plan, "write a construction plan")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--out", help="output path (default: stdout)")
    sp = add("verify", cmd_verify, "verify a plan against an instance")
    sp.add_argument("--plan", required=True)
    sp.add_argument("--instance", required=True)
    sp = add("mbound", cmd_mbound, "print the filtrability bound m(r, c1)")
    sp.add_argument("--instance", required=True)
    sp = add("corpus", cmd_corpus, "generate a random instance corpus")
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--max-r", type=int, default=6)
    sp.add_argument("--out", required=True, help="output directory")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
