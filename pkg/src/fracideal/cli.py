"""Command-line front end: ``classify``, ``ideal`` and ``selftest``.

Exit codes: 0 on a completed run (whatever the verdicts), 1 when the
selftest finds a failure, 2 on bad input, 3 on an internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from . import __version__
from . import classify as C
from . import selftest
from .domainspec import DomainSpec, SpecParseError, load_spec, parse_spec
from .errors import FracIdealError, InternalInconsistency
from .expr import ExprParseError, evaluate, generator_expr
from .quadratic import QuadOrder
from .report import dumps, render_text, report_document

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}") from None


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bound", type=_nonneg, default=None, help="pair height for sweeps (default 8)")
    p.add_argument("--samples", type=_nonneg, default=None, help="random ideals per sampled check")
    p.add_argument("--seed", type=int, default=None, help="seed for every random choice (default 0)")
    p.add_argument("--format", choices=("text", "structured"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracideal", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a quadratic order or numerical semigroup")
    p.add_argument("spec", nargs="+", help="spec file, or inline fields such as 'quadratic d=-3 f=2'")
    _add_common(p)
    p.add_argument("--primes", type=_int_list, default=None, help="rational primes for the essential check")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing in structured output")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("ideal", help="evaluate an ideal expression")
    p.add_argument("spec", nargs="+", help="domain fields (or a spec file) followed by the expression")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("selftest", help="run the invariant and oracle suites")
    _add_common(p)
    p.add_argument("--suite", action="append", choices=sorted(selftest.SUITES), help="run only these suites")
    p.add_argument("--inject-fault", choices=sorted(selftest.FAULTS), default=None, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selftest)
    return parser


def _pick(flag, spec_value, default):
    if flag is not None:
        return flag
    if spec_value is not None:
        return spec_value
    return default


# -- classify ----------------------------------------------------------------------


def classify_document(spec: DomainSpec, bound=None, samples=None, seed=None, primes=None, timing=False) -> dict:
    domain = spec.build()
    bound = _pick(bound, spec.bound, C.DEFAULT_BOUND)
    samples = _pick(samples, spec.samples, C.DEFAULT_SAMPLES)
    seed = _pick(seed, spec.seed, 0)
    primes = _pick(primes, spec.primes, None)
    start = time.perf_counter()
    report = C.classify_domain(domain, bound, samples, seed, primes)
    elapsed = {"total": time.perf_counter() - start} if timing else None
    return report_document(report, spec.echo(), elapsed)


def cmd_classify(args, out=None) -> int:
    out = out or sys.stdout
    spec = load_spec(args.spec)
    if args.primes is not None and spec.kind != "quadratic":
        raise C.UnsupportedBackend("--primes applies only to quadratic orders")
    # text output always shows timing; structured output only on request
    timing = args.timing or args.format == "text"
    doc = classify_document(spec, args.bound, args.samples, args.seed, args.primes, timing)
    out.write(dumps(doc) if args.format == "structured" else render_text(doc))
    return EXIT_OK


# -- ideal ---------------------------------------------------------------------------


def containment(ideal, one) -> dict:
    sub, sup = ideal <= one, ideal >= one
    if sub and sup:
        summary = "= D"
    elif sub:
        summary = "⊊ D, ≠ D"
    elif sup:
        summary = "⊋ D, ≠ D"
    else:
        summary = "incomparable with D, ≠ D"
    return {"equals_D": sub and sup, "inside_D": sub, "contains_D": sup, "summary": summary}


def ideal_document(domain, expression: str) -> dict:
    value = evaluate(domain, expression)
    doc: dict = {
        "domain": str(domain),
        "expression": expression,
        "ideal": generator_expr(domain, value),
    }
    if isinstance(domain, QuadOrder):
        doc["z_basis"] = value.render()
        doc["maximal_order"] = value == domain.maximal
    else:
        doc["minimum"] = value.offset
        doc["holes"] = sorted(value.holes)
    doc["vs_D"] = containment(value, domain.one())
    return doc


def _split_ideal_args(tokens: list[str]) -> tuple[DomainSpec, str]:
    if len(tokens) < 2:
        raise SpecParseError("expected domain fields followed by an expression", 1, 1, "<inline>")
    return load_spec(tokens[:-1]), tokens[-1]


def cmd_ideal(args, out=None) -> int:
    out = out or sys.stdout
    spec, expression = _split_ideal_args(args.spec)
    doc = ideal_document(spec.build(), expression)
    if args.format == "structured":
        out.write(dumps(doc))
        return EXIT_OK
    out.write(f"{doc['expression']}\n  = {doc['ideal']}\n")
    if "z_basis" in doc:
        out.write(f"  Z-basis {doc['z_basis']}\n")
        if doc["maximal_order"]:
            out.write("  this is the maximal order\n")
    else:
        out.write(f"  minimum {doc['minimum']}, holes {doc['holes']}\n")
    out.write(f"  {doc['vs_D']['summary']}\n")
    return EXIT_OK


# -- selftest --------------------------------------------------------------------------


def cmd_selftest(args, out=None) -> int:
    out = out or sys.stdout
    opts = selftest.Options(
        bound=_pick(args.bound, None, 8),
        samples=_pick(args.samples, None, 1000),
        seed=_pick(args.seed, None, 0),
    )
    results = selftest.run(opts, args.suite, args.inject_fault)
    ok = all(r.ok for r in results)
    if args.format == "structured":
        doc = {
            "ok": ok,
            "options": {"bound": opts.bound, "samples": opts.samples, "seed": opts.seed},
            "suites": [
                {"name": r.name, "checks": r.checks, "failures": [str(f) for f in r.failures]} for r in results
            ],
        }
        out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        for r in results:
            status = "ok" if r.ok else "FAIL"
            out.write(f"{r.name:<20} {status:<5} {r.checks:>6} checks  {r.seconds:6.2f}s\n")
            for f in r.failures:
                out.write(f"    minimal counterexample {f}\n")
        out.write("selftest passed\n" if ok else "selftest FAILED\n")
    return EXIT_OK if ok else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ExprParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalInconsistency as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except FracIdealError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
