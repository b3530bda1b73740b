"""``parity-ca`` command-line front end.

Exit codes: 0 success or pass, 1 verification failure, 2 usage error,
3 a radius-2 candidate survived every counterexample search.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import core, debruijn, impossibility, render, rules, sweep

BUDGET_ENV = "PARITY_CA_MAX_STEPS_FACTOR"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ESCALATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_rule(spec: str) -> core.LocalRule:
    """``bfo``, ``num:<decimal>:<radius>`` or the path of a pattern file."""
    if spec == "bfo":
        return rules.bfo()
    if spec.startswith("num:"):
        try:
            _, number, radius = spec.split(":")
            return rules.rule_from_number(rules.parse_rule_number(number), int(radius))
        except ValueError as exc:
            raise UsageError(f"bad rule {spec!r}: {exc}") from exc
    path = Path(spec)
    if not path.is_file():
        raise UsageError(f"--rule must be 'bfo', 'num:<decimal>:<radius>' or a pattern file: {spec!r}")
    try:
        return rules.load_rule_file(path)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def budget_factor() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return core.DEFAULT_BUDGET_FACTOR
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}")
    return value


def parse_config(text: str) -> core.Configuration:
    try:
        return core.Configuration.from_string(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def check_odd(n: int, allow_even: bool) -> None:
    if n % 2 == 0 and not allow_even:
        raise UsageError(f"lattice size {n} is even: no rule can reach the all-ones fixed point "
                         "there, so the parity problem is ill-defined (use --allow-even to "
                         "run anyway)")


def _max_steps(args, n: int) -> int:
    return args.max_steps if args.max_steps is not None else core.default_max_steps(n, budget_factor())


def cmd_simulate(args, out) -> int:
    rule, config = load_rule(args.rule), parse_config(args.config)
    steps = args.steps if args.steps is not None else config.n
    for t, row in enumerate(core.evolve(rule, config, steps)):
        out.write(f"{t} {''.join(map(str, row.tolist()))}\n")
    return EXIT_OK


def cmd_classify(args, out) -> int:
    rule, config = load_rule(args.rule), parse_config(args.config)
    check_odd(config.n, args.allow_even)
    out.write(f"{core.classify(rule, config, _max_steps(args, config.n))}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    rule = load_rule(args.rule)
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"--sizes must be comma-separated integers, got {args.sizes!r}") from None
    if not sizes or min(sizes) < 1:
        raise UsageError("--sizes needs positive lattice sizes")
    for n in sizes:
        check_odd(n, args.allow_even)
    report = sweep.verify_perfect(rule, sizes, max_steps=args.max_steps, jobs=args.jobs,
                                  budget_factor=budget_factor(), allow_even=args.allow_even)
    for line in report.lines():
        out.write(line + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_parity_cert(args, out) -> int:
    graph = debruijn.build_debruijn(load_rule(args.rule))
    if args.export_edges:
        Path(args.export_edges).write_text(graph.edge_list())
    cert = debruijn.certify_pairwise_parity(graph)
    if cert.certified:
        out.write(f"status=certified potential={''.join(map(str, cert.potential.tolist()))}\n")
        return EXIT_OK
    w = cert.witness
    out.write(f"status=refuted length={w.length} active={w.weight} config={w.configuration()} "
              f"nodes={','.join(w.node_labels())}\n")
    return EXIT_FAIL


def cmd_preimages(args, out) -> int:
    found = debruijn.preimage_necklaces(load_rule(args.rule), args.target, args.length)
    for config in sorted(found, key=lambda c: c.bits):
        out.write(f"{config}\n")
    out.write(f"count={len(found)}\n")
    return EXIT_OK


def cmd_r2_tables(args, out) -> int:
    for line in impossibility.r2_cycle_tables().lines():
        out.write(line + "\n")
    return EXIT_OK


def cmd_r2_search(args, out) -> int:
    try:
        summary = impossibility.r2_search(args.prime_only, budget_factor(), args.jobs or 1)
    except impossibility.EscalationError as exc:
        for c in exc.survivors:
            out.write(c.line() + "\n")
        sys.stderr.write(f"escalation: {exc}\n")
        return EXIT_ESCALATION
    for line in summary.lines():
        out.write(line + "\n")
    return EXIT_OK


def cmd_r1_search(args, out) -> int:
    reports = impossibility.radius1_eliminate(budget_factor=budget_factor())
    for c in reports:
        out.write(c.line() + "\n")
    out.write(f"summary candidates={len(reports)}\n")
    return EXIT_OK


def cmd_spacetime(args, out) -> int:
    rule, config = load_rule(args.rule), parse_config(args.config)
    rows = core.evolve(rule, config, args.steps)
    text = render.to_pbm(rows) if args.format == "pbm" else render.to_ascii(rows)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parity-ca",
                                     description="Parity-problem cellular automata toolkit.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_rule(p):
        p.add_argument("--rule", required=True,
                       help="'bfo', 'num:<decimal>:<radius>' or a pattern file")
        return p

    def with_jobs(p):
        p.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                       help="worker processes (results do not depend on it)")
        return p

    p = with_rule(sub.add_parser("simulate", help="print the evolution as bit strings"))
    p.add_argument("--config", required=True)
    p.add_argument("--steps", type=int)
    p.set_defaults(func=cmd_simulate)

    p = with_rule(sub.add_parser("classify", help="iterate until convergence or a cycle"))
    p.add_argument("--config", required=True)
    p.add_argument("--max-steps", type=int)
    p.add_argument("--allow-even", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = with_jobs(with_rule(sub.add_parser("verify", help="exhaustive perfection check")))
    p.add_argument("--sizes", required=True, help="comma-separated odd sizes")
    p.add_argument("--max-steps", type=int)
    p.add_argument("--allow-even", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = with_rule(sub.add_parser("parity-cert", help="certify parity preservation"))
    p.add_argument("--export-edges", metavar="FILE", help="write 'u v output active' edge list")
    p.set_defaults(func=cmd_parity_cert)

    p = with_rule(sub.add_parser("preimages", help="pre-image necklaces of a homogeneous configuration"))
    p.add_argument("--target", type=int, choices=(0, 1), required=True)
    p.add_argument("--length", type=int, required=True)
    p.set_defaults(func=cmd_preimages)

    p = sub.add_parser("r2-tables", help="feasible length-5 and length-7 pre-image cycles")
    p.set_defaults(func=cmd_r2_tables)

    p = with_jobs(sub.add_parser("r2-search", help="radius-2 candidate elimination"))
    p.add_argument("--prime-only", action="store_true")
    p.set_defaults(func=cmd_r2_search)

    p = sub.add_parser("r1-search", help="radius-1 candidate elimination")
    p.set_defaults(func=cmd_r1_search)

    p = with_rule(sub.add_parser("spacetime", help="render the evolution as ASCII or PBM"))
    p.add_argument("--config", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--format", choices=("ascii", "pbm"), default="ascii")
    p.add_argument("--output", metavar="FILE")
    p.set_defaults(func=cmd_spacetime)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"parity-ca: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
