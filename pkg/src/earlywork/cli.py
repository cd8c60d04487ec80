"""Command-line interface.

Subcommands:
  solve   run one solver on an instance file, write a schedule document
  gen     write a seeded instance file from generator parameters
  verify  recompute a schedule document against its instance
  bench   run a solver suite against the oracle and write a report

Exit codes: 0 success, 2 usage error, 3 input validation error,
4 resource limit exceeded, 5 internal contract violation.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from ._backend import backend_name
from .bench import DEFAULT_DELTAS, format_table, parse_suite_doc, run_suite
from .configip import solve_eptas
from .dp import solve_fptas
from .errors import ContractViolationError, ResourceLimitError, ValidationError
from .instance import lpt, merge_core_schedule, preprocess
from .generate import GeneratorSpec, generate_instance
from .oracles import OracleBudget, brute_force, exact_dp
from .rounding import Delta, delta_from_epsilon
from .serialize import (
    dumps_canonical,
    instance_to_doc,
    read_instance,
    read_schedule_doc,
    schedule_to_doc,
    write_instance,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_RESOURCE = 4
EXIT_CONTRACT = 5

ALGORITHMS = ("lpt", "bf", "dpexact", "eptas", "fptas")


def _parse_fraction(text: str, flag: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"{flag} expects an exact fraction like 1/3, got {text!r}") from exc


def _resolve_delta(args) -> tuple[Delta, dict]:
    if args.delta is not None and args.epsilon is not None:
        raise ValidationError("give either --delta or --epsilon, not both")
    if args.delta is not None:
        frac = _parse_fraction(args.delta, "--delta")
        if frac.numerator != 1 or frac.denominator < 2:
            raise ValidationError(f"--delta must be a unit fraction 1/q with q >= 2, got {args.delta!r}")
        return Delta(q=frac.denominator), {"delta": args.delta}
    if args.epsilon is not None:
        eps = _parse_fraction(args.epsilon, "--epsilon")
        delta = delta_from_epsilon(eps)
        return delta, {"epsilon": args.epsilon, "delta": f"1/{delta.q}"}
    raise ValidationError(f"--algo {args.algo} requires --delta 1/q or --epsilon P/Q")


def _cmd_solve(args) -> int:
    instance = read_instance(args.input)
    parameters: dict = {}
    if args.algo == "lpt":
        pre = preprocess(instance)
        if pre.fast_path_schedule is not None:
            schedule = pre.fast_path_schedule
        else:
            schedule = merge_core_schedule(
                instance, pre.removed_jobs, pre.core_job_indices, lpt(pre.core)
            )
    elif args.algo == "bf":
        budget = OracleBudget(max_assignments=args.max_assignments, max_states=args.max_states)
        _, schedule = brute_force(instance, budget)
    elif args.algo == "dpexact":
        budget = OracleBudget(max_assignments=args.max_assignments, max_states=args.max_states)
        _, schedule = exact_dp(instance, budget)
    elif args.algo == "eptas":
        delta, parameters = _resolve_delta(args)
        schedule = solve_eptas(instance, delta)
    else:  # fptas
        delta, parameters = _resolve_delta(args)
        schedule = solve_fptas(instance, delta)

    doc = schedule_to_doc(schedule, args.algo, parameters)
    if args.output:
        Path(args.output).write_text(dumps_canonical(doc))
    else:
        sys.stdout.write(dumps_canonical(doc))
    return EXIT_OK


def _cmd_gen(args) -> int:
    spec = GeneratorSpec(
        n=args.n, m=args.m, d=args.d, distribution=args.distribution, seed=args.seed, q=args.q
    )
    instance = generate_instance(spec)
    if args.output:
        write_instance(args.output, instance)
    else:
        sys.stdout.write(dumps_canonical(instance_to_doc(instance)))
    return EXIT_OK


def _cmd_verify(args) -> int:
    instance = read_instance(args.input)
    doc = read_schedule_doc(args.schedule)
    from .instance import evaluate

    recomputed = evaluate(instance, doc["assignment"])
    if list(doc["loads"]) != list(recomputed.machine_loads):
        raise ValidationError(
            f"stated loads {doc['loads']} do not match recomputed {list(recomputed.machine_loads)}"
        )
    if doc["early_work_total"] != recomputed.early_work_total:
        raise ValidationError(
            f"stated early work {doc['early_work_total']} does not match "
            f"recomputed {recomputed.early_work_total}"
        )
    print(
        f"OK: {len(recomputed.assignment)} jobs on {recomputed.machine_count} machines, "
        f"early work {recomputed.early_work_total}"
    )
    return EXIT_OK


def _cmd_bench(args) -> int:
    if args.suite is None or args.suite == "default":
        specs, deltas = None, DEFAULT_DELTAS
    else:
        import json

        try:
            doc = json.loads(Path(args.suite).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read suite file {args.suite}: {exc}") from exc
        specs, deltas = parse_suite_doc(doc)
    report = run_suite(specs=specs, deltas=deltas, include_timing=not args.no_timing)
    if args.output:
        Path(args.output).write_text(dumps_canonical(report))
    sys.stdout.write(format_table(report))
    return EXIT_OK if report["aggregates"]["violation_count"] == 0 else EXIT_CONTRACT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="earlywork",
        description="Solvers for early-work maximization on identical parallel machines "
        "with a common due date.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({backend_name()} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve an instance file")
    solve.add_argument("--algo", required=True, choices=ALGORITHMS)
    solve.add_argument("--input", required=True, help="instance JSON file")
    solve.add_argument("--output", help="schedule JSON file (stdout if omitted)")
    solve.add_argument("--delta", help="accuracy as a unit fraction 1/q (eptas/fptas)")
    solve.add_argument("--epsilon", help="target relative error as a fraction P/Q (eptas/fptas)")
    solve.add_argument("--max-assignments", type=int, default=OracleBudget().max_assignments)
    solve.add_argument("--max-states", type=int, default=OracleBudget().max_states)
    solve.set_defaults(func=_cmd_solve)

    gen = sub.add_parser("gen", help="generate a seeded instance file")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--d", type=int, required=True)
    gen.add_argument("--distribution", choices=("uniform", "boundary"), default="uniform")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--q", type=int, help="class-edge parameter for --distribution boundary")
    gen.add_argument("--output", help="instance JSON file (stdout if omitted)")
    gen.set_defaults(func=_cmd_gen)

    verify = sub.add_parser("verify", help="check a schedule document against its instance")
    verify.add_argument("--input", required=True, help="instance JSON file")
    verify.add_argument("--schedule", required=True, help="schedule JSON file")
    verify.set_defaults(func=_cmd_verify)

    bench = sub.add_parser("bench", help="run a suite against the oracle and report")
    bench.add_argument("--suite", help="suite JSON file, or 'default'")
    bench.add_argument("--output", help="report JSON file")
    bench.add_argument(
        "--no-timing",
        action="store_true",
        help="omit wall-time fields so report bytes are reproducible",
    )
    bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ContractViolationError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT


if __name__ == "__main__":
    sys.exit(main())
