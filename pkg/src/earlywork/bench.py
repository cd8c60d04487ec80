"""Benchmark harness: run solvers against the exact oracle over a suite.

For every generated instance the harness records the oracle optimum, each
solver's value, ratio, additive gap and wall time, and checks the
guarantees the rounding pipeline promises, in exact integer arithmetic:

* ``rounded_optimum``: the optimum of the rounded core instance, in
  original time, is within ``4 * m * d / q`` of the core optimum.
* ``lifted_value``: each scheme's output is within ``5 * m * d / q`` of
  the optimum (schemes must be exactly optimal on fast-path instances).
* ``relative``: on cores whose optimum provably reaches half of
  ``m * d``, each scheme's value is at least ``(1 - 10/q)`` of optimal.

A report is a plain JSON-ready dict; timing fields can be omitted to make
the bytes reproducible run over run.
"""

from __future__ import annotations

import time
from fractions import Fraction

from .configip import solve_eptas
from .dp import solve_fptas
from .generate import GeneratorSpec, default_suite, generate_instance
from .instance import Instance, a2_certified, lpt, merge_core_schedule, preprocess
from .oracles import OracleBudget, brute_force
from .rounding import Delta, build_auxiliary, classify
from .serialize import dumps_canonical
from .errors import ValidationError

__all__ = ["run_suite", "parse_suite_doc", "format_table", "DEFAULT_DELTAS"]

DEFAULT_DELTAS = (Delta(2), Delta(3))


def _delta_label(delta: Delta) -> str:
    return f"1/{delta.q}"


def parse_suite_doc(doc) -> tuple[tuple[GeneratorSpec, ...], tuple[Delta, ...]]:
    """Read a suite description: {"specs": [...], "deltas": ["1/2", ...]}."""
    if not isinstance(doc, dict) or "specs" not in doc:
        raise ValidationError("suite document must be an object with a 'specs' array")
    specs = []
    for entry in doc["specs"]:
        try:
            specs.append(
                GeneratorSpec(
                    n=entry["n"],
                    m=entry["m"],
                    d=entry["d"],
                    distribution=entry["distribution"],
                    seed=entry["seed"],
                    q=entry.get("q"),
                )
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad generator spec {entry!r}: {exc}") from exc
    deltas = tuple(
        Delta(int(Fraction(s).denominator)) if Fraction(s).numerator == 1 else _bad_delta(s)
        for s in doc.get("deltas", ["1/2", "1/3"])
    )
    return tuple(specs), deltas


def _bad_delta(s) -> Delta:
    raise ValidationError(f"delta must be a unit fraction like '1/3', got {s!r}")


def _rounded_optimum_units(core: Instance, delta: Delta, budget: OracleBudget) -> int:
    classification = classify(core, delta)
    rounded = build_auxiliary(core, classification, delta)
    sizes = [rounded.small_job_size_units] * rounded.small_job_count + [
        b.size_units for b in rounded.big_jobs
    ]
    aux = Instance(jobs=tuple(sizes), machine_count=core.machine_count, due_date=rounded.units_per_due_date) \
        if sizes else None
    if aux is None:
        return 0
    value, _ = brute_force(aux, budget)
    return value


def _timed(solver, *args) -> tuple[int, float]:
    start = time.perf_counter()
    schedule = solver(*args)
    elapsed = time.perf_counter() - start
    return schedule.early_work_total, elapsed * 1000.0


def run_suite(
    specs=None,
    deltas: tuple[Delta, ...] = DEFAULT_DELTAS,
    include_timing: bool = True,
    oracle_budget: OracleBudget = OracleBudget(),
) -> dict:
    """Run the harness and return the report as a JSON-ready dict."""
    if specs is None:
        specs = default_suite()
    instances = []
    violations_total = 0
    ratios: dict[str, list[Fraction]] = {}

    for index, spec in enumerate(specs):
        instance = generate_instance(spec)
        opt, _ = brute_force(instance, oracle_budget)
        pre = preprocess(instance)
        fast_path = pre.fast_path_value is not None
        removed_credit = len(pre.removed_jobs) * instance.due_date

        problems: list[str] = []
        if fast_path and pre.fast_path_value != opt:
            problems.append(f"fast path value {pre.fast_path_value} != optimum {opt}")

        core = pre.core
        core_opt = None
        core_certified = False
        if not fast_path:
            core_opt, _ = brute_force(core, oracle_budget)
            core_certified = a2_certified(core)
            if 2 * core_opt < core.machine_count * core.due_date:
                if core_certified:
                    problems.append("half-capacity certificate contradicts the core optimum")
            if core_opt > core.machine_count * core.due_date:
                problems.append("core optimum exceeds the m*d ceiling")

        algo_entries: dict[str, dict] = {}

        def record(name: str, value: int, wall_ms: float, delta: Delta | None) -> None:
            nonlocal violations_total
            if value > opt:
                problems.append(f"{name}: value {value} exceeds the optimum {opt}")
            ratio = Fraction(value, opt) if opt else Fraction(1)
            ratios.setdefault(name, []).append(ratio)
            entry = {"value": value, "ratio": float(ratio), "gap": opt - value}
            if include_timing:
                entry["wall_ms"] = round(wall_ms, 3)
            algo_entries[name] = entry
            if delta is not None:
                q = delta.q
                if fast_path:
                    if value != opt:
                        problems.append(f"{name}: fast-path instance solved to {value} != {opt}")
                else:
                    m, d = core.machine_count, core.due_date
                    core_value = value - removed_credit
                    if q * core_value < q * core_opt - 5 * m * d:
                        problems.append(f"{name}: lifted value {value} misses the 5md/q band")
                    if core_certified and q * core_value < (q - 10) * core_opt:
                        problems.append(f"{name}: value below the (1-10/q) share of optimum")

        def run_lpt(inst: Instance):
            if fast_path:
                return pre.fast_path_schedule
            core_schedule = lpt(core)
            return merge_core_schedule(inst, pre.removed_jobs, pre.core_job_indices, core_schedule)

        value, wall = _timed(run_lpt, instance)
        record("lpt", value, wall, None)

        for delta in deltas:
            label = _delta_label(delta)
            value, wall = _timed(solve_eptas, instance, delta)
            record(f"eptas@{label}", value, wall, delta)
            value, wall = _timed(solve_fptas, instance, delta)
            record(f"fptas@{label}", value, wall, delta)

            if not fast_path:
                rounded_opt_units = _rounded_optimum_units(core, delta, oracle_budget)
                m, d, q = core.machine_count, core.due_date, delta.q
                # rounded optimum (time units) >= core optimum - 4*m*d/q,
                # cross-multiplied by q**2/d to stay in integers
                if rounded_opt_units * d < core_opt * q * q - 4 * m * d * q:
                    problems.append(f"rounded optimum at 1/{q} misses the 4md/q band")

        violations_total += len(problems)
        instances.append(
            {
                "index": index,
                "spec": {
                    "n": spec.n,
                    "m": spec.m,
                    "d": spec.d,
                    "distribution": spec.distribution,
                    "seed": spec.seed,
                    "q": spec.q,
                },
                "opt": opt,
                "fast_path": fast_path,
                "a2_certified_core": core_certified,
                "algorithms": algo_entries,
                "violations": problems,
            }
        )

    aggregates = {
        "instances": len(instances),
        "violation_count": violations_total,
        "per_algorithm": {
            name: {
                "min_ratio": float(min(vals)),
                "mean_ratio": float(sum(vals) / len(vals)),
            }
            for name, vals in sorted(ratios.items())
        },
    }
    return {
        "suite": {
            "size": len(instances),
            "deltas": [_delta_label(d) for d in deltas],
            "timing_included": include_timing,
        },
        "instances": instances,
        "aggregates": aggregates,
    }


def format_table(report: dict) -> str:
    """Human-readable aggregate table for stdout."""
    lines = []
    agg = report["aggregates"]
    lines.append(f"instances: {agg['instances']}   bound violations: {agg['violation_count']}")
    lines.append(f"{'algorithm':<14} {'min ratio':>10} {'mean ratio':>11}")
    for name, stats in agg["per_algorithm"].items():
        lines.append(f"{name:<14} {stats['min_ratio']:>10.4f} {stats['mean_ratio']:>11.4f}")
    bad = [i for i in report["instances"] if i["violations"]]
    for entry in bad[:20]:
        lines.append(f"VIOLATION at instance {entry['index']}: {entry['violations']}")
    if len(bad) > 20:
        lines.append(f"... and {len(bad) - 20} more instances with violations")
    return "\n".join(lines) + "\n"


def report_bytes(report: dict) -> str:
    return dumps_canonical(report)
