"""The configuration route: solve the rounded instance via an integer program.

A *configuration* describes one machine's rounded content as a multiplicity
vector over the size classes (index 0 = small blocks).  Only configurations
whose load stays within three due dates are worth considering: an optimal
rounded schedule of that shape always exists, because any machine loaded
beyond ``3d`` can donate a job to one below ``2d`` without losing value.
The integer program then chooses how many machines receive each
configuration, maximizing the sum of capped loads subject to class
multiplicities.

The program is solved exactly: best-bound branch-and-bound over an exact
rational LP relaxation.  No floating point is involved anywhere, so the
optimality proof is airtight.  The configuration space is a function of the
accuracy parameter alone and explodes for fine accuracies; a budget check
(via a closed-form count, before any enumeration) turns that into a clear
error instead of a hang.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .errors import ContractViolationError, ResourceLimitError, ValidationError
from .instance import Instance, Schedule, merge_core_schedule, preprocess
from .lp import LpInfeasibleError, solve_lp_max
from .rounding import (
    Delta,
    RoundedInstance,
    RoundedSchedule,
    build_auxiliary,
    classify,
    lift_solution,
    make_rounded_schedule,
)

__all__ = [
    "Configuration",
    "ConfigProgram",
    "ConfigSolution",
    "BnbStats",
    "DEFAULT_CONFIG_BUDGET",
    "class_size_units",
    "count_configurations",
    "enumerate_configurations",
    "build_config_program",
    "solve_config_ip",
    "assemble_rounded_schedule",
    "solve_eptas",
]

DEFAULT_CONFIG_BUDGET = 5_000_000


@dataclass(frozen=True)
class Configuration:
    """Multiplicities of one machine's rounded jobs, by size class.

    ``counts[0]`` is the number of small blocks, ``counts[k]`` the number of
    class-``k`` jobs.  ``value_units`` caps the load at one due date, which
    is all a machine can earn.
    """

    counts: tuple[int, ...]
    load_units: int
    value_units: int


def class_size_units(delta: Delta) -> tuple[int, ...]:
    """Grid-unit size per class index (0 = small block of ``q`` units,
    class k >= 1 = ``q + k - 1`` units)."""
    q = delta.q
    return (q,) + tuple(q + k - 1 for k in range(1, delta.class_count + 1))


def count_configurations(delta: Delta) -> int:
    """Number of valid configurations, without enumerating them.

    Counts multiplicity vectors with load at most ``3 * q**2`` grid units by
    an unbounded-knapsack counting table; cheap even when the true count is
    astronomically large.
    """
    sizes = class_size_units(delta)
    cap = 3 * delta.units_per_due_date
    ways = [0] * (cap + 1)
    ways[0] = 1
    for w in sizes:
        for b in range(w, cap + 1):
            ways[b] += ways[b - w]
    return sum(ways)


_ENUM_CACHE: dict[int, tuple[Configuration, ...]] = {}


def enumerate_configurations(delta: Delta) -> tuple[Configuration, ...]:
    """All valid configurations in lexicographic order of their counts.

    Valid means the load is at most three due dates (``3 * q**2`` units),
    which also bounds the number of jobs by ``3q``.  The set depends only on
    the accuracy parameter and is cached per ``q``.
    """
    cached = _ENUM_CACHE.get(delta.q)
    if cached is not None:
        return cached
    sizes = class_size_units(delta)
    cap = 3 * delta.units_per_due_date
    due = delta.units_per_due_date
    out: list[Configuration] = []
    counts = [0] * len(sizes)

    def descend(idx: int, load: int) -> None:
        if idx == len(sizes):
            out.append(
                Configuration(counts=tuple(counts), load_units=load, value_units=min(load, due))
            )
            return
        w = sizes[idx]
        for u in range((cap - load) // w + 1):
            counts[idx] = u
            descend(idx + 1, load + u * w)
        counts[idx] = 0

    descend(0, 0)
    result = tuple(out)
    _ENUM_CACHE[delta.q] = result
    return result


@dataclass(frozen=True)
class ConfigProgram:
    """The integer program: pick ``x_C >= 0`` per configuration with
    ``sum x_C = machine_count`` and class usage within ``capacities``,
    maximizing the total capped load."""

    configurations: tuple[Configuration, ...]
    capacities: tuple[int, ...]
    machine_count: int


def build_config_program(rounded: RoundedInstance, delta: Delta) -> ConfigProgram:
    return ConfigProgram(
        configurations=enumerate_configurations(delta),
        capacities=rounded.class_capacities(delta),
        machine_count=rounded.machine_count,
    )


@dataclass(frozen=True)
class BnbStats:
    """Trace of a branch-and-bound run, for inspection and tests."""

    nodes_explored: int
    incumbent_trace: tuple[int, ...]
    bound_trace: tuple[Fraction, ...]
    final_bound: Fraction


@dataclass(frozen=True)
class ConfigSolution:
    """An exact optimum of a :class:`ConfigProgram`.

    ``counts`` maps each used configuration to its machine count, in
    enumeration order.
    """

    counts: dict[Configuration, int]
    objective_units: int
    stats: BnbStats | None = None


def solve_config_ip(program: ConfigProgram, collect_stats: bool = False) -> ConfigSolution:
    """Solve the configuration program to proven optimality.

    Best-bound branch-and-bound: each node's bound comes from the exact
    rational LP relaxation; branching splits the fractional variable with
    the largest fractional part (ties: lexicographically first); the
    incumbent starts from a greedy rounding of the root LP.  Configurations
    that could never be used (some class multiplicity above its capacity)
    are dropped up front, which changes nothing about the optimum.
    """
    m = program.machine_count
    caps = program.capacities
    active = [
        c
        for c in program.configurations
        if all(u <= cap for u, cap in zip(c.counts, caps))
    ]
    if not active or active[0].load_units != 0:
        raise ContractViolationError("configuration set must contain the empty configuration")
    if m == 0:
        return ConfigSolution(counts={}, objective_units=0, stats=None)

    # Rows: one capacity row per class that some active configuration uses,
    # plus the machine-count equality.
    used_classes = [k for k in range(len(caps)) if any(c.counts[k] for c in active)]
    rows = [
        ([c.counts[k] for c in active], "<=", caps[k])
        for k in used_classes
    ]
    rows.append(([1] * len(active), "==", m))
    objective = [c.value_units for c in active]

    def node_lp(fixings: tuple[tuple[int, str, int], ...]):
        extra = []
        for var, sense, bound in fixings:
            coeffs = [0] * len(active)
            coeffs[var] = 1
            extra.append((coeffs, sense, bound))
        return solve_lp_max(objective, rows + extra)

    def greedy_incumbent(x: tuple[Fraction, ...]) -> list[int]:
        counts = [int(v) for v in x]  # floor; keeps every constraint satisfied
        remaining = list(caps)
        for idx, c in enumerate(active):
            for k in range(len(caps)):
                remaining[k] -= c.counts[k] * counts[idx]
        machines_left = m - sum(counts)
        for _ in range(machines_left):
            best_idx = 0  # empty configuration always fits
            for idx, c in enumerate(active):
                if c.value_units > active[best_idx].value_units and all(
                    c.counts[k] <= remaining[k] for k in range(len(caps))
                ):
                    best_idx = idx
            counts[best_idx] += 1
            for k in range(len(caps)):
                remaining[k] -= active[best_idx].counts[k]
        return counts

    def solution_value(counts: list[int]) -> int:
        return sum(c.value_units * x for c, x in zip(active, counts))

    root = node_lp(())
    incumbent = greedy_incumbent(root.x)
    incumbent_value = solution_value(incumbent)

    nodes = 1  # the root LP was evaluated above
    incumbent_trace = [incumbent_value]
    bound_trace: list[Fraction] = []
    heap: list[tuple[Fraction, int, tuple, object]] = []
    seq = 0
    heapq.heappush(heap, (-root.objective, seq, (), root))

    while heap:
        neg_bound, _, fixings, res = heapq.heappop(heap)
        bound = -neg_bound
        bound_trace.append(bound)
        if bound.numerator // bound.denominator <= incumbent_value:
            break  # best-bound order: every remaining node is dominated
        frac_vars = [(i, v - (v.numerator // v.denominator)) for i, v in enumerate(res.x)]
        frac_vars = [(i, f) for i, f in frac_vars if f != 0]
        if not frac_vars:
            counts = [int(v) for v in res.x]
            value = solution_value(counts)
            if value > incumbent_value:
                incumbent = counts
                incumbent_value = value
                incumbent_trace.append(value)
            continue
        var = max(frac_vars, key=lambda t: (t[1], -t[0]))[0]
        floor_val = res.x[var].numerator // res.x[var].denominator
        for child in (
            fixings + ((var, "<=", floor_val),),
            fixings + ((var, ">=", floor_val + 1),),
        ):
            try:
                child_res = node_lp(child)
            except LpInfeasibleError:
                continue
            finally:
                nodes += 1
            if child_res.objective.numerator // child_res.objective.denominator > incumbent_value:
                seq += 1
                heapq.heappush(heap, (-child_res.objective, seq, child, child_res))

    stats = None
    if collect_stats:
        stats = BnbStats(
            nodes_explored=nodes,
            incumbent_trace=tuple(incumbent_trace),
            bound_trace=tuple(bound_trace),
            final_bound=Fraction(incumbent_value),
        )
    counts_map = {
        c: x for c, x in zip(active, incumbent) if x > 0
    }
    return ConfigSolution(counts=counts_map, objective_units=incumbent_value, stats=stats)


def assemble_rounded_schedule(solution: ConfigSolution, rounded: RoundedInstance) -> RoundedSchedule:
    """Expand configuration counts into an explicit per-machine schedule.

    Machines take configurations in enumeration order; class slots are
    filled with concrete big jobs in ascending original index; small slots
    draw from the small-block pool.  Rounded jobs the solution does not use
    stay unassigned (lifting places their originals greedily).
    """
    q_small = rounded.small_job_size_units
    per_class: dict[int, list[int]] = {}
    for b in rounded.big_jobs:
        per_class.setdefault(b.size_units - q_small + 1, []).append(b.job_index)
    for jobs in per_class.values():
        jobs.sort()
    taken = {k: 0 for k in per_class}

    machines = []
    for config, count in solution.counts.items():
        machines.extend([config] * count)
    if len(machines) != rounded.machine_count:
        raise ContractViolationError(
            f"solution covers {len(machines)} machines, instance has {rounded.machine_count}"
        )

    small_counts: list[int] = []
    big_assignment: list[list[int]] = []
    small_used = 0
    for config in machines:
        small_used += config.counts[0]
        small_counts.append(config.counts[0])
        chosen: list[int] = []
        for k, u in enumerate(config.counts[1:], start=1):
            if u == 0:
                continue
            pool = per_class.get(k, [])
            if taken.get(k, 0) + u > len(pool):
                raise ContractViolationError(f"solution uses more class-{k} jobs than exist")
            chosen.extend(pool[taken[k] : taken[k] + u])
            taken[k] += u
        big_assignment.append(sorted(chosen))
    if small_used > rounded.small_job_count:
        raise ContractViolationError("solution uses more small blocks than exist")
    return make_rounded_schedule(rounded, small_counts, big_assignment)


def solve_eptas(
    instance: Instance,
    delta: Delta,
    config_budget: int = DEFAULT_CONFIG_BUDGET,
) -> Schedule:
    """Approximation scheme whose accuracy does not depend on the machine count.

    Pipeline: preprocessing (with its immediate-optimal fast paths), job
    classification, auxiliary instance, configuration IP solved exactly,
    lift back to original jobs, re-attach removed jobs.  On preprocessed
    cores the result is within ``5 * m * d / q`` of optimal.
    """
    if count_configurations(delta) > config_budget:
        raise ResourceLimitError(
            f"{count_configurations(delta)} configurations at q={delta.q} exceed the budget "
            f"of {config_budget}; use a coarser accuracy (smaller q) or the fixed-m DP solver"
        )
    pre = preprocess(instance)
    if pre.fast_path_schedule is not None:
        return pre.fast_path_schedule
    classification = classify(pre.core, delta)
    rounded = build_auxiliary(pre.core, classification, delta)
    program = build_config_program(rounded, delta)
    solution = solve_config_ip(program)
    rounded_schedule = assemble_rounded_schedule(solution, rounded)
    core_schedule = lift_solution(pre.core, classification, delta, rounded_schedule)
    return merge_core_schedule(instance, pre.removed_jobs, pre.core_job_indices, core_schedule)
