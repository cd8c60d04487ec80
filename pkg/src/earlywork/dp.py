"""The dynamic-programming route: solve the rounded instance on the grid.

Every rounded size is an integer number of grid units and the due date is
``q**2`` units, so tabulating the early-work recurrence over all integer
remaining-window vectors in ``{0..q**2}**m`` solves the rounded instance
*exactly*.  The table has ``(q**2 + 1)**m`` states per job layer, which is
polynomial in ``q`` for fixed machine count; the rounded instance never has
more than ``2 * m * q`` jobs after preprocessing, so the whole solve is
independent of the original job count.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._backend import dp_fill
from .errors import ResourceLimitError
from .instance import Instance, Schedule, merge_core_schedule, preprocess
from .oracles import backtrack_assignment
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
    "DEFAULT_STATE_BUDGET",
    "DpGrid",
    "DpTable",
    "dp_solve_rounded",
    "dp_table",
    "solve_fptas",
]

DEFAULT_STATE_BUDGET = 5 * 10**7


def _dp_jobs(rounded: RoundedInstance) -> list[int]:
    """DP job order: all small blocks first, then big jobs ascending by
    original index (the order ``rounded.big_jobs`` is stored in)."""
    return [rounded.small_job_size_units] * rounded.small_job_count + [
        b.size_units for b in rounded.big_jobs
    ]


def _check_budget(rounded: RoundedInstance, state_budget: int) -> None:
    states = max(rounded.job_count, 1) * (rounded.units_per_due_date + 1) ** rounded.machine_count
    if states > state_budget:
        raise ResourceLimitError(
            f"DP table would hold {states} states, over the budget of {state_budget}; "
            "use a coarser accuracy or the configuration solver"
        )


def dp_solve_rounded(
    rounded: RoundedInstance, state_budget: int = DEFAULT_STATE_BUDGET
) -> tuple[int, RoundedSchedule]:
    """Exact optimum of a rounded instance, with a witness schedule.

    Returns the optimal value in grid units and the schedule recovered by
    backtracking (machine ties resolved toward the lowest index).
    """
    _check_budget(rounded, state_budget)
    m = rounded.machine_count
    cap = rounded.units_per_due_date
    sizes = _dp_jobs(rounded)
    value, choices, _ = dp_fill(sizes, m, cap)
    assignment = backtrack_assignment(sizes, m, cap, choices)

    small_counts = [0] * m
    big_assignment: list[list[int]] = [[] for _ in range(m)]
    for pos, machine in enumerate(assignment):
        if pos < rounded.small_job_count:
            small_counts[machine] += 1
        else:
            big_assignment[machine].append(rounded.big_jobs[pos - rounded.small_job_count].job_index)
    schedule = make_rounded_schedule(rounded, small_counts, big_assignment)
    if schedule.value_units != value:
        raise AssertionError("backtracked schedule does not reproduce the DP value")
    return value, schedule


@dataclass(frozen=True)
class DpGrid:
    """The load thresholds the DP distinguishes, in grid units."""

    points: tuple[int, ...]


@dataclass(frozen=True)
class DpTable:
    """Full value function of a rounded DP run, for inspection and tests.

    ``layers[j]`` is the value function after the first ``j`` jobs, indexed
    by flattened state (machine 0 most significant, coordinates descending
    stride).  ``choices[j]`` names the machine that receives job ``j`` in
    each state.
    """

    grid: DpGrid
    machine_count: int
    job_sizes: tuple[int, ...]
    layers: tuple[tuple[int, ...], ...]
    choices: tuple[bytes, ...]


def dp_table(rounded: RoundedInstance, state_budget: int = DEFAULT_STATE_BUDGET) -> DpTable:
    """Materialize every DP layer (small inputs only; meant for tests)."""
    _check_budget(rounded, state_budget)
    sizes = _dp_jobs(rounded)
    cap = rounded.units_per_due_date
    _, choices, layers = dp_fill(sizes, rounded.machine_count, cap, keep_tables=True)
    return DpTable(
        grid=DpGrid(points=tuple(range(cap + 1))),
        machine_count=rounded.machine_count,
        job_sizes=tuple(sizes),
        layers=tuple(tuple(layer) for layer in layers),
        choices=tuple(bytes(ch) for ch in choices),
    )


def solve_fptas(
    instance: Instance,
    delta: Delta,
    state_budget: int = DEFAULT_STATE_BUDGET,
) -> Schedule:
    """Approximation scheme for a small, fixed machine count.

    Same pipeline as the configuration route, with the rounded instance
    solved by the grid DP instead of the integer program.  On preprocessed
    cores the result is within ``5 * m * d / q`` of optimal.
    """
    pre = preprocess(instance)
    if pre.fast_path_schedule is not None:
        return pre.fast_path_schedule
    classification = classify(pre.core, delta)
    rounded = build_auxiliary(pre.core, classification, delta)
    _, rounded_schedule = dp_solve_rounded(rounded, state_budget=state_budget)
    core_schedule = lift_solution(pre.core, classification, delta, rounded_schedule)
    return merge_core_schedule(instance, pre.removed_jobs, pre.core_job_indices, core_schedule)
