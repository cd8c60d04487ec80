"""Exact reference solvers for small instances.

Two independent routes to the true optimum: full enumeration of machine
assignments, and a pseudo-polynomial dynamic program over the integer grid
``{0..due_date}`` per machine.  They are used as ground truth by the test
and benchmark harnesses; both refuse (rather than truncate) work beyond
their budgets.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._backend import best_assignment, dp_fill
from .errors import ResourceLimitError
from .instance import Instance, Schedule, evaluate

__all__ = ["OracleBudget", "brute_force", "exact_dp"]


@dataclass(frozen=True)
class OracleBudget:
    """Hard caps for the two oracles: assignments enumerated by
    :func:`brute_force` and DP states tabulated by :func:`exact_dp`."""

    max_assignments: int = 10**6
    max_states: int = 2 * 10**7

    def __post_init__(self) -> None:
        if self.max_assignments < 1 or self.max_states < 1:
            raise ValueError("oracle budgets must be positive")


DEFAULT_BUDGET = OracleBudget()


def brute_force(instance: Instance, budget: OracleBudget = DEFAULT_BUDGET) -> tuple[int, Schedule]:
    """Optimal early work by enumerating all ``m**n`` assignments.

    Returns the optimum and the lexicographically smallest optimal
    assignment (job 0 most significant digit).
    """
    m = instance.machine_count
    n = instance.job_count
    if m**n > budget.max_assignments:
        raise ResourceLimitError(
            f"brute force would enumerate {m}**{n} assignments, over the budget of {budget.max_assignments}"
        )
    value, assignment = best_assignment(list(instance.jobs), m, instance.due_date)
    schedule = evaluate(instance, assignment)
    assert schedule.early_work_total == value
    return value, schedule


def exact_dp(instance: Instance, budget: OracleBudget = DEFAULT_BUDGET) -> tuple[int, Schedule]:
    """Optimal early work via the grid dynamic program on ``{0..d}**m``.

    Exact for integer instances because every reachable remaining-window
    value is itself an integer in ``0..d``.  The backtracked schedule
    re-evaluates to the returned optimum.
    """
    m = instance.machine_count
    n = instance.job_count
    d = instance.due_date
    states = max(n, 1) * (d + 1) ** m
    if states > budget.max_states:
        raise ResourceLimitError(
            f"exact DP would tabulate {states} states, over the budget of {budget.max_states}"
        )
    value, choices, _ = dp_fill(list(instance.jobs), m, d)
    assignment = backtrack_assignment(list(instance.jobs), m, d, choices)
    schedule = evaluate(instance, assignment)
    assert schedule.early_work_total == value
    return value, schedule


def backtrack_assignment(sizes: list[int], machine_count: int, capacity: int, choices) -> list[int]:
    """Recover one optimal assignment from the DP choice tables.

    Walks from the full-grid corner backwards through the layers, honoring
    the lowest-machine-index tie-break baked into the tables.
    """
    grid = capacity + 1
    strides = [grid ** (machine_count - 1 - i) for i in range(machine_count)]
    state = grid**machine_count - 1
    assignment = [0] * len(sizes)
    for j in range(len(sizes) - 1, -1, -1):
        i = choices[j][state]
        e = (state // strides[i]) % grid
        shrunk = max(0, e - sizes[j])
        state -= (e - shrunk) * strides[i]
        assignment[j] = i
    return assignment
