"""Problem data model and the elementary scheduling operations.

An instance is a list of integer processing times, a machine count and a
common due date.  The objective of every solver in this package is the
total early work of an assignment: the sum over machines of
``min(load, due_date)``, i.e. the amount of processing that happens before
the due date when each machine runs its jobs back to back from time zero.

This module also provides the preprocessing pass that every approximation
pipeline runs first.  It peels off jobs that fill a whole machine on their
own, detects the situations in which an optimal schedule is available
immediately (no machines left, far more work than the machines can fit
before the due date, or an LPT run that finishes everything early), and
otherwise returns a core instance on which the rounding machinery may
assume

* every job is shorter than the due date,
* the total work is at most twice ``machine_count * due_date``, and
* the optimum is at least half of ``machine_count * due_date``.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .errors import ContractViolationError, ValidationError

__all__ = [
    "Instance",
    "Schedule",
    "PreprocessResult",
    "LptDichotomy",
    "evaluate",
    "preprocess",
    "lpt",
    "lpt_dichotomy",
    "a2_certified",
    "normalize_loads",
    "merge_core_schedule",
]


@dataclass(frozen=True)
class Instance:
    """A scheduling instance: integer job sizes, machines, common due date.

    Job identity is the position in ``jobs`` and is stable across every
    operation in this package.  ``machine_count`` may be zero only for the
    degenerate cores produced by :func:`preprocess`; user-facing input is
    validated to at least one machine by the CLI layer.
    """

    jobs: tuple[int, ...]
    machine_count: int
    due_date: int

    def __post_init__(self) -> None:
        if not isinstance(self.machine_count, int) or self.machine_count < 0:
            raise ValidationError(f"machine_count must be a non-negative integer, got {self.machine_count!r}")
        if not isinstance(self.due_date, int) or self.due_date < 1:
            raise ValidationError(f"due_date must be a positive integer, got {self.due_date!r}")
        jobs = tuple(self.jobs)
        for j, p in enumerate(jobs):
            if not isinstance(p, int) or isinstance(p, bool) or p < 1:
                raise ValidationError(f"job {j}: processing time must be a positive integer, got {p!r}")
        object.__setattr__(self, "jobs", jobs)

    @property
    def job_count(self) -> int:
        return len(self.jobs)

    def total_work(self) -> int:
        return sum(self.jobs)


@dataclass(frozen=True)
class Schedule:
    """An evaluated assignment of every job to one machine.

    ``assignment[j]`` is the machine index of job ``j``.  ``per_job_early_work``
    fixes the within-machine processing order to ascending job index; the
    per-job values depend on that order but their sum always equals
    ``early_work_total``.
    """

    assignment: tuple[int, ...]
    machine_loads: tuple[int, ...]
    early_work_total: int
    per_job_early_work: tuple[int, ...]

    @property
    def machine_count(self) -> int:
        return len(self.machine_loads)


@dataclass(frozen=True)
class PreprocessResult:
    """Outcome of :func:`preprocess`.

    ``removed_jobs`` pairs each job at least as long as the due date with
    the machine dedicated to it (such a job earns exactly ``due_date`` of
    early work and nothing else fits usefully around it).  ``core`` is the
    remaining instance on the remaining machines; ``core_job_indices`` maps
    core job positions back to original indices.  When preprocessing alone
    already determines an optimal schedule (machines or jobs exhausted,
    overfull instance, or an all-early LPT run), ``fast_path_schedule``
    holds it (expressed on the original instance) and ``fast_path_value``
    its total early work.
    """

    core: Instance
    removed_jobs: tuple[tuple[int, int], ...]
    core_job_indices: tuple[int, ...]
    fast_path_value: int | None
    fast_path_schedule: Schedule | None


def _normalize_assignment(instance: Instance, assignment) -> list[int]:
    """Validate an assignment given as a sequence or a job->machine mapping."""
    n = instance.job_count
    m = instance.machine_count
    if isinstance(assignment, Mapping):
        keys = set(assignment.keys())
        expected = set(range(n))
        if keys != expected:
            missing = sorted(expected - keys)
            extra = sorted(keys - expected)
            raise ValidationError(f"assignment keys do not match job indices (missing {missing}, unexpected {extra})")
        seq = [assignment[j] for j in range(n)]
    elif isinstance(assignment, Sequence) and not isinstance(assignment, (str, bytes)):
        seq = list(assignment)
        if len(seq) != n:
            raise ValidationError(f"assignment covers {len(seq)} jobs, instance has {n}")
    else:
        raise ValidationError(f"assignment must be a sequence or mapping, got {type(assignment).__name__}")
    for j, i in enumerate(seq):
        if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < m:
            raise ValidationError(f"job {j}: machine index {i!r} out of range [0, {m})")
    return seq


def evaluate(instance: Instance, assignment) -> Schedule:
    """Compute loads, total early work and per-job early work of an assignment.

    ``assignment`` is a sequence indexed by job, or a mapping from job index
    to machine index; it must cover every job exactly once.
    """
    seq = _normalize_assignment(instance, assignment)
    d = instance.due_date
    loads = [0] * instance.machine_count
    per_job = [0] * instance.job_count
    # Ascending job index within each machine; one pass suffices because the
    # running load before job j is exactly its start time under that order.
    for j, i in enumerate(seq):
        start = loads[i]
        p = instance.jobs[j]
        per_job[j] = min(p, max(0, d - start))
        loads[i] = start + p
    total = sum(min(c, d) for c in loads)
    return Schedule(
        assignment=tuple(seq),
        machine_loads=tuple(loads),
        early_work_total=total,
        per_job_early_work=tuple(per_job),
    )


def _fill_fast_path(core_jobs: Sequence[int], core_machines: int, d: int) -> list[int]:
    """Greedy fill used when the core has more than twice the early-work
    capacity: load machines 0..m-2 in job order until each first exceeds the
    due date, everything left goes on the last machine.  Every machine ends
    above the due date, so the value hits the ``m * d`` ceiling."""
    assign = [core_machines - 1] * len(core_jobs)
    machine = 0
    load = 0
    for j in range(len(core_jobs)):
        if machine >= core_machines - 1:
            break
        assign[j] = machine
        load += core_jobs[j]
        if load > d:
            machine += 1
            load = 0
    return assign


def preprocess(instance: Instance) -> PreprocessResult:
    """Split off due-date-filling jobs and detect immediately-optimal cases.

    Fast paths, in order: no machines or no jobs left after the removal
    step; total work beyond ``2 * m' * d`` (the greedy fill saturates every
    machine); an LPT run whose maximum load stays within the due date (all
    work is early, so LPT is optimal).  Postconditions when
    ``fast_path_value`` is None: every core job is strictly shorter than
    the due date, the core's total work is at most ``2 * m' * d``, and
    every machine of the core's LPT schedule is loaded to at least half
    the due date, so the core optimum is at least ``m' * d / 2``.
    """
    d = instance.due_date
    m = instance.machine_count
    long_jobs = [j for j, p in enumerate(instance.jobs) if p >= d]

    # One dedicated machine per long job, in index order, while machines last.
    removed = tuple((j, rank) for rank, j in enumerate(long_jobs[:m]))
    removed_set = {j for j, _ in removed}
    core_indices = tuple(j for j in range(instance.job_count) if j not in removed_set)
    core_machines = m - len(removed)
    core = Instance(
        jobs=tuple(instance.jobs[j] for j in core_indices),
        machine_count=core_machines,
        due_date=d,
    )

    def finish(core_assignment: Sequence[int] | None) -> PreprocessResult:
        schedule = merge_core_schedule(
            instance,
            removed,
            core_indices,
            evaluate(core, core_assignment) if core_assignment is not None else None,
        )
        return PreprocessResult(
            core=core,
            removed_jobs=removed,
            core_job_indices=core_indices,
            fast_path_value=schedule.early_work_total,
            fast_path_schedule=schedule,
        )

    if core_machines == 0:
        # Every machine is saturated by a removed job; leftovers earn nothing.
        return finish(None)
    if core.job_count == 0:
        return finish([])
    if core.total_work() > 2 * core_machines * d:
        return finish(_fill_fast_path(core.jobs, core_machines, d))
    core_lpt = lpt(core)
    if max(core_lpt.machine_loads) <= d:
        # Everything runs early, so no schedule can earn more.
        return finish(core_lpt.assignment)
    return PreprocessResult(
        core=core,
        removed_jobs=removed,
        core_job_indices=core_indices,
        fast_path_value=None,
        fast_path_schedule=None,
    )


def merge_core_schedule(
    instance: Instance,
    removed_jobs: Sequence[tuple[int, int]],
    core_job_indices: Sequence[int],
    core_schedule: Schedule | None,
) -> Schedule:
    """Re-express a core schedule on the original instance.

    Removed jobs keep their dedicated machines 0..r-1; core machine ``i``
    becomes original machine ``r + i``.  Jobs not covered by either (only
    possible when the machines ran out during removal) go to the currently
    least-loaded machine, where they earn nothing extra.
    """
    r = len(removed_jobs)
    assignment: dict[int, int] = {j: rank for j, rank in removed_jobs}
    if core_schedule is not None:
        for pos, machine in enumerate(core_schedule.assignment):
            assignment[core_job_indices[pos]] = r + machine
    leftovers = [j for j in range(instance.job_count) if j not in assignment]
    if leftovers:
        loads = [0] * instance.machine_count
        for j, i in assignment.items():
            loads[i] += instance.jobs[j]
        for j in leftovers:
            i = loads.index(min(loads))
            assignment[j] = i
            loads[i] += instance.jobs[j]
    return evaluate(instance, assignment)


def lpt(instance: Instance) -> Schedule:
    """Longest-processing-time-first list scheduling.

    Jobs are taken by non-increasing size (ties: ascending job index) and
    each goes to the least-loaded machine (ties: lowest machine index).
    Intended for instances whose jobs are all shorter than the due date;
    see :func:`lpt_dichotomy` for the structural guarantee that order buys.
    """
    if instance.machine_count < 1:
        raise ValidationError("lpt needs at least one machine")
    order = sorted(range(instance.job_count), key=lambda j: (-instance.jobs[j], j))
    loads = [0] * instance.machine_count
    assignment = [0] * instance.job_count
    for j in order:
        i = loads.index(min(loads))
        assignment[j] = i
        loads[i] += instance.jobs[j]
    return evaluate(instance, assignment)


@dataclass(frozen=True)
class LptDichotomy:
    """What an LPT run certifies about an instance.

    Exactly one of two situations arises when every job is shorter than the
    due date: either no machine exceeds the due date (then the LPT schedule
    is optimal and the optimum equals the total work), or every machine is
    loaded to at least half the due date (then the optimum is at least
    ``machine_count * due_date / 2``).
    """

    all_early: bool
    min_load_half_due: bool
    half_md_lower_bound: bool


def lpt_dichotomy(instance: Instance, schedule: Schedule | None = None) -> LptDichotomy:
    """Classify an LPT schedule into the two-branch structure above.

    ``half_md_lower_bound`` is an exact decision of whether twice the
    optimum reaches ``machine_count * due_date``: in the all-early branch
    the optimum is the total work, otherwise the min-load bound applies.
    """
    if schedule is None:
        schedule = lpt(instance)
    d = instance.due_date
    all_early = max(schedule.machine_loads) <= d
    min_half = 2 * min(schedule.machine_loads) >= d
    if all_early:
        certified = 2 * instance.total_work() >= instance.machine_count * d
    else:
        certified = min_half
    return LptDichotomy(all_early=all_early, min_load_half_due=min_half, half_md_lower_bound=certified)


def a2_certified(instance: Instance) -> bool:
    """True iff twice the optimal early work of ``instance`` reaches
    ``machine_count * due_date`` (decided exactly via one LPT run)."""
    return lpt_dichotomy(instance).half_md_lower_bound


def normalize_loads(instance: Instance, schedule: Schedule) -> Schedule:
    """Cap every machine load at three times the due date without losing value.

    Repeatedly moves the highest-index job off the lowest-index machine
    loaded above ``3d`` onto the lowest-index machine loaded at most ``2d``.
    The donor stays above the due date, so the total early work never drops.
    Requires the preprocessing postconditions; if no receiving machine
    exists while some machine exceeds ``3d``, those postconditions were
    violated and a :class:`ContractViolationError` is raised.
    """
    d = instance.due_date
    assignment = list(schedule.assignment)
    loads = list(schedule.machine_loads)
    # Jobs per machine, ascending index; the donor's highest-index job moves.
    per_machine: list[list[int]] = [[] for _ in range(instance.machine_count)]
    for j, i in enumerate(assignment):
        per_machine[i].append(j)

    moves = 0
    while True:
        donor = next((i for i, c in enumerate(loads) if c > 3 * d), None)
        if donor is None:
            break
        receiver = next((i for i, c in enumerate(loads) if c <= 2 * d), None)
        if receiver is None:
            raise ContractViolationError(
                "no machine with load <= 2d while another exceeds 3d; "
                "instance does not satisfy the preprocessing postconditions"
            )
        j = per_machine[donor].pop()
        per_machine[receiver].append(j)
        assignment[j] = receiver
        loads[donor] -= instance.jobs[j]
        loads[receiver] += instance.jobs[j]
        moves += 1
        if moves > instance.job_count:
            raise ContractViolationError("load normalization failed to terminate in n moves")

    result = evaluate(instance, assignment)
    if result.early_work_total < schedule.early_work_total:
        raise ContractViolationError("load normalization decreased the objective")
    return result
