"""Instance rounding: the grid of size classes and the auxiliary instance.

The accuracy knob is a unit fraction ``delta = 1/q``.  On an instance with
due date ``d`` it induces a grid whose unit is ``d / q**2`` of original
time; all rounded quantities are integer multiples of that unit, so the
whole module works in exact integer "grid units" where the due date is
``q**2`` units.  Jobs shorter than ``d/q`` are *small* and are replaced in
aggregate by uniform blocks of ``q`` units; longer jobs are *big* and are
rounded down to their class floor ``q + k - 1`` units, losing less than a
``1/q`` fraction of their size.

Comparisons between original times and grid quantities never materialize
the (possibly fractional) unit: they cross-multiply integers instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ContractViolationError, ValidationError
from .instance import Instance, Schedule, evaluate

__all__ = [
    "Delta",
    "delta_from_epsilon",
    "Classification",
    "classify",
    "RoundedJob",
    "RoundedInstance",
    "build_auxiliary",
    "RoundedSchedule",
    "lift_solution",
    "rounding_bound_violations",
]


@dataclass(frozen=True)
class Delta:
    """Accuracy parameter ``1/q`` with the derived grid constants."""

    q: int

    def __post_init__(self) -> None:
        if not isinstance(self.q, int) or self.q < 2:
            raise ValidationError(f"delta denominator q must be an integer >= 2, got {self.q!r}")

    @property
    def value(self) -> Fraction:
        return Fraction(1, self.q)

    @property
    def class_count(self) -> int:
        """Number of big-job classes: (1 - delta) / delta**2 == q*(q-1)."""
        return self.q * (self.q - 1)

    @property
    def units_per_due_date(self) -> int:
        """The due date measured in grid units of ``delta**2 * d``."""
        return self.q * self.q

    @property
    def small_size_units(self) -> int:
        """Size of one merged small block (``delta * d``) in grid units."""
        return self.q


def delta_from_epsilon(epsilon: Fraction | str) -> Delta:
    """Largest unit fraction ``1/q`` with ``1/q <= epsilon / 10``.

    ``epsilon`` is an exact rational in (0, 1); strings like ``"1/3"`` are
    accepted so the CLI boundary stays float-free.
    """
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise ValidationError(f"epsilon must lie strictly between 0 and 1, got {eps}")
    q = -((-10 * eps.denominator) // eps.numerator)  # ceil(10 / eps)
    return Delta(q=q)


@dataclass(frozen=True)
class Classification:
    """Partition of an instance's jobs into the small set and big classes.

    Big job ``j`` belongs to class ``k`` (1-based) when its size lies in
    ``[delta*d + (k-1)*delta**2*d, delta*d + k*delta**2*d)``.
    ``class_counts[0]`` counts small jobs, ``class_counts[k]`` class ``k``.
    """

    small_jobs: tuple[int, ...]
    big_class_of: dict[int, int]
    class_counts: tuple[int, ...]


def classify(instance: Instance, delta: Delta) -> Classification:
    """Assign every job to the small set or its big class, exactly.

    Requires every job shorter than the due date (run preprocessing first).
    """
    q = delta.q
    d = instance.due_date
    counts = [0] * (delta.class_count + 1)
    small: list[int] = []
    big: dict[int, int] = {}
    for j, p in enumerate(instance.jobs):
        if p >= d:
            raise ContractViolationError(
                f"job {j} has size {p} >= due date {d}; classify requires a preprocessed core"
            )
        if p * q < d:
            small.append(j)
            counts[0] += 1
        else:
            k = (p * q * q) // d - q + 1
            big[j] = k
            counts[k] += 1
    return Classification(small_jobs=tuple(small), big_class_of=big, class_counts=tuple(counts))


@dataclass(frozen=True)
class RoundedJob:
    """One big job after rounding: back-reference and size in grid units."""

    job_index: int
    size_units: int


@dataclass(frozen=True)
class RoundedInstance:
    """The auxiliary instance, entirely in grid units.

    Small jobs lose their identity: only ``small_job_count`` uniform blocks
    of ``small_job_size_units`` remain, the floor of the small total divided
    by the block size.  Each big job keeps a back-reference and its class
    floor as size.
    """

    units_per_due_date: int
    small_job_count: int
    small_job_size_units: int
    big_jobs: tuple[RoundedJob, ...]
    machine_count: int

    @property
    def job_count(self) -> int:
        return self.small_job_count + len(self.big_jobs)

    def total_units(self) -> int:
        return self.small_job_count * self.small_job_size_units + sum(
            b.size_units for b in self.big_jobs
        )

    def class_capacities(self, delta: Delta) -> tuple[int, ...]:
        """Available multiplicities per class: index 0 = small blocks."""
        caps = [0] * (delta.class_count + 1)
        caps[0] = self.small_job_count
        for b in self.big_jobs:
            caps[b.size_units - delta.q + 1] += 1
        return tuple(caps)


def build_auxiliary(instance: Instance, classification: Classification, delta: Delta) -> RoundedInstance:
    """Construct the rounded instance from a classification."""
    q = delta.q
    d = instance.due_date
    small_total = sum(instance.jobs[j] for j in classification.small_jobs)
    small_count = (small_total * q) // d  # floor of small_total / (d/q)
    big = tuple(
        RoundedJob(job_index=j, size_units=q + k - 1)
        for j, k in sorted(classification.big_class_of.items())
    )
    return RoundedInstance(
        units_per_due_date=q * q,
        small_job_count=small_count,
        small_job_size_units=q,
        big_jobs=big,
        machine_count=instance.machine_count,
    )


def rounding_bound_violations(
    instance: Instance, classification: Classification, delta: Delta, rounded: RoundedInstance
) -> list[str]:
    """Check the per-job rounding guarantees in exact arithmetic.

    For every big job of size ``p`` rounded to ``u`` units the chain
    ``p >= u * d/q**2 >= p - d/q**2 >= (1 - 1/q) * p`` must hold; in
    cross-multiplied form all three are integer comparisons.  Returns a
    description of every violation (empty == all bounds hold).
    """
    q = delta.q
    d = instance.due_date
    by_index = {b.job_index: b.size_units for b in rounded.big_jobs}
    problems: list[str] = []
    for j in classification.big_class_of:
        p = instance.jobs[j]
        u = by_index[j]
        if not p * q * q >= u * d:
            problems.append(f"job {j}: rounded size exceeds the original ({u} units vs p={p})")
        if not u * d >= p * q * q - d:
            problems.append(f"job {j}: rounding dropped more than one grid unit (p={p}, {u} units)")
        if not p * q * q - d >= (q - 1) * p * q:
            problems.append(f"job {j}: one grid unit exceeds a 1/q fraction of p={p}")
    if rounded.total_units() * d > instance.total_work() * q * q:
        problems.append("rounded total exceeds the original total work")
    return problems


@dataclass(frozen=True)
class RoundedSchedule:
    """An assignment of rounded jobs to machines, in grid units.

    ``small_counts[i]`` is the number of small blocks on machine ``i``;
    ``big_assignment[i]`` lists the back-references of its big jobs.  Jobs
    the solver left unplaced are simply absent (lifting distributes their
    originals greedily).
    """

    small_counts: tuple[int, ...]
    big_assignment: tuple[tuple[int, ...], ...]
    machine_load_units: tuple[int, ...]
    value_units: int

    @property
    def machine_count(self) -> int:
        return len(self.small_counts)


def make_rounded_schedule(
    rounded: RoundedInstance, small_counts: list[int], big_assignment: list[list[int]]
) -> RoundedSchedule:
    """Evaluate loads and value for a rounded assignment."""
    sizes = {b.job_index: b.size_units for b in rounded.big_jobs}
    cap = rounded.units_per_due_date
    loads = [
        c * rounded.small_job_size_units + sum(sizes[j] for j in jobs)
        for c, jobs in zip(small_counts, big_assignment, strict=True)
    ]
    return RoundedSchedule(
        small_counts=tuple(small_counts),
        big_assignment=tuple(tuple(jobs) for jobs in big_assignment),
        machine_load_units=tuple(loads),
        value_units=sum(min(c, cap) for c in loads),
    )


def lift_solution(
    instance: Instance,
    classification: Classification,
    delta: Delta,
    rounded_schedule: RoundedSchedule,
) -> Schedule:
    """Turn a rounded schedule back into a schedule of the original jobs.

    Big originals follow their rounded counterparts.  Small originals are
    dealt machine by machine in ascending job index: machine ``i`` with
    ``c`` small blocks keeps receiving until its small load first exceeds
    ``(c - 1) * d/q`` (machines with no blocks receive nothing).  Everything
    still unplaced afterwards goes to the currently least-loaded machine,
    one job at a time in ascending index.
    """
    q = delta.q
    d = instance.due_date
    m = rounded_schedule.machine_count
    if m != instance.machine_count:
        raise ValidationError(
            f"rounded schedule has {m} machines, instance has {instance.machine_count}"
        )

    small_total = sum(instance.jobs[j] for j in classification.small_jobs)
    available_blocks = (small_total * q) // d
    if sum(rounded_schedule.small_counts) > available_blocks:
        raise ValidationError(
            f"rounded schedule uses {sum(rounded_schedule.small_counts)} small blocks, "
            f"only {available_blocks} exist"
        )

    assignment: dict[int, int] = {}
    loads = [0] * m
    seen: set[int] = set()
    for i, jobs in enumerate(rounded_schedule.big_assignment):
        for j in jobs:
            if j not in classification.big_class_of:
                raise ValidationError(f"rounded schedule references job {j}, which is not a big job")
            if j in seen:
                raise ValidationError(f"rounded schedule assigns big job {j} twice")
            seen.add(j)
            assignment[j] = i
            loads[i] += instance.jobs[j]

    # Deal small originals against each machine's block quota.  The loop
    # condition "small load * q <= (c - 1) * d" is the exact form of
    # "has not yet exceeded (c - 1) * d/q".
    small_iter = iter(classification.small_jobs)
    pending = next(small_iter, None)
    for i in range(m):
        c = rounded_schedule.small_counts[i]
        if c == 0:
            continue
        small_load = 0
        while pending is not None and small_load * q <= (c - 1) * d:
            assignment[pending] = i
            small_load += instance.jobs[pending]
            loads[i] += instance.jobs[pending]
            pending = next(small_iter, None)

    leftovers = [j for j in range(instance.job_count) if j not in assignment]
    for j in leftovers:
        i = loads.index(min(loads))
        assignment[j] = i
        loads[i] += instance.jobs[j]

    return evaluate(instance, assignment)
