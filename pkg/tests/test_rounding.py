from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from earlywork import (
    ContractViolationError,
    Delta,
    Instance,
    ValidationError,
    brute_force,
    build_auxiliary,
    classify,
    delta_from_epsilon,
    lift_solution,
    preprocess,
    rounding_bound_violations,
)
from earlywork.rounding import make_rounded_schedule

a1_instances = st.integers(2, 14).flatmap(
    lambda d: st.builds(
        lambda jobs, m: Instance(jobs=tuple(jobs), machine_count=m, due_date=d),
        st.lists(st.integers(1, d - 1), max_size=7),
        st.integers(1, 3),
    )
)


def test_delta_constants():
    delta = Delta(3)
    assert delta.value == Fraction(1, 3)
    assert delta.class_count == 6  # (1 - 1/3) / (1/9)
    assert delta.units_per_due_date == 9
    assert delta.small_size_units == 3
    with pytest.raises(ValidationError):
        Delta(1)


def test_delta_from_epsilon():
    assert delta_from_epsilon(Fraction(1, 2)).q == 20
    assert delta_from_epsilon(Fraction(1, 3)).q == 30
    assert delta_from_epsilon(Fraction(999, 1000)).q == 11
    assert delta_from_epsilon("2/5").q == 25
    for bad in (Fraction(0), Fraction(1), Fraction(3, 2), Fraction(-1, 4)):
        with pytest.raises(ValidationError):
            delta_from_epsilon(bad)


@given(st.fractions(min_value=Fraction(1, 200), max_value=Fraction(199, 200)))
def test_delta_from_epsilon_is_largest_valid(eps):
    q = delta_from_epsilon(eps).q
    assert Fraction(1, q) <= eps / 10 < Fraction(1, q - 1)


def test_classify_interval_edges():
    inst = Instance(jobs=(9, 10, 37), machine_count=2, due_date=100)
    cls = classify(inst, Delta(10))
    assert cls.small_jobs == (0,)
    assert cls.big_class_of == {1: 1, 2: 28}


def test_classify_coarse():
    inst = Instance(jobs=(3, 3, 2, 1), machine_count=2, due_date=4)
    cls = classify(inst, Delta(2))
    assert cls.small_jobs == (3,)
    assert cls.big_class_of == {0: 2, 1: 2, 2: 1}
    assert cls.class_counts == (1, 1, 2)


def test_classify_all_small():
    inst = Instance(jobs=(1, 1, 2), machine_count=2, due_date=30)
    cls = classify(inst, Delta(10))
    assert cls.small_jobs == (0, 1, 2)
    assert all(c == 0 for c in cls.class_counts[1:])


def test_classify_requires_short_jobs():
    inst = Instance(jobs=(4,), machine_count=1, due_date=4)
    with pytest.raises(ContractViolationError):
        classify(inst, Delta(2))


@given(a1_instances, st.sampled_from([2, 3, 4]))
def test_classify_matches_interval_definition(inst, q):
    delta = Delta(q)
    cls = classify(inst, delta)
    d = inst.due_date
    for j, p in enumerate(inst.jobs):
        if j in cls.small_jobs:
            assert p * q < d
        else:
            k = cls.big_class_of[j]
            assert 1 <= k <= delta.class_count
            # delta*d + (k-1)*delta^2*d <= p < delta*d + k*delta^2*d, times q^2/d
            assert q * d + (k - 1) * d <= p * q * q < q * d + k * d
    assert sum(cls.class_counts) == inst.job_count


def test_build_auxiliary_coarse():
    inst = Instance(jobs=(3, 3, 2, 1), machine_count=2, due_date=4)
    delta = Delta(2)
    rounded = build_auxiliary(inst, classify(inst, delta), delta)
    assert rounded.units_per_due_date == 4
    assert rounded.small_job_count == 0  # floor(1 / 2)
    assert [(b.job_index, b.size_units) for b in rounded.big_jobs] == [(0, 3), (1, 3), (2, 2)]
    assert rounded.class_capacities(delta) == (0, 1, 2)


def test_build_auxiliary_small_merging():
    inst = Instance(jobs=(9, 9, 9, 7), machine_count=2, due_date=100)
    delta = Delta(10)
    rounded = build_auxiliary(inst, classify(inst, delta), delta)
    assert rounded.small_job_count == 3  # floor(34 / 10)
    assert rounded.small_job_size_units == 10
    assert rounded.big_jobs == ()


def test_build_auxiliary_unit_grid():
    inst = Instance(jobs=(37,), machine_count=2, due_date=100)
    delta = Delta(10)
    rounded = build_auxiliary(inst, classify(inst, delta), delta)
    # the grid unit is one original time unit here, so no rounding loss
    assert rounded.big_jobs[0].size_units == 37


@given(a1_instances, st.sampled_from([2, 3, 4]))
def test_rounding_bounds_hold_exactly(inst, q):
    delta = Delta(q)
    cls = classify(inst, delta)
    rounded = build_auxiliary(inst, cls, delta)
    assert rounding_bound_violations(inst, cls, delta, rounded) == []


@given(a1_instances, st.sampled_from([2, 3, 4]))
def test_rounded_job_count_bound(inst, q):
    pre = preprocess(inst)
    if pre.fast_path_value is not None or pre.core.machine_count == 0:
        return
    delta = Delta(q)
    core = pre.core
    rounded = build_auxiliary(core, classify(core, delta), delta)
    assert rounded.job_count <= 2 * core.machine_count * q


def test_lift_follows_rounded_machines():
    inst = Instance(jobs=(3, 3, 2, 1), machine_count=2, due_date=4)
    delta = Delta(2)
    cls = classify(inst, delta)
    rounded = build_auxiliary(inst, cls, delta)
    rsched = make_rounded_schedule(rounded, [0, 0], [[0, 2], [1]])
    assert rsched.machine_load_units == (5, 3)
    assert rsched.value_units == 7
    lifted = lift_solution(inst, cls, delta, rsched)
    # bigs follow, the small leftover goes to the less loaded machine
    assert lifted.assignment == (0, 1, 0, 1)
    assert lifted.machine_loads == (5, 4)
    assert lifted.early_work_total == 8
    assert brute_force(inst)[0] == 8


def test_lift_all_leftovers():
    inst = Instance(jobs=(1, 1, 1), machine_count=2, due_date=9)
    delta = Delta(3)
    cls = classify(inst, delta)
    rsched = make_rounded_schedule(build_auxiliary(inst, cls, delta), [0, 0], [[], []])
    lifted = lift_solution(inst, cls, delta, rsched)
    # least-loaded dealing alternates machines
    assert lifted.assignment == (0, 1, 0)


def test_lift_without_small_jobs_keeps_machine_map():
    inst = Instance(jobs=(5, 6, 7), machine_count=3, due_date=9)
    delta = Delta(3)
    cls = classify(inst, delta)
    rounded = build_auxiliary(inst, cls, delta)
    rsched = make_rounded_schedule(rounded, [0, 0, 0], [[1], [2], [0]])
    lifted = lift_solution(inst, cls, delta, rsched)
    assert lifted.assignment == (2, 0, 1)


def test_lift_small_quota_rule():
    # three small blocks on machine 0: it keeps taking smalls until their
    # total first exceeds (3-1)*delta*d = 6
    inst = Instance(jobs=(2, 2, 2, 2, 2), machine_count=2, due_date=9)
    delta = Delta(3)
    cls = classify(inst, delta)
    rounded = build_auxiliary(inst, cls, delta)
    assert rounded.small_job_count == 3  # floor(10/3)
    rsched = make_rounded_schedule(rounded, [3, 0], [[], []])
    lifted = lift_solution(inst, cls, delta, rsched)
    assert lifted.assignment == (0, 0, 0, 0, 1)  # 2+2+2 <= 6 < 2+2+2+2


def test_lift_validates_references():
    inst = Instance(jobs=(3, 3, 2, 1), machine_count=2, due_date=4)
    delta = Delta(2)
    cls = classify(inst, delta)
    rounded = build_auxiliary(inst, cls, delta)
    bad_big = make_rounded_schedule(rounded, [0, 0], [[0, 1], [1]])
    with pytest.raises(ValidationError):
        lift_solution(inst, cls, delta, bad_big)  # job 1 twice
    with pytest.raises(ValidationError):
        lift_solution(
            inst, cls, delta, make_rounded_schedule(rounded, [1, 0], [[], []])
        )  # no small blocks exist
    with pytest.raises(ValidationError):
        # job 3 is small, not a big job
        rs = make_rounded_schedule(rounded, [0, 0], [[0], []])
        lift_solution(
            inst,
            cls,
            delta,
            type(rs)(
                small_counts=rs.small_counts,
                big_assignment=((3,), ()),
                machine_load_units=rs.machine_load_units,
                value_units=rs.value_units,
            ),
        )


@given(a1_instances, st.sampled_from([2, 3]), st.randoms(use_true_random=False))
def test_lift_output_is_always_feasible(inst, q, rnd):
    delta = Delta(q)
    cls = classify(inst, delta)
    rounded = build_auxiliary(inst, cls, delta)
    # random feasible rounded schedule: spread blocks and bigs arbitrarily
    m = inst.machine_count
    small_counts = [0] * m
    for _ in range(rnd.randint(0, rounded.small_job_count)):
        small_counts[rnd.randrange(m)] += 1
    big_assignment = [[] for _ in range(m)]
    for b in rounded.big_jobs:
        if rnd.random() < 0.8:
            big_assignment[rnd.randrange(m)].append(b.job_index)
    rsched = make_rounded_schedule(rounded, small_counts, big_assignment)
    lifted = lift_solution(inst, cls, delta, rsched)
    assert len(lifted.assignment) == inst.job_count
    assert sum(lifted.machine_loads) == inst.total_work()
