import itertools
import random

import pytest

from earlywork import (
    Delta,
    Instance,
    ResourceLimitError,
    brute_force,
    build_auxiliary,
    classify,
    dp_solve_rounded,
    dp_table,
    solve_fptas,
)
from earlywork.rounding import RoundedInstance


def rounded_of(jobs, m, d, q):
    inst = Instance(jobs=tuple(jobs), machine_count=m, due_date=d)
    delta = Delta(q)
    cls = classify(inst, delta)
    return build_auxiliary(inst, cls, delta)


def units_brute_force(rounded):
    sizes = [rounded.small_job_size_units] * rounded.small_job_count + [
        b.size_units for b in rounded.big_jobs
    ]
    cap = rounded.units_per_due_date
    best = 0
    for assign in itertools.product(range(rounded.machine_count), repeat=len(sizes)):
        loads = [0] * rounded.machine_count
        for j, i in enumerate(assign):
            loads[i] += sizes[j]
        best = max(best, sum(min(c, cap) for c in loads))
    return best


def test_dp_example():
    rounded = rounded_of([3, 3, 2], 2, 4, 2)
    value, sched = dp_solve_rounded(rounded)
    assert value == 7
    assert sorted(sched.machine_load_units) == [3, 5]
    assert sched.value_units == 7


def test_dp_no_jobs():
    rounded = rounded_of([], 2, 4, 2)
    value, sched = dp_solve_rounded(rounded)
    assert value == 0
    assert sched.machine_load_units == (0, 0)


def test_dp_single_job():
    rounded = rounded_of([3], 3, 4, 2)
    value, _ = dp_solve_rounded(rounded)
    assert value == 3  # one big job of 3 units fits below the 4-unit due date


@pytest.mark.parametrize("q", [2, 3])
def test_dp_matches_enumeration(q):
    rng = random.Random(900 + q)
    for _ in range(25):
        d = rng.choice([4, 8, 12, 16]) if q == 2 else rng.choice([9, 18, 27])
        m = rng.randint(1, 3)
        jobs = [rng.randint(1, d - 1) for _ in range(rng.randint(0, 7))]
        rounded = rounded_of(jobs, m, d, q)
        value, sched = dp_solve_rounded(rounded)
        assert value == units_brute_force(rounded)
        assert sched.value_units == value
        # every rounded job is placed exactly once
        assert sum(sched.small_counts) == rounded.small_job_count
        placed = sorted(j for jobs_i in sched.big_assignment for j in jobs_i)
        assert placed == sorted(b.job_index for b in rounded.big_jobs)


def test_dp_table_monotonicity():
    rounded = rounded_of([3, 3, 2, 1], 2, 4, 2)
    table = dp_table(rounded)
    grid = len(table.grid.points)
    assert table.grid.points[0] == 0 and table.grid.points[-1] == rounded.units_per_due_date
    m = table.machine_count
    strides = [grid ** (m - 1 - i) for i in range(m)]
    for j in range(1, len(table.layers)):
        prev, cur = table.layers[j - 1], table.layers[j]
        assert all(c >= p for c, p in zip(cur, prev))  # monotone in the job prefix
    for layer in table.layers:
        for s, value in enumerate(layer):
            coords = [(s // strides[i]) % grid for i in range(m)]
            assert value <= sum(coords)  # never exceeds the combined window
            for i in range(m):
                if coords[i] + 1 < grid:
                    assert layer[s + strides[i]] >= value  # monotone per coordinate


def test_dp_state_budget():
    rounded = RoundedInstance(
        units_per_due_date=400,
        small_job_count=4,
        small_job_size_units=20,
        big_jobs=(),
        machine_count=4,
    )
    with pytest.raises(ResourceLimitError):
        dp_solve_rounded(rounded)


def test_fptas_example():
    inst = Instance(jobs=(3, 3, 2, 1), machine_count=2, due_date=4)
    assert solve_fptas(inst, Delta(2)).early_work_total == 8 == brute_force(inst)[0]


def test_fptas_fast_path_bypass():
    inst = Instance(jobs=(1,) * 9, machine_count=2, due_date=2)
    assert solve_fptas(inst, Delta(2)).early_work_total == 4


def test_fptas_half_optimum_at_fine_accuracy():
    rng = random.Random(5)
    for _ in range(10):
        d = 400
        jobs = [rng.randint(1, d - 1) for _ in range(rng.randint(1, 9))]
        inst = Instance(jobs=tuple(jobs), machine_count=2, due_date=d)
        value = solve_fptas(inst, Delta(20)).early_work_total
        opt, _ = brute_force(inst)
        assert 2 * value >= opt


def test_fptas_deterministic():
    inst = Instance(jobs=(5, 7, 4, 2, 2, 6, 1, 8), machine_count=3, due_date=9)
    assert solve_fptas(inst, Delta(3)) == solve_fptas(inst, Delta(3))
