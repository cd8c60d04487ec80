import random

import pytest

from earlywork import (
    ContractViolationError,
    Delta,
    Instance,
    ResourceLimitError,
    brute_force,
    build_auxiliary,
    build_config_program,
    classify,
    count_configurations,
    enumerate_configurations,
    solve_config_ip,
    solve_eptas,
)
from earlywork.configip import ConfigProgram, assemble_rounded_schedule


def rounded_of(jobs, m, d, q):
    inst = Instance(jobs=tuple(jobs), machine_count=m, due_date=d)
    delta = Delta(q)
    cls = classify(inst, delta)
    return build_auxiliary(inst, cls, delta), delta


def rounded_brute_force(rounded):
    """Optimum over all machine assignments of the rounded jobs, in units."""
    sizes = [rounded.small_job_size_units] * rounded.small_job_count + [
        b.size_units for b in rounded.big_jobs
    ]
    if not sizes:
        return 0
    aux = Instance(
        jobs=tuple(sizes),
        machine_count=rounded.machine_count,
        due_date=rounded.units_per_due_date,
    )
    return brute_force(aux)[0]


# -- enumeration ----------------------------------------------------------

def test_enumeration_coarse():
    configs = enumerate_configurations(Delta(2))
    assert len(configs) == 57 == count_configurations(Delta(2))
    vectors = {c.counts for c in configs}
    assert (6, 0, 0) in vectors
    assert (2, 1, 2) in vectors
    assert (0, 0, 5) not in vectors  # load 15 > 12
    assert configs[0].counts == (0, 0, 0) and configs[0].value_units == 0
    assert [c.counts for c in configs] == sorted(c.counts for c in configs)


def test_enumeration_invariants():
    for q in (2, 3):
        delta = Delta(q)
        configs = enumerate_configurations(delta)
        assert len(configs) <= (3 * q + 1) ** (delta.class_count + 1)
        for c in configs:
            assert c.load_units <= 3 * q * q
            assert sum(c.counts) <= 3 * q
            assert c.value_units == min(c.load_units, q * q)


def test_count_matches_enumeration():
    assert count_configurations(Delta(3)) == len(enumerate_configurations(Delta(3)))


# -- the integer program --------------------------------------------------

def test_ip_example():
    rounded, delta = rounded_of([3, 3, 2, 1], 2, 4, 2)
    program = build_config_program(rounded, delta)
    assert program.capacities == (0, 1, 2)
    solution = solve_config_ip(program)
    assert solution.objective_units == 7
    used = {c.counts: x for c, x in solution.counts.items()}
    assert used == {(0, 0, 1): 1, (0, 1, 1): 1}


def test_ip_no_jobs():
    program = ConfigProgram(
        configurations=enumerate_configurations(Delta(2)),
        capacities=(0, 0, 0),
        machine_count=3,
    )
    solution = solve_config_ip(program)
    assert solution.objective_units == 0
    assert {c.counts: x for c, x in solution.counts.items()} == {(0, 0, 0): 3}


def test_ip_nonbinding_capacity():
    # plenty of small blocks: every machine saturates at q*q value units
    q = 2
    program = ConfigProgram(
        configurations=enumerate_configurations(Delta(q)),
        capacities=(100, 0, 0),
        machine_count=3,
    )
    solution = solve_config_ip(program)
    assert solution.objective_units == 3 * q * q


@pytest.mark.parametrize("q", [2, 3])
def test_ip_matches_rounded_brute_force(q):
    rng = random.Random(400 + q)
    for _ in range(25):
        d = rng.choice([4, 8, 9, 12, 18]) if q == 3 else rng.choice([4, 8, 12, 16])
        m = rng.randint(1, 3)
        n = rng.randint(0, 7)
        jobs = [rng.randint(1, d - 1) for _ in range(n)]
        rounded, delta = rounded_of(jobs, m, d, q)
        program = build_config_program(rounded, delta)
        solution = solve_config_ip(program)
        assert solution.objective_units == rounded_brute_force(rounded)


def test_bnb_trace_is_monotone():
    rng = random.Random(77)
    checked = 0
    for _ in range(30):
        jobs = [rng.randint(1, 8) for _ in range(rng.randint(1, 7))]
        rounded, delta = rounded_of(jobs, rng.randint(1, 3), 9, 3)
        program = build_config_program(rounded, delta)
        solution = solve_config_ip(program, collect_stats=True)
        stats = solution.stats
        assert list(stats.incumbent_trace) == sorted(stats.incumbent_trace)
        assert list(stats.bound_trace) == sorted(stats.bound_trace, reverse=True)
        assert stats.final_bound == solution.objective_units  # zero final gap
        checked += stats.nodes_explored
    assert checked > 0


def test_ip_is_deterministic():
    rounded, delta = rounded_of([5, 7, 4, 2, 2, 6], 3, 9, 3)
    program = build_config_program(rounded, delta)
    first = solve_config_ip(program)
    second = solve_config_ip(program)
    assert first.counts == second.counts
    assert first.objective_units == second.objective_units


# -- assembling a rounded schedule ----------------------------------------

def test_assemble_fills_slots_in_index_order():
    rounded, delta = rounded_of([3, 3, 2, 1], 2, 4, 2)
    solution = solve_config_ip(build_config_program(rounded, delta))
    rsched = assemble_rounded_schedule(solution, rounded)
    assert rsched.small_counts == (0, 0)
    # configurations land on machines in enumeration order, class slots are
    # filled with concrete jobs in ascending original index
    assert rsched.big_assignment == ((0,), (1, 2))
    assert rsched.machine_load_units == (3, 5)
    assert rsched.value_units == 7


def test_assemble_rejects_overuse():
    rounded, delta = rounded_of([3, 3, 2, 1], 2, 4, 2)
    program = build_config_program(rounded, delta)
    solution = solve_config_ip(program)
    starved = type(rounded)(
        units_per_due_date=rounded.units_per_due_date,
        small_job_count=rounded.small_job_count,
        small_job_size_units=rounded.small_job_size_units,
        big_jobs=rounded.big_jobs[:1],
        machine_count=rounded.machine_count,
    )
    with pytest.raises(ContractViolationError):
        assemble_rounded_schedule(solution, starved)


# -- end-to-end scheme -----------------------------------------------------

def test_eptas_example():
    inst = Instance(jobs=(3, 3, 2, 1), machine_count=2, due_date=4)
    sched = solve_eptas(inst, Delta(2))
    assert sched.early_work_total == 8 == brute_force(inst)[0]


def test_eptas_fast_path_bypass():
    inst = Instance(jobs=(1,) * 9, machine_count=2, due_date=2)
    sched = solve_eptas(inst, Delta(2))
    assert sched.early_work_total == 4 == brute_force(inst)[0]


def test_eptas_additive_band():
    inst = Instance(jobs=(7, 6, 5, 4, 3), machine_count=2, due_date=10)
    sched = solve_eptas(inst, Delta(2))
    opt, _ = brute_force(inst)
    q, m, d = 2, 2, 10
    assert q * sched.early_work_total >= q * opt - 5 * m * d
    assert sched.early_work_total <= opt


def test_eptas_budget_error():
    inst = Instance(jobs=(3, 3, 2, 1), machine_count=2, due_date=400)
    with pytest.raises(ResourceLimitError):
        solve_eptas(inst, Delta(20))


def test_eptas_deterministic():
    inst = Instance(jobs=(5, 7, 4, 2, 2, 6, 1, 8), machine_count=3, due_date=9)
    a = solve_eptas(inst, Delta(3))
    b = solve_eptas(inst, Delta(3))
    assert a == b
