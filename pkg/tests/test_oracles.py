import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from earlywork import (
    Instance,
    OracleBudget,
    ResourceLimitError,
    brute_force,
    exact_dp,
    evaluate,
)

tiny_instances = st.builds(
    lambda jobs, m, d: Instance(jobs=tuple(jobs), machine_count=m, due_date=d),
    st.lists(st.integers(1, 12), max_size=6),
    st.integers(1, 3),
    st.integers(1, 10),
)


def reference_optimum(inst):
    """Independent itertools enumeration, value and lex-smallest argmax."""
    best = -1
    best_assign = None
    for assign in itertools.product(range(inst.machine_count), repeat=inst.job_count):
        loads = [0] * inst.machine_count
        for j, i in enumerate(assign):
            loads[i] += inst.jobs[j]
        value = sum(min(c, inst.due_date) for c in loads)
        if value > best:
            best = value
            best_assign = assign
    return best, best_assign


def test_brute_force_examples():
    assert brute_force(Instance(jobs=(3, 3, 2, 1), machine_count=2, due_date=4))[0] == 8
    assert brute_force(Instance(jobs=(7, 6, 5, 4, 3), machine_count=2, due_date=10))[0] == 20
    inst = Instance(jobs=(4, 9, 2), machine_count=1, due_date=7)
    assert brute_force(inst)[0] == min(inst.total_work(), 7)


def test_exact_dp_examples():
    value, sched = exact_dp(Instance(jobs=(3, 3, 2), machine_count=2, due_date=4))
    assert value == 7
    assert sorted(sched.machine_loads) == [3, 5]
    assert exact_dp(Instance(jobs=(), machine_count=2, due_date=5))[0] == 0
    assert exact_dp(Instance(jobs=(6,), machine_count=3, due_date=7))[0] == 6


@given(tiny_instances)
def test_oracles_agree_with_reference(inst):
    ref_value, ref_assign = reference_optimum(inst)
    bf_value, bf_sched = brute_force(inst)
    dp_value, dp_sched = exact_dp(inst)
    assert bf_value == dp_value == ref_value
    assert bf_sched.assignment == tuple(ref_assign)  # lex-smallest maximizer
    assert bf_sched.early_work_total == ref_value
    assert dp_sched.early_work_total == ref_value  # witness reproduces the value
    assert evaluate(inst, dp_sched.assignment) == dp_sched


def test_lex_smallest_on_symmetric_instance():
    inst = Instance(jobs=(1, 1), machine_count=2, due_date=1)
    _, sched = brute_force(inst)
    assert sched.assignment == (0, 1)


def test_budgets_are_enforced():
    big = Instance(jobs=(1,) * 30, machine_count=3, due_date=5)
    with pytest.raises(ResourceLimitError):
        brute_force(big, OracleBudget(max_assignments=10**6))
    wide = Instance(jobs=(5, 5), machine_count=3, due_date=10**4)
    with pytest.raises(ResourceLimitError):
        exact_dp(wide, OracleBudget(max_states=10**6))


def test_budget_validation():
    with pytest.raises(ValueError):
        OracleBudget(max_assignments=0)
