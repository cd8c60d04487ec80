"""Numpy implementations of the two hot kernels.

Selected by :mod:`earlywork._backend` when the compiled extension is not
available (or is disabled via ``EARLYWORK_BACKEND=python``).  Both backends
return bit-identical results; parity is enforced by the test suite and the
gap is measured by ``benchmarks/compare_backends.py``.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def best_assignment(sizes, machine_count: int, due_date: int) -> tuple[int, list[int]]:
    """Maximize total early work over every machine assignment of ``sizes``.

    Enumerates all ``machine_count ** len(sizes)`` assignments and returns
    ``(best_value, assignment)`` where the assignment is the
    lexicographically smallest maximizer (job 0 most significant).
    """
    n = len(sizes)
    m = machine_count
    if m < 1:
        raise ValueError("best_assignment needs at least one machine")
    if n == 0:
        return 0, []
    p = np.asarray(sizes, dtype=np.int64)
    # Row r encodes the assignment with digits of r in base m, job 0 most
    # significant, so row order is lexicographic order.
    total = m**n
    codes = np.arange(total, dtype=np.int64)
    values = np.zeros(total, dtype=np.int64)
    for i in range(m):
        load = np.zeros(total, dtype=np.int64)
        for j in range(n):
            digit = (codes // (m ** (n - 1 - j))) % m
            load += np.where(digit == i, p[j], 0)
        values += np.minimum(load, due_date)
    best = int(np.argmax(values))  # first occurrence == lex smallest
    assignment = [int((best // (m ** (n - 1 - j))) % m) for j in range(n)]
    return int(values[best]), assignment


def dp_fill(sizes, machine_count: int, capacity: int, keep_tables: bool = False):
    """Tabulate the early-work recurrence over the integer grid.

    States are vectors ``(E_1, ..., E_m)`` with each coordinate in
    ``0..capacity``; placing a job of size ``p`` on machine ``i`` earns
    ``min(p, E_i)`` and shrinks ``E_i`` to ``max(0, E_i - p)``.  Returns
    ``(value, choices, tables)`` where ``value`` is the optimum at the full
    grid corner, ``choices[j]`` is a per-state bytearray naming the machine
    that receives job ``j`` (lowest index on ties), and ``tables`` (only if
    requested) holds every layer of the value function as a flat list.
    """
    m = machine_count
    if m < 1:
        raise ValueError("dp_fill needs at least one machine")
    grid = capacity + 1
    shape = (grid,) * m
    prev = np.zeros(shape, dtype=np.int64)
    coords = np.arange(grid, dtype=np.int64)
    choices: list[bytearray] = []
    tables: list[list[int]] | None = [prev.ravel().tolist()] if keep_tables else None
    for p in sizes:
        src = np.maximum(coords - p, 0)
        gain = np.minimum(coords, p)
        stacked = np.empty((m,) + shape, dtype=np.int64)
        for i in range(m):
            axis_shape = [1] * m
            axis_shape[i] = grid
            stacked[i] = np.take(prev, src, axis=i) + gain.reshape(axis_shape)
        pick = np.argmax(stacked, axis=0)  # first max == lowest machine index
        prev = np.take_along_axis(stacked, pick[np.newaxis], axis=0)[0]
        choices.append(bytearray(pick.astype(np.uint8).ravel().tobytes()))
        if tables is not None:
            tables.append(prev.ravel().tolist())
    return int(prev.ravel()[-1]), choices, tables
