"""Seeded instance generation and the default benchmark suite.

Two job-size distributions: ``uniform`` draws sizes from ``[1, d-1]``;
``boundary`` concentrates sizes next to the size-class edges of a chosen
accuracy ``1/q`` (the floor computations are most error-prone exactly
there).  A spec plus seed determines the instance bit-for-bit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import ValidationError
from .instance import Instance
from .rounding import Delta

__all__ = ["GeneratorSpec", "generate_instance", "default_suite"]

DISTRIBUTIONS = ("uniform", "boundary")


@dataclass(frozen=True)
class GeneratorSpec:
    n: int
    m: int
    d: int
    distribution: str
    seed: int
    q: int | None = None  # class-edge parameter; required for "boundary"

    def __post_init__(self) -> None:
        if self.n < 0 or self.m < 1 or self.d < 2:
            raise ValidationError("generator needs n >= 0, m >= 1, d >= 2")
        if self.distribution not in DISTRIBUTIONS:
            raise ValidationError(f"unknown distribution {self.distribution!r}")
        if self.distribution == "boundary" and (self.q is None or self.q < 2):
            raise ValidationError("boundary distribution needs q >= 2")


def generate_instance(spec: GeneratorSpec) -> Instance:
    rng = random.Random(spec.seed)
    if spec.distribution == "uniform":
        jobs = [rng.randint(1, spec.d - 1) for _ in range(spec.n)]
    else:
        jobs = [_boundary_size(rng, spec.d, spec.q) for _ in range(spec.n)]
    return Instance(jobs=tuple(jobs), machine_count=spec.m, due_date=spec.d)


def _boundary_size(rng: random.Random, d: int, q: int) -> int:
    """A size at distance at most one from a class edge (or a plain small
    job, one time in four)."""
    delta = Delta(q=q)
    if rng.random() < 0.25:
        return rng.randint(1, max(1, d // q - 1)) if d > q else 1
    k = rng.randint(0, delta.class_count - 1)
    edge = (d * (q + k)) // (q * q)  # floor of delta*d + k*delta^2*d
    jitter = rng.choice((-1, 0, 1))
    return min(max(edge + jitter, 1), d - 1)


# Default suite: 400 seeded instances across m in {2,3}, n in 4..9, both
# distributions, due dates that are multiples of 4 or 9 (so the q=2 and q=3
# grids land on integer original times, the most edge-prone situation).
_D_BY_FOUR = (4, 8, 12, 16, 20, 24, 28, 32, 36, 40)
_D_BY_NINE = (9, 18, 27, 36)


def default_suite() -> tuple[GeneratorSpec, ...]:
    specs = []
    for seed in range(1, 101):
        for m in (2, 3):
            for distribution in DISTRIBUTIONS:
                if seed % 2 == 1:
                    d = _D_BY_FOUR[(seed + m) % len(_D_BY_FOUR)]
                    q = 2
                else:
                    d = _D_BY_NINE[(seed + m) % len(_D_BY_NINE)]
                    q = 3
                n = 4 + (seed + m + (0 if distribution == "uniform" else 3)) % 6
                specs.append(
                    GeneratorSpec(
                        n=n,
                        m=m,
                        d=d,
                        distribution=distribution,
                        seed=seed * 1000 + m,
                        q=q if distribution == "boundary" else None,
                    )
                )
    return tuple(specs)
