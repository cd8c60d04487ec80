import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
    deadline=None,
)
settings.load_profile("ci")


@pytest.fixture
def rng():
    return random.Random(20240817)


def random_instance(rng, max_n=6, max_m=3, max_d=12, a1=False):
    """A small random instance; with a1=True every size stays below d."""
    from earlywork import Instance

    n = rng.randint(0, max_n)
    m = rng.randint(1, max_m)
    d = rng.randint(2, max_d)
    hi = d - 1 if a1 else max_d + 3
    jobs = tuple(rng.randint(1, max(1, hi)) for _ in range(n))
    return Instance(jobs=jobs, machine_count=m, due_date=d)
