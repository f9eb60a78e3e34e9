import random

from hypothesis import HealthCheck, settings

from gaugetorsion import MultiPoly, Prime

settings.register_profile(
    "suite",
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
    deadline=None,
)
settings.load_profile("suite")

PRIMES_235 = (Prime(2), Prime(3), Prime(5))


def random_multipoly(
    rng: random.Random,
    n: int,
    p: Prime,
    max_exp: int = 3,
    max_terms: int = 4,
) -> MultiPoly:
    """Seeded random sparse polynomial, for deterministic bulk sweeps."""
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = tuple(rng.randint(0, max_exp) for _ in range(n))
        terms[mono] = rng.randint(1, p.value - 1) if p.value > 2 else 1
    return MultiPoly(n, p, terms)
