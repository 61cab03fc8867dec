"""Seeded random integer models shared by the property and acceptance tests."""
import random
from fractions import Fraction

from genusone.models import (
    P3_VARS,
    BinaryQuarticModel,
    QuadricPairModel,
    TernaryCubicModel,
    WeierstrassModel,
)
from genusone.multipoly import SparsePolynomial

QUADRIC_MONOMIALS = [
    (2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2), (1, 1, 0, 0),
    (1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1), (0, 0, 1, 1),
]


def coeffs(rng, n, bound=3):
    return [Fraction(rng.randint(-bound, bound)) for _ in range(n)]


def random_quadric(rng, bound=3):
    return SparsePolynomial(P3_VARS, dict(zip(QUADRIC_MONOMIALS, coeffs(rng, 10, bound))))


def random_model(rng, degree, bound=3):
    """Integer model of the given degree (degree 4: integer quadric polynomials)."""
    if degree == 1:
        return WeierstrassModel(*coeffs(rng, 5, bound))
    if degree == 2:
        return BinaryQuarticModel(*coeffs(rng, 8, bound))
    if degree == 3:
        return TernaryCubicModel(*coeffs(rng, 10, bound))
    if degree == 4:
        return QuadricPairModel.from_quadrics(random_quadric(rng, bound), random_quadric(rng, bound))
    raise ValueError(degree)


def random_models(seed, degree, count, bound=3):
    rng = random.Random(seed)
    return [random_model(rng, degree, bound) for _ in range(count)]


def random_invertible(rng, n, bound=3):
    from genusone.multipoly import scalar_det

    while True:
        M = [[Fraction(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        if scalar_det(M) != 0:
            return M
