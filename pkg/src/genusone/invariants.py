"""Classical and normalized invariants of genus one models.

Normalizations relative to the classical invariants:

=======  ==================  ====================
degree   c4                  c6
=======  ==================  ====================
2        2^6 3 i(h)          2^9 3^3 j(h)
3        -2^4 3^4 S          2^3 3^6 T
4        2^10 3 i(q)         2^15 3^3 j(q)
=======  ==================  ====================

where h is the completed-square quartic and q = det(xA + zB).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .aronhold import aronhold_S_polynomial, aronhold_T_polynomial
from .models import (
    BinaryQuarticModel,
    PfaffianModel,
    QuadricPairModel,
    ShortWeierstrass,
    TernaryCubicModel,
    WeierstrassModel,
    complete_square,
    gram_pencil_quartic,
    quartic_coefficients,
)


@dataclass(frozen=True)
class InvariantTriple:
    c4: Fraction
    c6: Fraction
    delta: Fraction

    def __post_init__(self):
        if self.delta * 1728 != self.c4**3 - self.c6**2:
            raise ArithmeticError("delta does not equal (c4^3 - c6^2)/1728")

    @classmethod
    def from_c4_c6(cls, c4, c6):
        return cls(c4, c6, (c4**3 - c6**2) / Fraction(1728))

    def as_tuple(self):
        return (self.c4, self.c6, self.delta)


@dataclass(frozen=True)
class ClassicalPair:
    first: Fraction
    second: Fraction
    kind: str  # "ij" or "ST"

    def as_tuple(self):
        return (self.first, self.second)


def weierstrass_invariants(w: WeierstrassModel):
    """(b2, b4, b6, InvariantTriple) of a long Weierstrass model."""
    a1, a2, a3, a4, a6 = (Fraction(v) for v in (w.a1, w.a2, w.a3, w.a4, w.a6))
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    return b2, b4, b6, InvariantTriple.from_c4_c6(c4, c6)


def quartic_ij(q) -> ClassicalPair:
    """i and j of a x^4 + b x^3 z + c x^2 z^2 + d x z^3 + e z^4.

    ``q`` is a 5-tuple of coefficients or a binary quartic polynomial.
    """
    if hasattr(q, "terms"):
        q = quartic_coefficients(q)
    a, b, c, d, e = (Fraction(v) for v in q)
    i = (12 * a * e - 3 * b * d + c * c) / 12
    j = (72 * a * c * e - 27 * a * d * d - 27 * b * b * e + 9 * b * c * d - 2 * c**3) / 432
    return ClassicalPair(i, j, "ij")


def aronhold_ST(t: TernaryCubicModel) -> ClassicalPair:
    point = [Fraction(v) for v in t.coefficients().values()]
    return ClassicalPair(
        aronhold_S_polynomial().evaluate(point),
        aronhold_T_polynomial().evaluate(point),
        "ST",
    )


@lru_cache(maxsize=None)
def cubic_c4_polynomial():
    """c4 of a ternary cubic as a polynomial in (a, b, c, a2, a3, b1, b3, c1, c2, m)."""
    return aronhold_S_polynomial() * -1296


@lru_cache(maxsize=None)
def cubic_c6_polynomial():
    return aronhold_T_polynomial() * 5832


def invariants_of_model(m) -> InvariantTriple:
    if isinstance(m, WeierstrassModel):
        return weierstrass_invariants(m)[3]
    if isinstance(m, BinaryQuarticModel):
        h = complete_square(m)
        ij = quartic_ij(h.quartic)
        return InvariantTriple.from_c4_c6(192 * ij.first, 13824 * ij.second)
    if isinstance(m, TernaryCubicModel):
        st = aronhold_ST(m)
        return InvariantTriple.from_c4_c6(-1296 * st.first, 5832 * st.second)
    if isinstance(m, QuadricPairModel):
        ij = quartic_ij(gram_pencil_quartic(m))
        return InvariantTriple.from_c4_c6(3072 * ij.first, 884736 * ij.second)
    if isinstance(m, PfaffianModel):
        raise ValueError("degree 5: no invariant formulas in scope")
    raise TypeError(f"not a genus one model: {m!r}")


def short_weierstrass_invariants(w: ShortWeierstrass) -> InvariantTriple:
    """Invariants of y^2 = 4x^3 - g2 x - g3: c4 = 192 g2, c6 = 13824 g3."""
    return InvariantTriple.from_c4_c6(192 * Fraction(w.g2), 13824 * Fraction(w.g3))
