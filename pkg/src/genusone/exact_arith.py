"""Exact scalars: rationals, prime-field residues, Bernoulli numbers, valuations.

Rationals are :class:`fractions.Fraction`, which already keeps lowest terms
with a positive denominator.  This module adds the text format used in model
files and CLI output, plus the few number-theoretic helpers the rest of the
package needs.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

Rational = Fraction

INFINITY = math.inf
"""Valuation of zero."""

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class RationalFormatError(ValueError):
    pass


def parse_rational(text) -> Fraction:
    """Parse ``"n"`` or ``"n/d"`` (optional leading minus) into a Fraction.

    Integers are accepted as-is so that JSON numbers work too.
    """
    if isinstance(text, bool):
        raise RationalFormatError(f"malformed rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise RationalFormatError(f"malformed rational: {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise RationalFormatError(f"malformed rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise RationalFormatError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(r) -> str:
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def is_prime(p: int) -> bool:
    """Deterministic trial division."""
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def require_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p!r} is not prime")
    return p


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple:
    B = [Fraction(1)]
    for m in range(1, n + 1):
        # sum_{k=0}^{m} C(m+1, k) B_k = 0
        s = sum(math.comb(m + 1, k) * B[k] for k in range(m))
        B.append(-s / (m + 1))
    return tuple(B)


def bernoulli(n: int) -> Fraction:
    """B_n with the convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("bernoulli index must be non-negative")
    return _bernoulli_table(n)[n]


def _int_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_adic_valuation(r, p: int):
    """v_p(r) for a rational r; :data:`INFINITY` when r is zero."""
    require_prime(p)
    r = Fraction(r)
    if r == 0:
        return INFINITY
    return _int_valuation(abs(r.numerator), p) - _int_valuation(r.denominator, p)


def divisor_sigma(n: int, k: int) -> int:
    """Sum of d**k over the positive divisors d of n."""
    if n < 1:
        raise ValueError("divisor_sigma needs n >= 1")
    # factor n by trial division, then multiply the geometric sums
    total = 1
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            total *= sum(d ** (k * i) for i in range(e + 1))
        d += 1
    if m > 1:
        total *= 1 + m**k
    return total


class PrimeFieldElement:
    """Residue class modulo a prime.

    Mixed arithmetic with ints (and p-unit Fractions) is allowed; combining
    residues with different moduli raises ``ValueError``.
    """

    __slots__ = ("residue", "modulus")

    def __init__(self, value, modulus: int):
        # primality is only checked where trial division is cheap
        if modulus <= 10**6:
            require_prime(modulus)
        elif modulus % 2 == 0:
            raise ValueError(f"{modulus!r} is not prime")
        self.modulus = modulus
        self.residue = _reduce(value, modulus)

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.modulus != self.modulus:
                raise ValueError(
                    f"field mismatch: F_{self.modulus} vs F_{other.modulus}"
                )
            return other.residue
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return _reduce(other, self.modulus)
        return NotImplemented

    def _new(self, residue):
        out = object.__new__(PrimeFieldElement)
        out.modulus = self.modulus
        out.residue = residue % self.modulus
        return out

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.residue + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.residue - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(o - self.residue)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.residue * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.residue)

    def inverse(self):
        if self.residue == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.modulus}")
        return self._new(pow(self.residue, -1, self.modulus))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * self._new(o).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.inverse() * o

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._new(pow(self.residue, e, self.modulus))

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (ValueError, ZeroDivisionError):
            return False
        if o is NotImplemented:
            return NotImplemented
        return self.residue == o

    def __hash__(self):
        return hash((self.residue, self.modulus))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"PrimeFieldElement({self.residue}, {self.modulus})"

    def __str__(self):
        return str(self.residue)


def _reduce(value, p: int) -> int:
    if isinstance(value, PrimeFieldElement):
        if value.modulus != p:
            raise ValueError(f"field mismatch: F_{value.modulus} vs F_{p}")
        return value.residue
    if isinstance(value, Fraction):
        if value.denominator % p == 0:
            raise ZeroDivisionError(
                f"denominator of {format_rational(value)} is divisible by {p}"
            )
        return value.numerator * pow(value.denominator, -1, p) % p
    return int(value) % p


def GF(p: int):
    """Return a constructor for elements of F_p."""
    require_prime(p)
    return lambda v: PrimeFieldElement(v, p)
