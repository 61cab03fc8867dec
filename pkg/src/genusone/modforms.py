"""Truncated q-expansions: Eisenstein series, the cusp form D, Hasse congruences.

q is a formal variable; a :class:`QSeries` holds the coefficients of
q^0 .. q^(N-1) as exact rationals.
"""
from __future__ import annotations

from fractions import Fraction

from .exact_arith import bernoulli, divisor_sigma, format_rational, require_prime


class QSeries:
    __slots__ = ("coefficients",)

    def __init__(self, coefficients):
        coeffs = tuple(Fraction(c) for c in coefficients)
        if not coeffs:
            raise ValueError("precision must be at least 1")
        self.coefficients = coeffs

    @property
    def precision(self) -> int:
        return len(self.coefficients)

    @classmethod
    def constant(cls, c, precision):
        return cls([c] + [0] * (precision - 1))

    def truncate(self, precision):
        if precision > self.precision:
            raise ValueError("cannot raise precision")
        return QSeries(self.coefficients[:precision])

    def __getitem__(self, n):
        return self.coefficients[n]

    def __len__(self):
        return self.precision

    def _pair(self, other):
        if not isinstance(other, QSeries):
            other = QSeries.constant(other, self.precision)
        n = min(self.precision, other.precision)
        return self.coefficients[:n], other.coefficients[:n]

    def __add__(self, other):
        a, b = self._pair(other)
        return QSeries(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return QSeries(-c for c in self.coefficients)

    def __sub__(self, other):
        a, b = self._pair(other)
        return QSeries(x - y for x, y in zip(a, b))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return QSeries(c * Fraction(other) for c in self.coefficients)
        a, b = self._pair(other)
        n = len(a)
        out = [Fraction(0)] * n
        for i, x in enumerate(a):
            if x:
                for j in range(n - i):
                    out[i + j] += x * b[j]
        return QSeries(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return QSeries(c / Fraction(scalar) for c in self.coefficients)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        out = QSeries.constant(1, self.precision)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, QSeries) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def reduce_mod(self, p: int):
        """Residues mod p; raises if some denominator is divisible by p."""
        require_prime(p)
        out = []
        for n, c in enumerate(self.coefficients):
            if c.denominator % p == 0:
                raise ArithmeticError(f"coefficient of q^{n} is {c}, not a {p}-unit")
            out.append(c.numerator * pow(c.denominator, -1, p) % p)
        return out

    def __repr__(self):
        return f"QSeries({format_qseries(self)})"

    def __str__(self):
        return format_qseries(self)


def _term(c, n):
    mono = "" if n == 0 else ("q" if n == 1 else f"q^{n}")
    if n == 0:
        return format_rational(c)
    if c == 1:
        return mono
    return f"{format_rational(c)}*{mono}"


def format_qseries(s, residues=None) -> str:
    """Render as ``1 + 240*q + 2160*q^2 + O(q^3)``.

    ``residues`` optionally replaces the coefficients (e.g. values mod p).
    """
    coeffs = s.coefficients if residues is None else residues
    parts = []
    for n, c in enumerate(coeffs):
        if c == 0:
            continue
        c = Fraction(c)
        if not parts:
            parts.append(_term(c, n) if c > 0 else "-" + _term(-c, n))
        elif c > 0:
            parts.append("+ " + _term(c, n))
        else:
            parts.append("- " + _term(-c, n))
    if not parts:
        parts.append("0")
    parts.append(f"+ O(q^{len(coeffs)})")
    return " ".join(parts)


def eisenstein_series(weight: int, precision: int) -> QSeries:
    """E_{2k} = 1 - (4k/B_{2k}) sum sigma_{2k-1}(n) q^n, for weight 2k >= 4."""
    if isinstance(weight, bool) or not isinstance(weight, int) or weight < 4 or weight % 2:
        raise ValueError(f"weight must be an even integer >= 4, got {weight!r}")
    if precision < 1:
        raise ValueError("precision must be at least 1")
    factor = -Fraction(2 * weight) / bernoulli(weight)
    return QSeries([1] + [factor * divisor_sigma(n, weight - 1) for n in range(1, precision)])


def discriminant_series(precision: int) -> QSeries:
    """D = (E4^3 - E6^2)/1728, checked to be integral."""
    e4 = eisenstein_series(4, precision)
    e6 = eisenstein_series(6, precision)
    d = (e4**3 - e6**2) / 1728
    if not d.is_integral():
        raise ArithmeticError("(E4^3 - E6^2)/1728 has a non-integral coefficient")
    return d


def eta_product(precision: int) -> QSeries:
    """q * prod_{n>=1} (1 - q^n)^24, truncated."""
    if precision < 1:
        raise ValueError("precision must be at least 1")
    # integer convolution; only factors with n < precision matter
    prod = [0] * precision
    prod[0] = 1
    for n in range(1, precision):
        for _ in range(24):
            for i in range(precision - 1, n - 1, -1):
                prod[i] -= prod[i - n]
    return QSeries([0] + prod[: precision - 1])


def hasse_congruence_check(p: int, precision: int) -> bool:
    """True iff E_{p-1} is congruent to 1 mod p up to q^(precision-1)."""
    require_prime(p)
    if p <= 3:
        raise ValueError(f"the Hasse congruence is stated for p > 3, got {p}")
    residues = eisenstein_series(p - 1, precision).reduce_mod(p)
    return residues[0] == 1 and not any(residues[1:])
