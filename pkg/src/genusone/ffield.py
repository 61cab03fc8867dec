"""Finite fields F_q, q = p^k, as O(q) lookup tables for the enumeration kernels.

Element ``i`` in ``range(q)`` is the polynomial whose base-p digits are its
coefficients (least significant first) modulo a fixed monic irreducible of
degree k.  Residues 0..p-1 are therefore the prime subfield.  Products go
through discrete logarithms to a primitive element, sums digit by digit.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .exact_arith import require_prime


def _polymulmod(a, b, modpoly, p):
    k = len(modpoly) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # reduce by the monic modulus
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for t in range(k + 1):
                prod[d - k + t] = (prod[d - k + t] - c * modpoly[t]) % p
    return (prod + [0] * k)[:k]


def _polymod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _is_irreducible(f, p):
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            g = list(low) + [1]
            if not _polymod(f, g, p):
                return False
    return True


@lru_cache(maxsize=None)
def irreducible_polynomial(p: int, k: int) -> tuple:
    """Lexicographically first monic irreducible of degree k over F_p (low-to-high)."""
    require_prime(p)
    if k == 1:
        return (0, 1)
    for low in product(range(p), repeat=k):
        f = list(low) + [1]
        if f[0] != 0 and _is_irreducible(f, p):
            return tuple(f)
    raise ArithmeticError(f"no irreducible of degree {k} over F_{p}")


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    def __init__(self, p: int, k: int = 1):
        require_prime(p)
        if k < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.k = k
        self.q = q = p**k
        self.modpoly = irreducible_polynomial(p, k)
        self.digits = np.array(
            [[(i // p**t) % p for t in range(k)] for i in range(q)], dtype=np.int64
        )
        self._scale = p ** np.arange(k, dtype=np.int64)
        self.exp, self.log = self._discrete_logs()

    def _to_int(self, coeffs):
        return sum(c * self.p**t for t, c in enumerate(coeffs))

    def _discrete_logs(self):
        q, n = self.q, self.q - 1
        factors = _prime_factors(n)
        for g in range(1, q):
            if all(self.power(g, n // f) != 1 for f in factors):
                break
        else:  # pragma: no cover
            raise ArithmeticError("no primitive element found")
        gd = self.digits[g].tolist()
        seq = [1]
        cur = [1] + [0] * (self.k - 1)
        for _ in range(n - 1):
            cur = _polymulmod(cur, gd, self.modpoly, self.p)
            seq.append(self._to_int(cur))
        exp = np.array(seq, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(n)
        return exp, log

    def power(self, a: int, e: int) -> int:
        """a**e by square-and-multiply on polynomial representatives."""
        result = [1] + [0] * (self.k - 1)
        base = self.digits[a].tolist()
        while e:
            if e & 1:
                result = _polymulmod(result, base, self.modpoly, self.p)
            base = _polymulmod(base, base, self.modpoly, self.p)
            e >>= 1
        return self._to_int(result)

    # vectorized element arithmetic
    def add(self, a, b):
        return ((self.digits[a] + self.digits[b]) % self.p) @ self._scale

    def neg(self, a):
        return ((-self.digits[a]) % self.p) @ self._scale

    def mul(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        out = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in F_q")
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def __repr__(self):
        return f"FiniteField({self.p}, {self.k})"


@lru_cache(maxsize=16)
def finite_field(p: int, k: int = 1) -> FiniteField:
    return FiniteField(p, k)
