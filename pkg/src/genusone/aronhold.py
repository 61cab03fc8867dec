"""The invariants S and T of a ternary cubic, derived from scratch.

An SL_3 invariant of degree d in the ten cubic coefficients is a polynomial
whose monomials all have torus weight (d, d, d) and which is killed by the
raising operators induced by ``x d/dy`` and ``y d/dz``.  Solving that linear
system over Q gives a one-dimensional space in degree 4 (spanned by S) and a
one-dimensional one in degree 6 (spanned by T; S^2 only appears in degree
8).  The scalings are then fixed by:

* S: the coefficient of m^4 in c4 = -1296 S is +1;
* T: T(x^3 + y^3 + z^3) = 1.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from .multipoly import SparsePolynomial

CUBIC_LABELS = ("a", "b", "c", "a2", "a3", "b1", "b3", "c1", "c2", "m")
CUBIC_MONOMIALS = {
    "a": (3, 0, 0),
    "b": (0, 3, 0),
    "c": (0, 0, 3),
    "a2": (2, 1, 0),
    "a3": (2, 0, 1),
    "b1": (1, 2, 0),
    "b3": (0, 2, 1),
    "c1": (1, 0, 2),
    "c2": (0, 1, 2),
    "m": (1, 1, 1),
}
_INDEX = {CUBIC_MONOMIALS[l]: i for i, l in enumerate(CUBIC_LABELS)}


def _weight(mono):
    w = [0, 0, 0]
    for i, k in enumerate(mono):
        if k:
            e = CUBIC_MONOMIALS[CUBIC_LABELS[i]]
            for t in range(3):
                w[t] += k * e[t]
    return tuple(w)


def balanced_monomials(degree):
    """Exponent vectors of coefficient monomials with weight (d, d, d)."""
    out = []
    for combo in combinations_with_replacement(range(10), degree):
        mono = [0] * 10
        for i in combo:
            mono[i] += 1
        if _weight(mono) == (degree,) * 3:
            out.append(tuple(mono))
    return out


def _raising_map(src, dst):
    """Coefficient-index pairs (nu, mu, factor) for the derivation x_dst d/dx_src.

    Applying it to the cubic sends the coefficient of monomial nu, times its
    exponent of x_src, to the monomial mu = nu * x_dst / x_src.
    """
    pairs = []
    for lab in CUBIC_LABELS:
        e = list(CUBIC_MONOMIALS[lab])
        k = e[src]
        if k == 0:
            continue
        e[src] -= 1
        e[dst] += 1
        pairs.append((CUBIC_LABELS.index(lab), _INDEX[tuple(e)], k))
    return pairs


def _apply(pairs, mono):
    """Induced derivation on a coefficient monomial; returns {mono: int}."""
    out = {}
    for nu, mu, k in pairs:
        if mono[mu] == 0:
            continue
        new = list(mono)
        c = k * new[mu]
        new[mu] -= 1
        new[nu] += 1
        key = tuple(new)
        out[key] = out.get(key, 0) + c
    return out


def nullspace(rows, ncols):
    """Basis of the rational nullspace of sparse rows given as {col: value} dicts."""
    reduced = {}  # pivot column -> row normalized to 1 at the pivot
    for row in rows:
        r = {c: Fraction(v) for c, v in row.items() if v}
        # clear every existing pivot column; reduced rows are zero at other pivots
        for col in [c for c in r if c in reduced]:
            f = r.pop(col)
            for c, v in reduced[col].items():
                if c == col:
                    continue
                x = r.get(c, 0) - f * v
                if x:
                    r[c] = x
                else:
                    r.pop(c, None)
        if not r:
            continue
        col = min(r)
        inv = 1 / r[col]
        r = {c: v * inv for c, v in r.items()}
        for other in reduced.values():
            f = other.get(col)
            if f:
                for c, v in r.items():
                    x = other.get(c, 0) - f * v
                    if x:
                        other[c] = x
                    else:
                        other.pop(c, None)
        reduced[col] = r
    basis = []
    for fc in range(ncols):
        if fc in reduced:
            continue
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for pc, r in reduced.items():
            v[pc] = -r.get(fc, 0)
        basis.append(v)
    return basis


@lru_cache(maxsize=None)
def invariant_basis(degree):
    """Basis of SL_3 invariants of the given degree, as polynomials in the coefficients."""
    monos = balanced_monomials(degree)
    ops = [_raising_map(1, 0), _raising_map(2, 1)]  # x d/dy and y d/dz
    rows = {}
    for j, mono in enumerate(monos):
        for o, pairs in enumerate(ops):
            for img, c in _apply(pairs, mono).items():
                rows.setdefault((o, img), {})[j] = c
    basis = nullspace(list(rows.values()), len(monos))
    return tuple(
        SparsePolynomial(CUBIC_LABELS, {monos[j]: c for j, c in enumerate(v) if c != 0})
        for v in basis
    )


def _cubic_point(**coeffs):
    return [Fraction(coeffs.get(l, 0)) for l in CUBIC_LABELS]


FERMAT = _cubic_point(a=1, b=1, c=1)

_M = CUBIC_LABELS.index("m")


@lru_cache(maxsize=None)
def aronhold_S_polynomial() -> SparsePolynomial:
    (v,) = invariant_basis(4)
    m4 = [0] * 10
    m4[_M] = 4
    lead = v.coefficient(m4)
    # c4 = -1296 S must carry +m^4
    return v * (Fraction(-1, 1296) / lead)


@lru_cache(maxsize=None)
def aronhold_T_polynomial() -> SparsePolynomial:
    (v,) = invariant_basis(6)
    return v / v.evaluate(FERMAT)
