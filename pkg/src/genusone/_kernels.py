"""Hot loops of the singular-point search over F_q, q = p^k.

Two interchangeable backends share one signature.  The numba one is used
unless ``GENUSONE_DISABLE_NUMBA=1`` is set or numba cannot be imported; the
numpy one vectorizes over points instead.

Field elements are integers 0..q-1 (base-p digits of a polynomial
representative).  Multiplication goes through discrete logs (``log``,
``exp`` of length q), addition through the ``digits`` table (q x k), so
every table is O(q) and stays in cache.

Polynomials are flattened into term arrays: ``term_poly[t]`` is the
polynomial a term belongs to (terms grouped by polynomial),
``term_coef[t]`` its field element and ``term_exps[t]`` its exponents.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("GENUSONE_DISABLE_NUMBA", "") not in ("1", "true", "yes")
BACKEND = "numba" if USE_NUMBA else "numpy"


def _jit(fn):
    return numba.njit(cache=True)(fn) if HAVE_NUMBA else fn


@_jit
def _fmul(a, b, log, exp):
    if a == 0 or b == 0:
        return 0
    return exp[(log[a] + log[b]) % exp.shape[0]]


@_jit
def _finv(a, log, exp):
    n = exp.shape[0]
    return exp[(n - log[a]) % n]


@_jit
def _faxpy(a, b, s, digits, p):
    """a + s*b for an integer s, digit by digit."""
    out = 0
    scale = 1
    for j in range(digits.shape[1]):
        out += ((digits[a, j] + s * digits[b, j]) % p) * scale
        scale *= p
    return out


def common_zeros_numpy(term_poly, term_coef, term_exps, npolys, points, log, exp, digits, p):
    """Boolean mask of points where every polynomial vanishes."""
    npts = points.shape[0]
    n = exp.shape[0]
    k = digits.shape[1]
    mask = np.ones(npts, dtype=bool)
    for j in range(npolys):
        acc = np.zeros((npts, k), dtype=np.int64)
        for t in np.flatnonzero(term_poly == j):
            c = term_coef[t]
            if c == 0:
                continue
            L = np.full(npts, log[c], dtype=np.int64)
            zero = np.zeros(npts, dtype=bool)
            for i in range(term_exps.shape[1]):
                e = term_exps[t, i]
                if e:
                    x = points[:, i]
                    zero |= x == 0
                    L += e * log[x]
            v = np.where(zero, 0, exp[L % n])
            acc += digits[v]
        mask &= ~(acc % p).any(axis=1)
    return mask


def _common_zeros_loop(term_poly, term_coef, term_exps, npolys, points, log, exp, digits, p):
    npts = points.shape[0]
    nvars = term_exps.shape[1]
    nterms = term_coef.shape[0]
    n = exp.shape[0]
    k = digits.shape[1]
    out = np.zeros(npts, dtype=np.bool_)
    acc = np.zeros(k, dtype=np.int64)
    for r in range(npts):
        ok = True
        for j in range(k):
            acc[j] = 0
        for t in range(nterms):
            c = term_coef[t]
            if c != 0:
                L = log[c]
                zero = False
                for i in range(nvars):
                    e = term_exps[t, i]
                    if e:
                        x = points[r, i]
                        if x == 0:
                            zero = True
                            break
                        L += e * log[x]
                if not zero:
                    v = exp[L % n]
                    for j in range(k):
                        acc[j] += digits[v, j]
            # terms are grouped by polynomial: reject as soon as one is nonzero
            if t + 1 == nterms or term_poly[t + 1] != term_poly[t]:
                for j in range(k):
                    if acc[j] % p != 0:
                        ok = False
                    acc[j] = 0
                if not ok:
                    break
        out[r] = ok
    return out


def _pencil_kernels_loop(M1, M2, detpoly, log, exp, digits, p):
    """Kernel bases of lam*M1 + mu*M2 for every (lam:mu) in P^1(F_q).

    Member m < q is (1:m), member q is (0:1).  Row m of ``bases`` holds
    ``dims[m]`` basis vectors of the kernel.  ``detpoly[i]`` is the
    coefficient of lam^(n-i) mu^i in det(lam*M1 + mu*M2) mod p; members
    where it does not vanish are skipped without elimination.
    """
    q = log.shape[0]
    n = M1.shape[0]
    bases = np.zeros((q + 1, n, n), dtype=np.int64)
    dims = np.zeros(q + 1, dtype=np.int64)
    A = np.zeros((n, n), dtype=np.int64)
    pivcol = np.zeros(n, dtype=np.int64)
    for m in range(q + 1):
        lam = 1 if m < q else 0
        mu = m if m < q else 1
        if lam == 1:
            d = detpoly[n]
            for i in range(n - 1, -1, -1):
                d = _faxpy(detpoly[i], _fmul(d, mu, log, exp), 1, digits, p)
        else:
            d = detpoly[n]
        if d != 0:
            continue
        for i in range(n):
            for j in range(n):
                A[i, j] = _faxpy(_fmul(lam, M1[i, j], log, exp), _fmul(mu, M2[i, j], log, exp), 1, digits, p)
        rank = 0
        for c in range(n):
            piv = -1
            for r in range(rank, n):
                if A[r, c] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            for j in range(n):
                tmp = A[piv, j]
                A[piv, j] = A[rank, j]
                A[rank, j] = tmp
            s = _finv(A[rank, c], log, exp)
            for j in range(n):
                A[rank, j] = _fmul(s, A[rank, j], log, exp)
            for r in range(n):
                if r != rank and A[r, c] != 0:
                    f = A[r, c]
                    for j in range(n):
                        A[r, j] = _faxpy(A[r, j], _fmul(f, A[rank, j], log, exp), p - 1, digits, p)
            pivcol[rank] = c
            rank += 1
        d = 0
        for c in range(n):
            free = True
            for r in range(rank):
                if pivcol[r] == c:
                    free = False
            if not free:
                continue
            bases[m, d, c] = 1
            for r in range(rank):
                bases[m, d, pivcol[r]] = _faxpy(0, A[r, c], p - 1, digits, p)
            d += 1
        dims[m] = d
    return bases, dims


if HAVE_NUMBA:
    common_zeros_numba = numba.njit(cache=True)(_common_zeros_loop)
    pencil_kernels_numba = numba.njit(cache=True)(_pencil_kernels_loop)
else:  # pragma: no cover
    common_zeros_numba = pencil_kernels_numba = None


def common_zeros(*args):
    if USE_NUMBA:
        return common_zeros_numba(*args)
    return common_zeros_numpy(*args)


def pencil_kernels(*args):
    # no vectorized variant: the fallback runs the same loop uncompiled
    if USE_NUMBA:
        return pencil_kernels_numba(*args)
    return _pencil_kernels_loop(*args)
