"""Singular points of genus one models over finite fields.

This is deliberately independent of the invariant formulas: singularity is
tested directly from the equations over F_q, q = p^k, so the result can be
compared against the discriminant.

Singularity conditions per degree:

1. affine Weierstrass equation F(x, y) with F = F_x = F_y = 0 (the point at
   infinity is always smooth);
2. F = y^2 + p(x,z) y - q(x,z) on P(1,2,1): F and its partials in the two
   chart variables vanish, on the charts x = 1 and z = 1;
3. the cubic and all three partials vanish;
4. both quadrics and every 2x2 minor of their 2x4 Jacobian matrix vanish.

Small spaces are enumerated point by point.  Over large extension fields,
cubics and quadric pairs first cut the candidates down (line sweep, pencil
kernels) and then apply the same full test to every candidate.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import _kernels
from .exact_arith import p_adic_valuation, require_prime
from .ffield import finite_field
from .invariants import invariants_of_model
from .models import (
    BinaryQuarticModel,
    QuadricPairModel,
    ReductionError,
    TernaryCubicModel,
    WeierstrassModel,
    reduce_mod_p,
)
from .multipoly import PolyMatrix, SparsePolynomial, det_poly_matrix


@dataclass(frozen=True, order=True)
class ProjectivePoint:
    """Normalized point: first nonzero coordinate is 1 after weighted rescaling.

    Coordinates are residues mod p, or element indices of F_{p^k} (base-p
    digits of the polynomial representative) when ``extension > 1``.
    """

    coordinates: tuple
    weights: tuple
    p: int
    extension: int = 1

    def __str__(self):
        return "(" + ":".join(str(c) for c in self.coordinates) + ")"


def _grid(q, dim):
    """All of F_q^dim as a (q**dim, dim) array."""
    return np.indices((q,) * dim, dtype=np.int64).reshape(dim, q**dim).T


def projective_points(q: int, n: int) -> np.ndarray:
    """All points of P^{n-1}(F_q), first nonzero coordinate equal to 1."""
    blocks = []
    for lead in range(n):
        tail = n - 1 - lead
        grid = _grid(q, tail)
        block = np.zeros((grid.shape[0], n), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = grid
        blocks.append(block)
    return np.concatenate(blocks)


def weighted_points_121(q: int) -> np.ndarray:
    """Points of P(1,2,1)(F_q): (1:y:z), (0:y:1) and the vertex (0:1:0)."""
    yz = _grid(q, 2)
    x1 = np.column_stack([np.ones(len(yz), dtype=np.int64), yz])
    y = np.arange(q, dtype=np.int64)
    z1 = np.column_stack([np.zeros(q, dtype=np.int64), y, np.ones(q, dtype=np.int64)])
    return np.concatenate([x1, z1, np.array([[0, 1, 0]], dtype=np.int64)])


def _flatten(polys):
    term_poly, term_coef, term_exps = [], [], []
    for j, f in enumerate(polys):
        for e, c in f.terms.items():
            term_poly.append(j)
            term_coef.append(int(c))
            term_exps.append(e)
    nvars = len(polys[0].variables)
    return (
        np.array(term_poly, dtype=np.int64),
        np.array(term_coef, dtype=np.int64),
        np.array(term_exps, dtype=np.int64).reshape(-1, nvars),
    )


def common_zeros(polys, points, field):
    """Rows of ``points`` where all ``polys`` (over F_p, embedded in ``field``) vanish."""
    if not len(points):
        return points
    tp, tc, te = _flatten(polys)
    mask = _kernels.common_zeros(tp, tc, te, len(polys), points, field.log, field.exp, field.digits, field.p)
    return points[mask]


def _reduced_polys(polys, p, label):
    out = []
    for f in polys:
        for c in f.terms.values():
            if Fraction(c).denominator % p == 0:
                raise ReductionError(label, c, p)
        out.append(f.reduce_mod(p))
    return out


def singular_systems(m, p: int):
    """(polynomials, chart-name) pairs defining the singular locus mod p.

    Charts are ``"affine"`` (points (x, y)), ``"P2"``, ``"P3"``, ``"x=1"``
    and ``"z=1"`` (the two charts of P(1,2,1)).
    """
    require_prime(p)
    if isinstance(m, QuadricPairModel):
        q1, q2 = _reduced_polys(m.quadrics(), p, "quadric coefficient")
        g1 = [q1.partial_derivative(v) for v in q1.variables]
        g2 = [q2.partial_derivative(v) for v in q2.variables]
        minors = [g1[i] * g2[j] - g1[j] * g2[i] for i, j in combinations(range(4), 2)]
        return [([q1, q2] + minors, "P3")]
    r = reduce_mod_p(m, p)
    if isinstance(m, WeierstrassModel):
        F = r.equation()
        return [([F, F.partial_derivative("x"), F.partial_derivative("y")], "affine")]
    if isinstance(m, TernaryCubicModel):
        F = r.equation()
        return [([F] + [F.partial_derivative(v) for v in F.variables], "P2")]
    if isinstance(m, BinaryQuarticModel):
        F = r.equation()
        Fx, Fy, Fz = (F.partial_derivative(v) for v in F.variables)
        return [([F, Fy, Fz], "x=1"), ([F, Fx, Fy], "z=1")]
    raise ValueError(f"singular-point search covers degrees 1-4, not {getattr(m, 'degree', m)!r}")


def _chart_points(chart, q):
    if chart == "affine":
        return _grid(q, 2)
    if chart == "P2":
        return projective_points(q, 3)
    if chart == "P3":
        return projective_points(q, 4)
    pts = weighted_points_121(q)
    if chart == "x=1":
        return pts[pts[:, 0] == 1]
    return pts[(pts[:, 0] == 0) & (pts[:, 2] == 1)]


def singular_points_mod_p(m, p: int, extension: int = 1):
    """Sorted list of singular points of the reduction of ``m`` over F_{p^extension}."""
    field = finite_field(p, extension)
    found = set()
    weights = (1, 2, 1) if isinstance(m, BinaryQuarticModel) else None
    for polys, chart in singular_systems(m, p):
        pts = common_zeros(polys, _chart_points(chart, field.q), field)
        for row in pts.tolist():
            if chart == "affine":
                row = row + [1]
            found.add(tuple(row))
    w = weights or (1,) * (4 if isinstance(m, QuadricPairModel) else 3)
    return sorted(ProjectivePoint(c, w, p, extension) for c in found)


def discriminant_vanishes_mod_p(m, p: int) -> bool:
    delta = invariants_of_model(m).delta
    if Fraction(delta).denominator % p == 0:
        raise ArithmeticError(f"discriminant {delta} is not p-integral for p = {p}")
    return delta == 0 or p_adic_valuation(delta, p) > 0


def ambient_point_count(m, q: int) -> int:
    if isinstance(m, QuadricPairModel):
        return q**3 + q**2 + q + 1
    return q**2 + q + 1


# Direct enumeration limit; larger P^3 searches go through the pencil.
DIRECT_LIMIT = 400_000
MAX_SEARCH_POINTS = 6_000_000


def _hessian_matrix(f, p):
    """Integer matrix M with grad f = M x for a quadric f, entries mod p."""
    n = len(f.variables)
    M = np.zeros((n, n), dtype=np.int64)
    for e, c in f.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            M[i, i] = 2 * int(c) % p
        else:
            M[i, j] = M[j, i] = int(c) % p
    return M


def _normalize_rows(pts, field):
    """Scale each nonzero row so its first nonzero entry is 1; drop zero rows."""
    pts = pts[pts.any(axis=1)]
    lead = pts[np.arange(len(pts)), (pts != 0).argmax(axis=1)]
    return field.mul(field.inv(lead)[:, None], pts)


def _pencil_determinant(M1, M2, p):
    """Coefficients of lam^(n-i) mu^i in det(lam*M1 + mu*M2), reduced mod p."""
    n = M1.shape[0]
    lam, mu = SparsePolynomial.gens(("lam", "mu"))
    M = PolyMatrix([[lam * int(M1[i, j]) + mu * int(M2[i, j]) for j in range(n)] for i in range(n)])
    D = det_poly_matrix(M)
    return np.array([int(D.coefficient((n - i, i))) % p for i in range(n + 1)], dtype=np.int64)


def pencil_singular_points(m: QuadricPairModel, p: int, extension: int, max_points: int = MAX_SEARCH_POINTS):
    """Singular points of a reduced quadric pair over F_{p^k}, via the pencil.

    The gradients of q1, q2 at x are M1 x and M2 x, so they are dependent
    exactly when x lies in the kernel of some lam*M1 + mu*M2.  Running over
    P^1(F_q) and the projective points of each kernel finds every
    F_q-rational singular point without enumerating P^3(F_q).
    """
    field = finite_field(p, extension)
    q = field.q
    (polys, _), = singular_systems(m, p)
    M1, M2 = (_hessian_matrix(f, p) for f in polys[:2])
    detpoly = _pencil_determinant(M1, M2, p)
    bases, dims = _kernels.pencil_kernels(M1, M2, detpoly, field.log, field.exp, field.digits, p)
    candidates = []
    total = 0
    for member in np.flatnonzero(dims):
        d = int(dims[member])
        total += (q**d - 1) // (q - 1)
        if total > max_points:
            raise ArithmeticError(f"pencil search over F_{p}^{extension} exceeds {max_points} points")
        coeffs = projective_points(q, d)
        pts = np.zeros((len(coeffs), 4), dtype=np.int64)
        for i in range(d):
            pts = field.add(pts, field.mul(coeffs[:, i][:, None], bases[member, i][None, :]))
        candidates.append(pts)
    if not candidates:
        return []
    pts = np.unique(_normalize_rows(np.concatenate(candidates), field), axis=0)
    pts = common_zeros(polys, pts, field)
    return sorted(ProjectivePoint(tuple(r), (1, 1, 1, 1), p, extension) for r in pts.tolist())


def _sqrt_vec(field, a):
    """(is_square, root) for an array over F_q with q odd; root of 0 is 0."""
    L = field.log[a]
    ok = (a == 0) | (L % 2 == 0)
    root = np.where(a == 0, 0, field.exp[(L // 2) % (field.q - 1)])
    return ok, root


def cubic_line_singular_points(m: TernaryCubicModel, p: int, extension: int, max_points: int = MAX_SEARCH_POINTS):
    """Singular points of a reduced plane cubic over F_{p^k}, p odd, by line sweep.

    On each line x = c of the chart z = 1, a nonzero partial G restricts to a
    polynomial of degree <= 2 in y, so its roots give at most two candidates
    (or the whole line when G vanishes on it).  Together with the line z = 0
    this covers P^2(F_q) with O(q) candidates, each then checked against the
    full singular system.
    """
    if p == 2:
        raise ValueError("line sweep needs odd characteristic")
    field = finite_field(p, extension)
    q = field.q
    (polys, _), = singular_systems(m, p)
    partials = [G for G in polys[1:] if not G.is_zero()]
    if not partials:
        # F is a cube of a linear form: fall back to plain enumeration
        if q * q + q + 1 > max_points:
            raise ArithmeticError(f"search over F_{p}^{extension} exceeds {max_points} points")
        return singular_points_mod_p(m, p, extension)
    G = partials[0]
    c = np.arange(q, dtype=np.int64)
    cpow = [np.ones(q, dtype=np.int64), c, field.mul(c, c)]
    coef = [np.zeros(q, dtype=np.int64) for _ in range(3)]
    for (i, j, _), g in G.terms.items():
        coef[j] = field.add(coef[j], field.mul(int(g), cpow[i]))
    A, B, C = coef[2], coef[1], coef[0]
    blocks = [np.column_stack([np.ones(q, dtype=np.int64), c, np.zeros(q, dtype=np.int64)]),
              np.array([[0, 1, 0]], dtype=np.int64)]
    # lines where G vanishes identically: every y is a candidate
    whole = np.flatnonzero((A == 0) & (B == 0) & (C == 0))
    if len(whole) * q > max_points:
        raise ArithmeticError(f"search over F_{p}^{extension} exceeds {max_points} points")
    for x in whole:
        blocks.append(np.column_stack([np.full(q, x), c, np.ones(q, dtype=np.int64)]))
    # linear case: B y + C = 0
    lin = (A == 0) & (B != 0)
    if lin.any():
        y = field.mul(field.neg(C[lin]), field.inv(B[lin]))
        blocks.append(np.column_stack([c[lin], y, np.ones(lin.sum(), dtype=np.int64)]))
    # quadratic case: y = (-B +- sqrt(B^2 - 4AC)) / 2A
    quad = A != 0
    if quad.any():
        a, b, cc = A[quad], B[quad], C[quad]
        disc = field.add(field.mul(b, b), field.neg(field.mul(4 % p, field.mul(a, cc))))
        ok, r = _sqrt_vec(field, disc)
        inv2a = field.inv(field.mul(2, a))
        xs = c[quad][ok]
        for sign_r in (r[ok], field.neg(r[ok])):
            y = field.mul(field.add(field.neg(b[ok]), sign_r), inv2a[ok])
            blocks.append(np.column_stack([xs, y, np.ones(len(xs), dtype=np.int64)]))
    pts = np.unique(_normalize_rows(np.concatenate(blocks), field), axis=0)
    pts = common_zeros(polys, pts, field)
    return sorted(ProjectivePoint(tuple(r), (1, 1, 1), p, extension) for r in pts.tolist())


def max_orbit_size(m) -> int:
    """Bound on the number of singular points when the singular locus is finite.

    A degree-n model has at most n singular points (1 for Weierstrass
    cubics), so each Galois orbit of them is defined over F_{p^k}, k <= n.
    An infinite singular locus contains a curve, which has points over
    F_p or F_{p^2} in every case that arises here.
    """
    return max(getattr(m, "degree", 1), 2) if not isinstance(m, WeierstrassModel) else 1


def geometric_singular_witness(m, p: int, max_extension=None, max_points: int = MAX_SEARCH_POINTS):
    """Search F_{p^k}, k = 1..max_extension, for a singular point of the reduction.

    Returns ``(k, points)`` for the first k with singular points, else None.
    """
    if max_extension is None:
        max_extension = max_orbit_size(m)
    for k in range(1, max_extension + 1):
        size = ambient_point_count(m, p**k)
        if size <= DIRECT_LIMIT:
            pts = singular_points_mod_p(m, p, k)
        elif isinstance(m, QuadricPairModel):
            pts = pencil_singular_points(m, p, k, max_points)
        elif isinstance(m, TernaryCubicModel) and p != 2:
            pts = cubic_line_singular_points(m, p, k, max_points)
        elif size <= max_points:
            pts = singular_points_mod_p(m, p, k)
        else:
            raise ArithmeticError(f"search over F_{p}^{k} exceeds {max_points} points")
        if pts:
            return k, pts
    return None


def smoothness_discriminant_consistency(m, p: int, geometric: bool = True) -> bool:
    """True iff [no singular point found] <=> [Delta is a p-unit].

    With ``geometric=False`` only F_p-rational points are searched, which
    misses curves whose singular points are all conjugate over F_p.
    """
    if geometric:
        smooth = geometric_singular_witness(m, p) is None
    else:
        smooth = not singular_points_mod_p(m, p)
    return smooth == (not discriminant_vanishes_mod_p(m, p))
