"""Jacobians of genus one models, their covariants, and the scaling relations.

The Jacobian of a degree-n model is returned as y^2 = 4x^3 - g2 x - g3.  Its
invariants relate to the model's by c_k(model) = alpha_n^k c_k(Jacobian) with
alpha_2 = 1, alpha_3 = 1/2, alpha_4 = 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .invariants import (
    InvariantTriple,
    aronhold_ST,
    invariants_of_model,
    quartic_ij,
    short_weierstrass_invariants,
)
from .models import (
    BinaryQuarticModel,
    QuadricPairModel,
    ShortWeierstrass,
    TernaryCubicModel,
    WeierstrassModel,
    binary_quartic,
    complete_square,
    gram_pencil_quartic,
)
from .multipoly import PolyMatrix, SparsePolynomial, det_poly_matrix

ALPHA = {2: Fraction(1), 3: Fraction(1, 2), 4: Fraction(2)}


def alpha(degree: int) -> Fraction:
    try:
        return ALPHA[degree]
    except KeyError:
        raise ValueError(f"no scaling constant for degree {degree}") from None


class ChartError(ValueError):
    pass


def jacobian_of_model(m) -> ShortWeierstrass:
    if isinstance(m, BinaryQuarticModel):
        ij = quartic_ij(complete_square(m).quartic)
        return ShortWeierstrass(ij.first, ij.second)
    if isinstance(m, TernaryCubicModel):
        st = aronhold_ST(m)
        # y^2 = 4x^3 + 108 S x - 27 T
        return ShortWeierstrass(-108 * st.first, 27 * st.second)
    if isinstance(m, QuadricPairModel):
        ij = quartic_ij(gram_pencil_quartic(m))
        return ShortWeierstrass(ij.first, ij.second)
    raise ValueError(f"Jacobian map is defined for degrees 2-4, not {getattr(m, 'degree', m)!r}")


def hessian_covariant(t: TernaryCubicModel) -> SparsePolynomial:
    """(1/216) det of the matrix of second partials."""
    f = t.equation()
    first = [f.partial_derivative(v) for v in f.variables]
    H = PolyMatrix([[fi.partial_derivative(v) for v in f.variables] for fi in first])
    return det_poly_matrix(H) / 216


def quartic_covariants_gh(q):
    """The quartic covariant g and sextic covariant h of a binary quartic.

    ``q`` is a polynomial in (x, z) or a 5-tuple of coefficients.
    """
    if not hasattr(q, "terms"):
        q = binary_quartic(q)
    x, z = q.variables
    qx, qz = q.partial_derivative(x), q.partial_derivative(z)
    qxx, qzz, qxz = qx.partial_derivative(x), qz.partial_derivative(z), qx.partial_derivative(z)
    g = (qxz * qxz - qxx * qzz) / 144
    gx, gz = g.partial_derivative(x), g.partial_derivative(z)
    h = (qx * gz - qz * gx) / 8
    return g, h


def point_map_f2(m: BinaryQuarticModel, P):
    """Image of a point (x0, y0, z0) of the model on its Jacobian y^2 = 4x^3 - ix - j.

    A model with a y-linear term is first completed to y^2 = h(x, z), which
    moves the point to y0 + p(x0, z0)/2.  The point is then rescaled in
    P(1,2,1) to z0 = 1, where the map reads (g/(yz)^2, h/(yz)^3); that is
    equivalent to (g/y^2, h/y^3) at any representative.
    """
    x0, y0, z0 = (Fraction(v) for v in P)
    if any((m.alpha0, m.alpha1, m.alpha2)):
        if m.equation().evaluate([x0, y0, z0]) != 0:
            raise ValueError(f"point {tuple(P)} is not on the model")
        y0 += m.p_poly().evaluate([x0, z0]) / 2
        m = complete_square(m)
    q = m.q_poly()
    if y0 * y0 != q.evaluate([x0, z0]):
        raise ValueError(f"point {tuple(P)} is not on y^2 = {q}")
    if y0 * z0 == 0:
        raise ChartError("point at infinity of the map's chart (y*z = 0)")
    x0, y0, z0 = x0 / z0, y0 / (z0 * z0), Fraction(1)
    g, h = quartic_covariants_gh(q)
    yz = y0 * z0
    return g.evaluate([x0, z0]) / yz**2, h.evaluate([x0, z0]) / yz**3


def weierstrass_transform(w: WeierstrassModel, u, r=0, s=0, t=0) -> WeierstrassModel:
    """Model obtained by x = u^2 x' + r, y = u^3 y' + s u^2 x' + t."""
    u, r, s, t = (Fraction(v) for v in (u, r, s, t))
    if u == 0:
        raise ValueError("u must be nonzero")
    a1, a2, a3, a4, a6 = (Fraction(v) for v in (w.a1, w.a2, w.a3, w.a4, w.a6))
    return WeierstrassModel(
        (a1 + 2 * s) / u,
        (a2 - s * a1 + 3 * r - s * s) / u**2,
        (a3 + r * a1 + 2 * t) / u**3,
        (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4,
        (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6,
    )


@dataclass(frozen=True)
class RelationReport:
    degree: int
    alpha: Fraction
    model: InvariantTriple
    jacobian: InvariantTriple

    @property
    def c4_ok(self):
        return self.model.c4 == self.alpha**4 * self.jacobian.c4

    @property
    def c6_ok(self):
        return self.model.c6 == self.alpha**6 * self.jacobian.c6

    @property
    def delta_ok(self):
        return self.model.delta == self.alpha**12 * self.jacobian.delta

    @property
    def ok(self):
        return self.c4_ok and self.c6_ok and self.delta_ok

    def sides(self):
        """(name, lhs, rhs) for each relation, rhs already scaled by alpha^k."""
        a = self.alpha
        return [
            ("c4", self.model.c4, a**4 * self.jacobian.c4),
            ("c6", self.model.c6, a**6 * self.jacobian.c6),
            ("delta", self.model.delta, a**12 * self.jacobian.delta),
        ]


def check_invariant_relations(m) -> RelationReport:
    W = jacobian_of_model(m)
    return RelationReport(
        m.degree, alpha(m.degree), invariants_of_model(m), short_weierstrass_invariants(W)
    )

