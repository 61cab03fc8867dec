import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from genusone.invariants import (
    InvariantTriple,
    aronhold_ST,
    cubic_c4_polynomial,
    cubic_c6_polynomial,
    invariants_of_model,
    quartic_ij,
    short_weierstrass_invariants,
    weierstrass_invariants,
)
from genusone.models import (
    BinaryQuarticModel,
    ShortWeierstrass,
    TernaryCubicModel,
    WeierstrassModel,
    binary_quartic,
    homogenize_weierstrass,
    load_model,
    quartic_coefficients,
)
from genusone.multipoly import scalar_det, substitute_linear
from randmodels import random_invertible, random_models

F = Fraction
FERMAT = TernaryCubicModel(a=1, b=1, c=1)


@pytest.mark.parametrize(
    "coeffs, expected",
    [
        ((0, 0, 0, 0, 0), (0, 0, 0)),
        ((0, 0, 0, -1, 0), (48, 0, 64)),
        ((0, 0, 0, 0, 1), (0, -864, -432)),
    ],
)
def test_weierstrass_invariants(coeffs, expected):
    *_, inv = weierstrass_invariants(WeierstrassModel(*map(F, coeffs)))
    assert inv.as_tuple() == expected


def test_weierstrass_b_invariants():
    b2, b4, b6, _ = weierstrass_invariants(WeierstrassModel(F(1), F(2), F(3), F(4), F(5)))
    assert (b2, b4, b6) == (1 + 8, 8 + 3, 9 + 20)


@pytest.mark.parametrize(
    "quartic, ij",
    [
        ((1, 1, 1, 0, F(1, 4)), (F(1, 3), F(37, 1728))),
        ((1, 0, 0, 0, 1), (1, 0)),
        ((0, 0, 0, 0, 0), (0, 0)),
    ],
)
def test_quartic_ij(quartic, ij):
    pair = quartic_ij(quartic)
    assert pair.as_tuple() == ij
    assert pair.kind == "ij"
    # same answer from the polynomial form
    assert quartic_ij(binary_quartic([F(v) for v in quartic])).as_tuple() == ij


@pytest.mark.parametrize(
    "cubic, st_",
    [
        (FERMAT, (0, 1)),
        (TernaryCubicModel(a=F(-1), b3=F(1), c2=F(1)), (0, F(-1, 27))),
        (TernaryCubicModel(a=F(-1), b3=F(1), c1=F(-1)), (F(1, 27), 0)),
        (TernaryCubicModel(), (0, 0)),
    ],
)
def test_aronhold_ST(cubic, st_):
    pair = aronhold_ST(cubic)
    assert pair.as_tuple() == st_
    assert pair.kind == "ST"


def test_invariants_degree2_anchor(data_dir):
    inv = invariants_of_model(load_model(data_dir / "model2.json"))
    assert inv.as_tuple() == (64, 296, 101)


def test_invariants_fermat():
    assert invariants_of_model(FERMAT).as_tuple() == (0, 5832, -(3**9))


def test_invariants_pair1(data_dir):
    assert invariants_of_model(load_model(data_dir / "pair1.json")).as_tuple() == (1, -161, -15)


def test_invariants_pair2(data_dir):
    assert invariants_of_model(load_model(data_dir / "pair2.json")).delta == 2**24


def test_degree5_rejected():
    from genusone.models import P4_VARS, PfaffianModel
    from genusone.multipoly import SparsePolynomial

    z = SparsePolynomial.zero(P4_VARS)
    with pytest.raises(ValueError, match="no invariant formulas in scope"):
        invariants_of_model(PfaffianModel([[z] * 5 for _ in range(5)]))


def test_non_model_rejected():
    with pytest.raises(TypeError):
        invariants_of_model("y^2 = x^3 + 1")


@pytest.mark.parametrize(
    "g2, g3, delta",
    [
        (F(1, 3), F(37, 1728), 101),
        (0, 27, -(2**12) * 3**9),
        (0, 0, 0),
    ],
)
def test_short_weierstrass_invariants(g2, g3, delta):
    inv = short_weierstrass_invariants(ShortWeierstrass(F(g2), F(g3)))
    assert inv.delta == delta
    assert inv.c4 == 192 * g2 and inv.c6 == 13824 * g3


def test_short_weierstrass_delta_formula():
    rng = random.Random(11)
    for _ in range(100):
        g2, g3 = F(rng.randint(-50, 50), rng.randint(1, 9)), F(rng.randint(-50, 50), rng.randint(1, 9))
        inv = short_weierstrass_invariants(ShortWeierstrass(g2, g3))
        assert inv.delta == 2**12 * (g2**3 - 27 * g3**2)


def test_triple_rejects_inconsistent_delta():
    with pytest.raises(ArithmeticError):
        InvariantTriple(F(1), F(1), F(1))


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.integers(1, 1000))
@settings(max_examples=100, deadline=None)
def test_triple_identity(c4, c6, den):
    t = InvariantTriple.from_c4_c6(F(c4, den), F(c6, den))
    assert 1728 * t.delta == t.c4**3 - t.c6**2


@pytest.mark.parametrize("degree", [1, 2, 3, 4])
def test_integrality(degree):
    for m in random_models(100 + degree, degree, 500):
        inv = invariants_of_model(m)
        assert all(v.denominator == 1 for v in inv.as_tuple()), m


def _quartic_sub(coeffs, M):
    return quartic_coefficients(substitute_linear(binary_quartic(coeffs), M))


def test_ij_covariance():
    rng = random.Random(21)
    for _ in range(100):
        q = [F(rng.randint(-5, 5)) for _ in range(5)]
        M = random_invertible(rng, 2, 4)
        d = scalar_det(M)
        i0, j0 = quartic_ij(q).as_tuple()
        i1, j1 = quartic_ij(_quartic_sub(q, M)).as_tuple()
        assert i1 == d**4 * i0
        assert j1 == d**6 * j0


def test_ST_covariance():
    rng = random.Random(22)
    for m in random_models(23, 3, 100):
        g = random_invertible(rng, 3, 2)
        d = scalar_det(g)
        moved = TernaryCubicModel.from_polynomial(substitute_linear(m.equation(), g))
        s0, t0 = aronhold_ST(m).as_tuple()
        s1, t1 = aronhold_ST(moved).as_tuple()
        assert s1 == d**4 * s0
        assert t1 == d**6 * t0


def test_completing_square_invariance():
    # y -> y + (linear change) moves p but keeps c4, c6
    rng = random.Random(24)
    for _ in range(50):
        a = [F(rng.randint(-4, 4)) for _ in range(5)]
        base = BinaryQuarticModel(F(0), F(0), F(0), *a)
        p = [F(rng.randint(-4, 4)) for _ in range(3)]
        # y^2 + p y = q - p^2/4 ... same completed square
        shifted = BinaryQuarticModel(
            *p,
            a[0] - p[0] ** 2 / 4,
            a[1] - p[0] * p[1] / 2,
            a[2] - (p[1] ** 2 + 2 * p[0] * p[2]) / 4,
            a[3] - p[1] * p[2] / 2,
            a[4] - p[2] ** 2 / 4,
        )
        assert invariants_of_model(shifted) == invariants_of_model(base)


def test_weierstrass_restriction():
    for w in random_models(25, 1, 200, bound=6):
        assert invariants_of_model(homogenize_weierstrass(w)) == weierstrass_invariants(w)[3]


C4_DISPLAY = {
    ("a", "b", "c", "m"): -216,
    ("a", "b", "c1", "c2"): 144,
    ("a", "c", "b1", "b3"): 144,
    ("a3", "b3", "m", "m"): -8,
    ("b1", "b1", "c1", "c1"): 16,
    ("b1", "c1", "m", "m"): -8,
    ("m", "m", "m", "m"): 1,
}
C6_DISPLAY = {
    ("a", "a", "b", "b", "c", "c"): 5832,
    ("a", "a", "b", "c", "b3", "c2"): -3888,
    ("a", "a", "b", "c2", "c2", "c2"): 864,
    ("b1", "b1", "b1", "c1", "c1", "c1"): 64,
    ("b1", "b1", "c1", "c1", "m", "m"): -48,
    ("b1", "c1", "m", "m", "m", "m"): 12,
    ("m",) * 6: -1,
}


def _exponents(labels, variables):
    return tuple(labels.count(v) for v in variables)


@pytest.mark.parametrize("poly, display", [(cubic_c4_polynomial, C4_DISPLAY), (cubic_c6_polynomial, C6_DISPLAY)])
def test_cubic_display_monomials(poly, display):
    f = poly()
    for labels, coeff in display.items():
        assert f.coefficient(_exponents(labels, f.variables)) == coeff, labels


def test_cubic_invariant_polynomials_shape():
    c4, c6 = cubic_c4_polynomial(), cubic_c6_polynomial()
    assert c4.is_homogeneous(4) and c6.is_homogeneous(6)
    assert all(c.denominator == 1 for c in c4.terms.values())
    assert all(c.denominator == 1 for c in c6.terms.values())
    # the classical term counts of S and T
    assert (len(c4), len(c6)) == (25, 103)
