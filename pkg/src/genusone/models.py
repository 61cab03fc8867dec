"""Genus one models of degrees 1 to 5 and the operations that reshape them.

Coefficients are ``Fraction`` over Q or ``PrimeFieldElement`` after
:func:`reduce_mod_p`.  Model files are JSON; see :func:`parse_model`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Union

from .exact_arith import (
    PrimeFieldElement,
    RationalFormatError,
    format_rational,
    parse_rational,
    require_prime,
)
from .multipoly import (
    PolyMatrix,
    PolynomialParseError,
    SparsePolynomial,
    det_poly_matrix,
    format_polynomial,
    parse_polynomial,
)

XZ = ("x", "z")
XYZ = ("x", "y", "z")
P3_VARS = ("x0", "x1", "x2", "x3")
P4_VARS = ("x0", "x1", "x2", "x3", "x4")


class ModelError(ValueError):
    """Bad model input.  ``kind`` names the failure, ``location`` the offending element."""

    def __init__(self, kind, message, location=None):
        self.kind = kind
        self.location = location
        where = f" at {location}" if location else ""
        super().__init__(f"{kind}{where}: {message}")


class ReductionError(ValueError):
    def __init__(self, coefficient, value, p):
        self.coefficient = coefficient
        self.value = value
        self.p = p
        super().__init__(
            f"coefficient {coefficient} = {format_rational(value)} does not reduce mod {p}"
        )


def _modulus_of(values):
    for v in values:
        if isinstance(v, PrimeFieldElement):
            return v.modulus
    return None


def _field_const(c, modulus):
    return Fraction(c) if modulus is None else PrimeFieldElement(c, modulus)


@dataclass(frozen=True)
class WeierstrassModel:
    a1: object = Fraction(0)
    a2: object = Fraction(0)
    a3: object = Fraction(0)
    a4: object = Fraction(0)
    a6: object = Fraction(0)

    degree: ClassVar[int] = 1
    KEYS: ClassVar[tuple] = ("a1", "a2", "a3", "a4", "a6")

    def coefficients(self):
        return {k: getattr(self, k) for k in self.KEYS}

    @property
    def modulus(self):
        return _modulus_of(self.coefficients().values())

    def equation(self):
        """y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6 in the affine chart (x, y)."""
        x, y = SparsePolynomial.gens(("x", "y"), self.modulus)
        return y**2 + x * y * self.a1 + y * self.a3 - x**3 - x**2 * self.a2 - x * self.a4 - self.a6


@dataclass(frozen=True)
class BinaryQuarticModel:
    """y^2 + p(x,z) y = q(x,z) with p = alpha0 x^2 + alpha1 xz + alpha2 z^2."""

    alpha0: object = Fraction(0)
    alpha1: object = Fraction(0)
    alpha2: object = Fraction(0)
    a: object = Fraction(0)
    b: object = Fraction(0)
    c: object = Fraction(0)
    d: object = Fraction(0)
    e: object = Fraction(0)

    degree: ClassVar[int] = 2
    KEYS: ClassVar[tuple] = ("alpha0", "alpha1", "alpha2", "a", "b", "c", "d", "e")

    def coefficients(self):
        return {k: getattr(self, k) for k in self.KEYS}

    @property
    def modulus(self):
        return _modulus_of(self.coefficients().values())

    @property
    def quartic(self):
        return (self.a, self.b, self.c, self.d, self.e)

    def p_poly(self, variables=XZ):
        x, z = SparsePolynomial.gens(variables, self.modulus)
        return x**2 * self.alpha0 + x * z * self.alpha1 + z**2 * self.alpha2

    def q_poly(self, variables=XZ):
        return binary_quartic(self.quartic, variables, self.modulus)

    def equation(self):
        """y^2 + p(x,z) y - q(x,z) in weighted variables (x, y, z)."""
        m = self.modulus
        x, y, z = SparsePolynomial.gens(XYZ, m)
        p = x**2 * self.alpha0 + x * z * self.alpha1 + z**2 * self.alpha2
        q = binary_quartic(self.quartic, XYZ[::2], m).substitute([x, z])
        return y**2 + p * y - q


@dataclass(frozen=True)
class TernaryCubicModel:
    a: object = Fraction(0)
    b: object = Fraction(0)
    c: object = Fraction(0)
    a2: object = Fraction(0)
    a3: object = Fraction(0)
    b1: object = Fraction(0)
    b3: object = Fraction(0)
    c1: object = Fraction(0)
    c2: object = Fraction(0)
    m: object = Fraction(0)

    degree: ClassVar[int] = 3
    KEYS: ClassVar[tuple] = ("a", "b", "c", "a2", "a3", "b1", "b3", "c1", "c2", "m")
    MONOMIALS: ClassVar[dict] = {
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

    def coefficients(self):
        return {k: getattr(self, k) for k in self.KEYS}

    @property
    def modulus(self):
        return _modulus_of(self.coefficients().values())

    def equation(self):
        return SparsePolynomial(
            XYZ, {self.MONOMIALS[k]: v for k, v in self.coefficients().items()}, self.modulus
        )

    @classmethod
    def from_polynomial(cls, f: SparsePolynomial):
        if len(f.variables) != 3 or not f.is_homogeneous(3):
            raise ModelError("not-a-cubic", f"{f} is not a ternary cubic form")
        inv = {e: k for k, e in cls.MONOMIALS.items()}
        return cls(**{inv[e]: c for e, c in f.terms.items()})


@dataclass(frozen=True)
class QuadricPairModel:
    """Gram matrices A, B with q1 = x A x^T, q2 = x B x^T (off-diagonals halved)."""

    A: tuple
    B: tuple

    degree: ClassVar[int] = 4

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(tuple(r) for r in self.A))
        object.__setattr__(self, "B", tuple(tuple(r) for r in self.B))
        for name in ("A", "B"):
            M = getattr(self, name)
            if len(M) != 4 or any(len(r) != 4 for r in M):
                raise ModelError("coefficient-count", "Gram matrix must be 4x4", name)
            for i in range(4):
                for j in range(i + 1, 4):
                    if M[i][j] != M[j][i]:
                        raise ModelError(
                            "non-symmetric",
                            f"entries [{i}][{j}] and [{j}][{i}] differ",
                            f"{'q1' if name == 'A' else 'q2'}[{i}][{j}]",
                        )

    def coefficients(self):
        out = {}
        for name, M in (("q1", self.A), ("q2", self.B)):
            for i in range(4):
                for j in range(4):
                    out[f"{name}[{i}][{j}]"] = M[i][j]
        return out

    @property
    def modulus(self):
        return _modulus_of(self.coefficients().values())

    def quadrics(self):
        """(q1, q2) as polynomials in x0..x3; integral whenever the quadrics are."""
        return gram_to_quadric(self.A, self.modulus), gram_to_quadric(self.B, self.modulus)

    def equations(self):
        return list(self.quadrics())

    @classmethod
    def from_quadrics(cls, q1, q2):
        if isinstance(q1, str):
            q1 = parse_polynomial(q1, P3_VARS)
        if isinstance(q2, str):
            q2 = parse_polynomial(q2, P3_VARS)
        return cls(quadric_to_gram(q1), quadric_to_gram(q2))


@dataclass(frozen=True)
class PfaffianModel:
    """5x5 alternating matrix of linear forms in x0..x4."""

    matrix: tuple

    degree: ClassVar[int] = 5

    def __post_init__(self):
        M = tuple(tuple(r) for r in self.matrix)
        object.__setattr__(self, "matrix", M)
        if len(M) != 5 or any(len(r) != 5 for r in M):
            raise ModelError("coefficient-count", "matrix must be 5x5", "matrix")
        for i in range(5):
            if not M[i][i].is_zero():
                raise ModelError("non-alternating", "diagonal entry is nonzero", f"matrix[{i}][{i}]")
            for j in range(i + 1, 5):
                if M[i][j] != -M[j][i]:
                    raise ModelError(
                        "non-alternating",
                        f"entry [{j}][{i}] is not minus entry [{i}][{j}]",
                        f"matrix[{j}][{i}]",
                    )
        for i in range(5):
            for j in range(5):
                if not M[i][j].is_homogeneous(1):
                    raise ModelError("non-linear", f"{M[i][j]} is not a linear form", f"matrix[{i}][{j}]")

    @property
    def modulus(self):
        return self.matrix[0][0].modulus

    def coefficients(self):
        return {
            f"matrix[{i}][{j}]": self.matrix[i][j] for i in range(5) for j in range(5)
        }


@dataclass(frozen=True)
class ShortWeierstrass:
    """y^2 = 4x^3 - g2 x - g3."""

    g2: object
    g3: object


GenusOneModel = Union[
    WeierstrassModel, BinaryQuarticModel, TernaryCubicModel, QuadricPairModel, PfaffianModel
]
MODEL_CLASSES = {
    1: WeierstrassModel,
    2: BinaryQuarticModel,
    3: TernaryCubicModel,
    4: QuadricPairModel,
    5: PfaffianModel,
}


# -- polynomial helpers -------------------------------------------------------

def binary_quartic(coeffs, variables=XZ, modulus=None) -> SparsePolynomial:
    a, b, c, d, e = coeffs
    return SparsePolynomial(
        variables, {(4, 0): a, (3, 1): b, (2, 2): c, (1, 3): d, (0, 4): e}, modulus
    )


def quartic_coefficients(f: SparsePolynomial):
    """(a, b, c, d, e) of a binary quartic form."""
    if len(f.variables) != 2 or not f.is_homogeneous(4):
        raise ValueError(f"{f} is not a binary quartic form")
    return tuple(f.coefficient((4 - k, k)) for k in range(5))


def gram_to_quadric(M, modulus=None) -> SparsePolynomial:
    terms = {}
    for i in range(4):
        for j in range(4):
            e = [0] * 4
            e[i] += 1
            e[j] += 1
            e = tuple(e)
            terms[e] = terms.get(e, 0) + M[i][j]
    return SparsePolynomial(P3_VARS, terms, modulus)


def quadric_to_gram(q: SparsePolynomial):
    if q.variables != P3_VARS or not q.is_homogeneous(2):
        raise ModelError("not-a-quadric", f"{q} is not a quadric in {P3_VARS}")
    M = [[Fraction(0)] * 4 for _ in range(4)]
    for e, c in q.terms.items():
        idx = [i for i in range(4) for _ in range(e[i])]
        i, j = idx
        if i == j:
            M[i][i] = c
        else:
            M[i][j] = M[j][i] = c / 2
    return tuple(tuple(r) for r in M)


# -- operations -----------------------------------------------------------------

def complete_square(m: BinaryQuarticModel) -> BinaryQuarticModel:
    """Return y^2 = h(x, z) with h = p^2/4 + q."""
    if m.modulus == 2:
        raise ValueError("cannot complete the square in characteristic 2")
    a0, a1, a2 = m.alpha0, m.alpha1, m.alpha2
    four = _field_const(4, m.modulus)
    zero = _field_const(0, m.modulus)
    # p^2 = a0^2 x^4 + 2 a0 a1 x^3 z + (a1^2 + 2 a0 a2) x^2 z^2 + 2 a1 a2 x z^3 + a2^2 z^4
    return BinaryQuarticModel(
        zero,
        zero,
        zero,
        m.a + a0 * a0 / four,
        m.b + 2 * a0 * a1 / four,
        m.c + (a1 * a1 + 2 * a0 * a2) / four,
        m.d + 2 * a1 * a2 / four,
        m.e + a2 * a2 / four,
    )


def gram_pencil_quartic(m: QuadricPairModel) -> SparsePolynomial:
    """det(xA + zB) as a binary quartic in (x, z)."""
    mod = m.modulus
    x, z = SparsePolynomial.gens(XZ, mod)
    M = PolyMatrix([[x * m.A[i][j] + z * m.B[i][j] for j in range(4)] for i in range(4)])
    return det_poly_matrix(M)


def pfaffian4(entries, idx):
    """Pfaffian of the 4x4 alternating submatrix on the index tuple ``idx``."""
    i, j, k, l = idx
    return (
        entries[i][j] * entries[k][l]
        - entries[i][k] * entries[j][l]
        + entries[i][l] * entries[j][k]
    )


def pfaffian_quadrics(m: PfaffianModel):
    """q_i = (-1)^i Pf(M with row and column i deleted), i = 0..4."""
    M = m.matrix
    out = []
    for i in range(5):
        idx = tuple(k for k in range(5) if k != i)
        pf = pfaffian4(M, idx)
        out.append(pf if i % 2 == 0 else -pf)
    return out


def homogenize_weierstrass(w: WeierstrassModel) -> TernaryCubicModel:
    """y^2 z + a1 xyz + a3 yz^2 - x^3 - a2 x^2 z - a4 xz^2 - a6 z^3."""
    one = _field_const(1, w.modulus)
    zero = _field_const(0, w.modulus)
    return TernaryCubicModel(
        a=-one,
        b=zero,
        c=-w.a6,
        a2=zero,
        a3=-w.a2,
        b1=zero,
        b3=one,
        c1=-w.a4,
        c2=w.a3,
        m=w.a1,
    )


def map_model(m, fn):
    """Apply ``fn`` to every scalar coefficient of a model (not degree 5)."""
    if isinstance(m, QuadricPairModel):
        return QuadricPairModel(
            [[fn(x) for x in r] for r in m.A], [[fn(x) for x in r] for r in m.B]
        )
    if isinstance(m, PfaffianModel):
        raise TypeError("map_model does not handle degree-5 models")
    return type(m)(**{k: fn(v) for k, v in m.coefficients().items()})


def reduce_mod_p(m, p: int):
    """Coefficientwise reduction to F_p; every denominator must be a p-unit."""
    require_prime(p)
    if isinstance(m, PfaffianModel):
        rows = []
        for i, r in enumerate(m.matrix):
            row = []
            for j, f in enumerate(r):
                for c in f.terms.values():
                    if Fraction(c).denominator % p == 0:
                        raise ReductionError(f"matrix[{i}][{j}]", c, p)
                row.append(f.reduce_mod(p))
            rows.append(row)
        return PfaffianModel(rows)
    for name, v in m.coefficients().items():
        if isinstance(v, PrimeFieldElement):
            raise ValueError(f"model is already over F_{v.modulus}")
        if Fraction(v).denominator % p == 0:
            raise ReductionError(name, v, p)
    return map_model(m, lambda v: PrimeFieldElement(v, p))


# -- file format ----------------------------------------------------------------

def _scalar_out(v):
    if isinstance(v, PrimeFieldElement):
        return str(v.residue)
    return format_rational(v)


def _parse_scalar(v, location):
    try:
        return parse_rational(v)
    except RationalFormatError as exc:
        raise ModelError("malformed-rational", str(exc), location) from None


def model_to_dict(m) -> dict:
    if isinstance(m, QuadricPairModel):
        coeffs = {
            "q1": [[_scalar_out(x) for x in r] for r in m.A],
            "q2": [[_scalar_out(x) for x in r] for r in m.B],
        }
    elif isinstance(m, PfaffianModel):
        coeffs = {"matrix": [[format_polynomial(f) for f in r] for r in m.matrix]}
    else:
        coeffs = {k: _scalar_out(v) for k, v in m.coefficients().items()}
    return {"degree": m.degree, "coefficients": coeffs}


def serialize_model(m) -> str:
    return json.dumps(model_to_dict(m), indent=2, ensure_ascii=False) + "\n"


def _parse_matrix(raw, name, size, parse_entry):
    if not isinstance(raw, list) or len(raw) != size:
        raise ModelError("coefficient-count", f"expected {size} rows", name)
    out = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != size:
            raise ModelError("coefficient-count", f"expected {size} entries", f"{name}[{i}]")
        out.append([parse_entry(v, f"{name}[{i}][{j}]") for j, v in enumerate(row)])
    return out


def _parse_linear_form(v, location):
    try:
        f = parse_polynomial(v, P4_VARS)
    except PolynomialParseError as exc:
        raise ModelError("malformed-linear-form", str(exc), location) from None
    return f


def model_from_dict(obj):
    if not isinstance(obj, dict):
        raise ModelError("invalid-structure", "top level must be a JSON object")
    degree = obj.get("degree")
    if isinstance(degree, bool) or degree not in MODEL_CLASSES:
        raise ModelError("bad-degree", f"degree must be 1..5, got {degree!r}", "degree")
    coeffs = obj.get("coefficients")
    if not isinstance(coeffs, dict):
        raise ModelError("invalid-structure", "coefficients must be an object", "coefficients")
    cls = MODEL_CLASSES[degree]
    if degree == 4:
        if set(coeffs) != {"q1", "q2"}:
            raise ModelError("coefficient-count", "expected keys q1 and q2", "coefficients")
        A = _parse_matrix(coeffs["q1"], "q1", 4, _parse_scalar)
        B = _parse_matrix(coeffs["q2"], "q2", 4, _parse_scalar)
        return QuadricPairModel(A, B)
    if degree == 5:
        if set(coeffs) != {"matrix"}:
            raise ModelError("coefficient-count", "expected key matrix", "coefficients")
        M = _parse_matrix(coeffs["matrix"], "matrix", 5, _parse_linear_form)
        return PfaffianModel(M)
    keys = cls.KEYS
    missing = [k for k in keys if k not in coeffs]
    extra = [k for k in coeffs if k not in keys]
    if missing or extra:
        raise ModelError(
            "coefficient-count",
            f"degree {degree} needs {len(keys)} coefficients {list(keys)}; "
            f"missing {missing}, unexpected {extra}",
            "coefficients",
        )
    return cls(**{k: _parse_scalar(coeffs[k], f"coefficients.{k}") for k in keys})


def parse_model(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError("invalid-json", exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    except RecursionError:
        raise ModelError("invalid-json", "nesting too deep") from None
    return model_from_dict(obj)


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())

