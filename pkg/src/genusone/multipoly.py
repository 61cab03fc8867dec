"""Sparse multivariate polynomials over Q or F_p, and small polynomial matrices.

A polynomial is a map from exponent tuples to nonzero coefficients.  Over Q
the coefficients are ``Fraction``/``int``; over F_p they are
:class:`~genusone.exact_arith.PrimeFieldElement` and the polynomial records
the modulus so that the zero polynomial still knows its field.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .exact_arith import PrimeFieldElement, format_rational


class FieldMismatchError(ValueError):
    pass


def _coeff_modulus(c):
    return c.modulus if isinstance(c, PrimeFieldElement) else None


def _norm_coeff(c, modulus):
    if modulus is None:
        if isinstance(c, PrimeFieldElement):
            raise FieldMismatchError(f"F_{c.modulus} coefficient in a polynomial over Q")
        return Fraction(c)
    if isinstance(c, PrimeFieldElement):
        if c.modulus != modulus:
            raise FieldMismatchError(f"F_{c.modulus} coefficient in a polynomial over F_{modulus}")
        return c
    return PrimeFieldElement(c, modulus)


class SparsePolynomial:
    __slots__ = ("variables", "terms", "modulus")

    def __init__(self, variables, terms=None, modulus=None):
        self.variables = tuple(variables)
        n = len(self.variables)
        if modulus is None and terms:
            for c in terms.values():
                modulus = _coeff_modulus(c)
                break
        self.modulus = modulus
        self.terms = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match {n} variables")
            c = _norm_coeff(c, modulus)
            if c != 0:
                self.terms[e] = c

    # -- constructors -----------------------------------------------------

    @classmethod
    def _raw(cls, variables, terms, modulus):
        out = object.__new__(cls)
        out.variables = variables
        out.terms = terms
        out.modulus = modulus
        return out

    @classmethod
    def zero(cls, variables, modulus=None):
        return cls(variables, {}, modulus)

    @classmethod
    def constant(cls, c, variables, modulus=None):
        return cls(variables, {(0,) * len(variables): c}, modulus)

    @classmethod
    def variable(cls, name, variables, modulus=None):
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): 1}, modulus)

    @classmethod
    def gens(cls, variables, modulus=None):
        return [cls.variable(v, variables, modulus) for v in variables]

    # -- basic queries ----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def _zero_coeff(self):
        return Fraction(0) if self.modulus is None else PrimeFieldElement(0, self.modulus)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self._zero_coeff())

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self, degree=None):
        degs = {sum(e) for e in self.terms}
        if degree is not None:
            return degs <= {degree}
        return len(degs) <= 1

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.coefficient((0,) * len(self.variables))

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if self.variables != other.variables:
            raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
        if self.modulus != other.modulus:
            raise FieldMismatchError(
                f"field mismatch: {_field_name(self.modulus)} vs {_field_name(other.modulus)}"
            )

    def _lift(self, other):
        if isinstance(other, SparsePolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, PrimeFieldElement)):
            return SparsePolynomial.constant(other, self.variables, self.modulus)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return SparsePolynomial._raw(self.variables, terms, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial._raw(
            self.variables, {e: -c for e, c in self.terms.items()}, self.modulus
        )

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PrimeFieldElement)):
            c = _norm_coeff(other, self.modulus)
            if c == 0:
                return SparsePolynomial.zero(self.variables, self.modulus)
            return SparsePolynomial._raw(
                self.variables, {e: v * c for e, v in self.terms.items()}, self.modulus
            )
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e)
                terms[e] = c1 * c2 if s is None else s + c1 * c2
        terms = {e: c for e, c in terms.items() if c != 0}
        return SparsePolynomial._raw(self.variables, terms, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, PrimeFieldElement)):
            c = _norm_coeff(other, self.modulus)
            return self * (1 / c if self.modulus is not None else Fraction(1) / c)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = SparsePolynomial.constant(1, self.variables, self.modulus)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, SparsePolynomial):
            return (
                self.variables == other.variables
                and self.modulus == other.modulus
                and self.terms == other.terms
            )
        if isinstance(other, (int, Fraction, PrimeFieldElement)):
            if other == 0:
                return not self.terms
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, self.modulus, frozenset(self.terms.items())))

    # -- calculus and substitution ---------------------------------------

    def partial_derivative(self, var):
        return partial_derivative(self, var)

    def evaluate(self, point):
        return evaluate(self, point)

    def substitute(self, images):
        """Compose with polynomials: variable i is replaced by ``images[i]``.

        The images may live in a different variable set; the result uses theirs.
        """
        if len(images) != len(self.variables):
            raise ValueError("need one image per variable")
        target = images[0].variables if images else ()
        result = SparsePolynomial.zero(target, self.modulus)
        cache = [dict() for _ in images]

        def power(i, k):
            if k not in cache[i]:
                cache[i][k] = images[i] ** k
            return cache[i][k]

        for e, c in self.terms.items():
            t = SparsePolynomial.constant(c, target, self.modulus)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            result = result + t
        return result

    def map_coefficients(self, fn, modulus=None):
        return SparsePolynomial(
            self.variables, {e: fn(c) for e, c in self.terms.items()}, modulus
        )

    def reduce_mod(self, p: int):
        if self.modulus is not None:
            raise FieldMismatchError("polynomial is already over a prime field")
        return self.map_coefficients(lambda c: PrimeFieldElement(c, p), p)

    def rename(self, variables):
        variables = tuple(variables)
        if len(variables) != len(self.variables):
            raise ValueError("rename needs the same number of variables")
        return SparsePolynomial._raw(variables, dict(self.terms), self.modulus)

    # -- text -------------------------------------------------------------

    def sorted_terms(self):
        """Terms in graded-lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-k for k in t[0])))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"SparsePolynomial({self.variables!r}, {format_polynomial(self)!r})"


def _field_name(modulus):
    return "Q" if modulus is None else f"F_{modulus}"


def partial_derivative(f: SparsePolynomial, var) -> SparsePolynomial:
    if var not in f.variables:
        raise ValueError(f"unknown variable {var!r}; expected one of {f.variables}")
    i = f.variables.index(var)
    terms = {}
    for e, c in f.terms.items():
        k = e[i]
        if k == 0:
            continue
        d = c * k
        if d != 0:
            terms[e[:i] + (k - 1,) + e[i + 1:]] = d
    return SparsePolynomial._raw(f.variables, terms, f.modulus)


def evaluate(f: SparsePolynomial, point):
    """Evaluate exactly at ``point``.

    Integer entries are accepted for either field; ``PrimeFieldElement``
    entries must match the polynomial's prime, and non-integral rationals are
    rejected for polynomials over F_p.
    """
    point = list(point)
    if len(point) != len(f.variables):
        raise ValueError(f"point has {len(point)} entries, expected {len(f.variables)}")
    for v in point:
        m = _coeff_modulus(v)
        if m is not None and m != f.modulus:
            raise FieldMismatchError(
                f"point over F_{m} for a polynomial over {_field_name(f.modulus)}"
            )
        if f.modulus is not None and isinstance(v, Fraction) and v.denominator != 1:
            raise FieldMismatchError(f"rational point entry {v} for a polynomial over F_{f.modulus}")
    if f.modulus is not None:
        point = [PrimeFieldElement(v, f.modulus) for v in point]
    else:
        point = [Fraction(v) for v in point]
    total = f._zero_coeff()
    for e, c in f.terms.items():
        t = c
        for v, k in zip(point, e):
            if k:
                t = t * v**k
        total = total + t
    return total


def substitute_linear(f: SparsePolynomial, M) -> SparsePolynomial:
    """Compose ``f`` with the linear change of variables x̄ ↦ x̄·M.

    Variables are treated as a row vector, so ``x_j`` is replaced by
    ``sum_i x_i M[i][j]``; then sub(f, M·N) = sub(sub(f, N), M).
    """
    n = len(f.variables)
    if len(M) != n or any(len(row) != n for row in M):
        raise ValueError(f"matrix must be {n}x{n} for variables {f.variables}")
    gens = SparsePolynomial.gens(f.variables, f.modulus)
    images = []
    for j in range(n):
        img = SparsePolynomial.zero(f.variables, f.modulus)
        for i in range(n):
            if M[i][j] != 0:
                img = img + gens[i] * M[i][j]
        images.append(img)
    return f.substitute(images)


# -- text format --------------------------------------------------------------

def _monomial_str(variables, e):
    parts = []
    for v, k in zip(variables, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def _coeff_str(c):
    if isinstance(c, PrimeFieldElement):
        return str(c.residue)
    return format_rational(c)


def format_polynomial(f: SparsePolynomial) -> str:
    if not f.terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(f.sorted_terms()):
        mono = _monomial_str(f.variables, e)
        if f.modulus is None and c < 0:
            sign, c = "-", -c
        else:
            sign = "+"
        cs = _coeff_str(c)
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"{cs}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class PolynomialParseError(ValueError):
    pass


def _tokenize(text):
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise PolynomialParseError(f"cannot tokenize {text!r} at {pos}")
        if m.group(1) is not None:
            toks.append(("num", m.group(1)))
        elif m.group(2) is not None:
            toks.append(("id", m.group(2)))
        else:
            toks.append(("op", m.group(3)))
        pos = m.end()
    return toks


def parse_polynomial(text: str, variables, modulus=None) -> SparsePolynomial:
    """Parse sums of products like ``"1/2*x0*x1 - 3*x2^2 + 4"``.

    Parentheses are not supported; this is the inverse of
    :func:`format_polynomial`, plus tolerance for spacing and ordering.
    """
    if not isinstance(text, str):
        raise PolynomialParseError(f"expected a string, got {text!r}")
    variables = tuple(variables)
    toks = _tokenize(text)
    if not toks:
        raise PolynomialParseError("empty polynomial")
    n = len(variables)
    result = SparsePolynomial.zero(variables, modulus)
    i = 0

    def expect_num():
        nonlocal i
        if i >= len(toks) or toks[i][0] != "num":
            raise PolynomialParseError(f"expected a number in {text!r}")
        i += 1
        return int(toks[i - 1][1])

    first = True
    while i < len(toks):
        sign = 1
        if toks[i] in (("op", "+"), ("op", "-")):
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif not first:
            raise PolynomialParseError(f"expected + or - in {text!r}")
        first = False
        coeff = Fraction(sign)
        exps = [0] * n
        while True:
            if i >= len(toks):
                raise PolynomialParseError(f"dangling operator in {text!r}")
            kind, val = toks[i]
            if kind == "num":
                num = expect_num()
                den = 1
                if i < len(toks) and toks[i] == ("op", "/"):
                    i += 1
                    den = expect_num()
                    if den == 0:
                        raise PolynomialParseError(f"zero denominator in {text!r}")
                coeff *= Fraction(num, den)
            elif kind == "id":
                if val not in variables:
                    raise PolynomialParseError(f"unknown variable {val!r} in {text!r}")
                i += 1
                k = 1
                if i < len(toks) and toks[i] == ("op", "^"):
                    i += 1
                    k = expect_num()
                exps[variables.index(val)] += k
            else:
                raise PolynomialParseError(f"unexpected {val!r} in {text!r}")
            if i < len(toks) and toks[i] == ("op", "*"):
                i += 1
                continue
            break
        result = result + SparsePolynomial(variables, {tuple(exps): coeff}, modulus)
    return result


# -- matrices -----------------------------------------------------------------

class PolyMatrix:
    """Rectangular matrix of polynomials sharing one variable list."""

    def __init__(self, entries):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("matrix rows have different lengths")
        variables = rows[0][0].variables
        modulus = rows[0][0].modulus
        for r in rows:
            for x in r:
                if x.variables != variables:
                    raise ValueError("matrix entries use different variables")
                if x.modulus != modulus:
                    raise FieldMismatchError("matrix entries live over different fields")
        self.entries = rows
        self.variables = variables
        self.modulus = modulus

    @classmethod
    def from_scalars(cls, rows, variables, modulus=None):
        return cls([[SparsePolynomial.constant(c, variables, modulus) for c in r] for r in rows])

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self):
        return PolyMatrix([list(c) for c in zip(*self.entries)])

    def minor(self, rows, cols):
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows])

    def det(self):
        return det_poly_matrix(self)


def det_poly_matrix(M: PolyMatrix) -> SparsePolynomial:
    """Determinant by cofactor expansion along the first row.

    Minors are memoized on their column sets, so an n×n matrix costs
    O(n 2^n) polynomial products.
    """
    if M.rows != M.cols:
        raise ValueError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    if n > 6:
        raise ValueError("determinants are limited to size 6")
    memo = {}

    def sub(row, cols):
        # det of rows row..n-1 restricted to the sorted column tuple ``cols``
        if row == n:
            return SparsePolynomial.constant(1, M.variables, M.modulus)
        key = cols
        if key in memo:
            return memo[key]
        acc = SparsePolynomial.zero(M.variables, M.modulus)
        for k, c in enumerate(cols):
            a = M.entries[row][c]
            if not a:
                continue
            term = a * sub(row + 1, cols[:k] + cols[k + 1:])
            acc = acc + term if k % 2 == 0 else acc - term
        memo[key] = acc
        return acc

    return sub(0, tuple(range(n)))


def scalar_det(rows):
    """Exact determinant of a rational matrix by Gaussian elimination."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det

