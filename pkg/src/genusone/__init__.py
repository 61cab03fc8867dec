"""Exact invariants, Jacobians and mod-p smoothness of genus one models."""
from .exact_arith import PrimeFieldElement, bernoulli, format_rational, p_adic_valuation, parse_rational
from .invariants import InvariantTriple, invariants_of_model
from .jacobian import check_invariant_relations, jacobian_of_model
from .modforms import QSeries, discriminant_series, eisenstein_series, eta_product, hasse_congruence_check
from .models import (
    BinaryQuarticModel,
    PfaffianModel,
    QuadricPairModel,
    ShortWeierstrass,
    TernaryCubicModel,
    WeierstrassModel,
    load_model,
    parse_model,
    serialize_model,
)
from .multipoly import SparsePolynomial, parse_polynomial
from .reduction import singular_points_mod_p, smoothness_discriminant_consistency

__version__ = "0.1.0"
