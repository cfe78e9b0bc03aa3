"""Exact and numeric arithmetic kernels."""

from .poly import Poly, PolyRing, poly_gcd
from .quotient import QuotientRing, RingElement
from .laurent import (
    SingularElementError,
    ZLaurent,
    exp_nilpotent,
    log_one_plus,
    nilpotent_inverse,
)
from .rational import LocalizedFunction, PoleError, exp_truncated, residue_at
from .gammafun import (
    EULER_GAMMA,
    ZETA,
    GammaExpansion,
    bernoulli_numbers,
    gamma_expand,
    gamma_lanczos,
    loggamma_lanczos,
    loggamma_stirling,
    polygamma,
)
from .nilseries import NumericNilSeries
from .cyclotomic import CycloRational, cyclotomic_polynomial

__all__ = [
    "Poly", "PolyRing", "poly_gcd",
    "QuotientRing", "RingElement",
    "ZLaurent", "nilpotent_inverse", "exp_nilpotent", "log_one_plus",
    "SingularElementError",
    "LocalizedFunction", "PoleError", "residue_at", "exp_truncated",
    "EULER_GAMMA", "ZETA", "GammaExpansion", "bernoulli_numbers",
    "gamma_expand", "gamma_lanczos", "loggamma_lanczos", "loggamma_stirling",
    "polygamma",
    "NumericNilSeries",
    "CycloRational", "cyclotomic_polynomial",
]
