"""Solvability, root counts and roots of x^3 + a x = b over Z_p^*, Z_p and Q_p (p > 3)."""
from .cardano import CardanoReport, cardano_applicable, cardano_solve
from .cubic import (
    CubicEquation,
    DiscriminantData,
    Domain,
    RootSet,
    SolvabilityReport,
    ab_zero_solve,
    count,
    discriminant_data,
    roots,
    solvable,
)
from .errors import HenselSeedError, PrecisionError, UnsupportedCaseError
from .ffield import fp_cubic_classify, fp_cubic_count, power_residue_test, qth_roots_fp, u_term
from .hensel import IntegerPolynomial, LiftSeed, hensel_lift, qth_root_qp, quadratic_solve_qp
from .padic import PadicNumber, expand, norm_of, valuation_of

__all__ = [
    "CardanoReport",
    "CubicEquation",
    "DiscriminantData",
    "Domain",
    "HenselSeedError",
    "IntegerPolynomial",
    "LiftSeed",
    "PadicNumber",
    "PrecisionError",
    "RootSet",
    "SolvabilityReport",
    "UnsupportedCaseError",
    "ab_zero_solve",
    "cardano_applicable",
    "cardano_solve",
    "count",
    "discriminant_data",
    "expand",
    "fp_cubic_classify",
    "fp_cubic_count",
    "hensel_lift",
    "norm_of",
    "power_residue_test",
    "qth_root_qp",
    "qth_roots_fp",
    "quadratic_solve_qp",
    "roots",
    "solvable",
    "u_term",
    "valuation_of",
]
