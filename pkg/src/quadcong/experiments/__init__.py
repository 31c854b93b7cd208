"""Desk-scale numerical experiments."""

from .bump import BumpFn, bump, bump_eval, bump_integral
from .cubic import YPoissonResult, rho_cubic, x2y3_typeI2, ypoisson_check
from .discrepancy import COEFFICIENTS, type1, type1_bound, type2, type2_bound
from .gpfscan import ChebyshevResult, GpfReport, chebyshev_identity, gpf_scan
from .kernels import kernel_heegner, kernel_lowertriang
from .primes import EquidistTable, deciles, equidist, hypothesis_rhs, hypothesis_sum, weyl_sum
from .report import DEFAULT_THETA, DiscrepancyRow, ExperimentReport, check_theta

__all__ = [
    "BumpFn", "bump", "bump_eval", "bump_integral",
    "YPoissonResult", "rho_cubic", "x2y3_typeI2", "ypoisson_check",
    "COEFFICIENTS", "type1", "type1_bound", "type2", "type2_bound",
    "ChebyshevResult", "GpfReport", "chebyshev_identity", "gpf_scan",
    "kernel_heegner", "kernel_lowertriang",
    "EquidistTable", "deciles", "equidist", "hypothesis_rhs", "hypothesis_sum", "weyl_sum",
    "DEFAULT_THETA", "DiscrepancyRow", "ExperimentReport", "check_theta",
]
