"""p-adic diffeomorphism groups: Mahler expansions, flows, finite quotients,
symplectic invariants and finite-group characters."""

from .errors import ConvergenceError, DomainError, IntegrityError, PadicDiffError, PrecisionError
from .padic import INF, PadicNumber, Val
from .mahler import MahlerSeries, mahler_coeffs, norm_Ct, basis_norm_J, is_analytic
from .diffeo import Diffeo, compose, invert, distance, in_W
from .flows import VectorField, exp_field, log_iteration, bracket, bch, bch_discrepancy
from .profinite import FiniteMap, truncate, group_closure
from .config import RunConfig

__all__ = [
    "ConvergenceError", "DomainError", "IntegrityError", "PadicDiffError", "PrecisionError",
    "INF", "PadicNumber", "Val",
    "MahlerSeries", "mahler_coeffs", "norm_Ct", "basis_norm_J", "is_analytic",
    "Diffeo", "compose", "invert", "distance", "in_W",
    "VectorField", "exp_field", "log_iteration", "bracket", "bch", "bch_discrepancy",
    "FiniteMap", "truncate", "group_closure",
    "RunConfig",
]
