"""Finite group extensions, their Seifert-type realizations, and related invariants."""

from .groups import FiniteGroup, CoefModule, PermAction, GroupError
from .cochains import Cochain1, Cochain2, is_cocycle, cohomologous, averaging_cobound, principal_part
from .cohomology import h1_invariant_factors, h2_invariant_factors
from .extensions import ExtensionData, ExtElement, make_extension, ext_mul, ext_inv, torsion_order
from .engine import construct_theta, fiber_analysis, injectivity_check, strict_equiv
from .invariants import SeifertSymbol, geometry_report

__version__ = "0.1.0"

__all__ = [
    "FiniteGroup", "CoefModule", "PermAction", "GroupError",
    "Cochain1", "Cochain2", "is_cocycle", "cohomologous", "averaging_cobound", "principal_part",
    "h1_invariant_factors", "h2_invariant_factors",
    "ExtensionData", "ExtElement", "make_extension", "ext_mul", "ext_inv", "torsion_order",
    "construct_theta", "fiber_analysis", "injectivity_check", "strict_equiv",
    "SeifertSymbol", "geometry_report",
]
