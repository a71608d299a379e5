"""Exact perturbative and WRT invariants of rational homology spheres."""
from .cyclotomic import CycNumber, gauss_sum_closed, gauss_sum_direct, zeta_minus_one_expand
from .errors import InputError, MathAssertionError, PertinvError
from .jones import FramedLink, jones_exact, jones_series
from .orbit import InvariantPolynomial, TreeMonomial, orbit_integral, sphere_moment
from .scalars import Prefactor, SymbolicScalar
from .series import ColorSeries, KSeries, sn_from_delta
from .surgery import ManifoldResult, alternating_sum, compute_invariants, compute_invariants_asl, required_input_order
from .wrt import WrtValue, ohtsuki_congruence_check, z_prime, z_wrt

__all__ = [
    "ColorSeries",
    "CycNumber",
    "FramedLink",
    "InputError",
    "InvariantPolynomial",
    "KSeries",
    "ManifoldResult",
    "MathAssertionError",
    "PertinvError",
    "Prefactor",
    "SymbolicScalar",
    "TreeMonomial",
    "WrtValue",
    "alternating_sum",
    "compute_invariants",
    "compute_invariants_asl",
    "gauss_sum_closed",
    "gauss_sum_direct",
    "jones_exact",
    "jones_series",
    "ohtsuki_congruence_check",
    "orbit_integral",
    "required_input_order",
    "sn_from_delta",
    "sphere_moment",
    "z_prime",
    "z_wrt",
    "zeta_minus_one_expand",
]
