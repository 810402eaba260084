"""Weighted parabolic Kazhdan-Lusztig polynomials with exact arithmetic."""
from .chains import (
    Multichain,
    chain_report,
    coeff_p,
    coeff_q,
    enum_chains,
    enum_multichains,
    p_via_chains,
    p_via_multichains,
    q_via_chains,
    q_via_multichains,
    reduced_multichains,
    script_r,
    script_r_star,
    script_r_tilde,
    script_r_tilde_star,
)
from .coxeter import CoxeterSystem, Element, format_element, new_system, parse_element
from .errors import MathError, ParseError, VerifyFailed, WKLError
from .heckemod import HeckeElement, ModuleVector, ParabolicModule, bar_gamma, get_module
from .klcore import c_basis, p_poly, poly_table, q_poly, r_poly, r_tilde, verify_r_identities
from .laurent import LaurentPoly

__version__ = "0.1.0"
