"""Exact Lefschetz-type checks for contact and symplectic Lie algebras."""
from .cohomology import betti_numbers, class_coords, cohomology, is_exact
from .exterior import KForm, format_form, parse_form, wedge
from .fieldcore import FieldSpec, parse_field
from .kernels import BACKEND
from .lefschetz import contact_lefschetz, symplectic_lefschetz, theorem_main_check
from .liealg import LieAlgebra, build_algebra, ce_d, classify
from .symcon import contactize, decontactize, verify_bg_conditions, verify_contact, verify_symplectic

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "FieldSpec", "KForm", "LieAlgebra", "betti_numbers", "build_algebra", "ce_d", "class_coords",
    "classify", "cohomology", "contact_lefschetz", "contactize", "decontactize", "format_form", "is_exact",
    "parse_field", "parse_form", "symplectic_lefschetz", "theorem_main_check", "verify_bg_conditions",
    "verify_contact", "verify_symplectic", "wedge",
]
