"""Exact symbolic engine for Lie point symmetries of semilinear equations
driven by the Heisenberg-group sub-Laplacian.

The package verifies candidate symmetry generators of
Delta_H1 u + f(u) = 0 on H1, re-derives the nine determining equations
mechanically, and re-computes the full group classification by an exact
polynomial-ansatz nullspace solve, entirely in rational arithmetic.
"""

from ._backend import backend_name
from .gexpr import EXPU, F, FPRIME, GExpr, PLAIN, Tag, upow
from .geometry import (FirstOrderOp, T as T_OP, X as X_OP, X_TILDE, Y as Y_OP,
                       Y_TILDE, apply_field, commutator, group_inverse,
                       group_mul, kohn_laplace, left_translate)
from .poly import Poly
from .prolongation import Prolonged, VField, closed_form_eta, prolong2, total_derivative
from .verifier import (FCase, VerifyResult, equation_rhs, numeric_spot_check,
                       symmetry_defect, verify_generator)

__version__ = "0.1.0"

__all__ = [
    "backend_name", "Poly", "GExpr", "Tag", "PLAIN", "F", "FPRIME", "EXPU", "upow",
    "FirstOrderOp", "apply_field", "kohn_laplace", "commutator", "group_mul",
    "group_inverse", "left_translate", "X_OP", "Y_OP", "T_OP", "X_TILDE", "Y_TILDE",
    "VField", "Prolonged", "total_derivative", "prolong2", "closed_form_eta",
    "FCase", "VerifyResult", "equation_rhs", "symmetry_defect", "verify_generator",
    "numeric_spot_check",
]
