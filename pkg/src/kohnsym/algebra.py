"""Brackets, structure constants and algebra sanity checks.

Generators act on (x, y, t, u) with u-component alpha*u + beta, so the
commutator of two generators is computed on the full four-variable fields
(the u-only generators Z2 and W live entirely in that last slot).  For
fields of this restricted form the bracket's u-component is again affine in
u by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .linalg import rank, solve_columns
from .poly import Poly
from .prolongation import VField
from .solver import vfield_vector


def bracket(s1: VField, s2: VField) -> VField:
    """Commutator [s1, s2] in (xi, phi, tau, alpha, beta) form."""

    def base_apply(s: VField, e: Poly) -> Poly:
        from . import variables as v
        return (s.xi * e.partial(v.X) + s.phi * e.partial(v.Y)
                + s.tau * e.partial(v.T))

    return VField(
        base_apply(s1, s2.xi) - base_apply(s2, s1.xi),
        base_apply(s1, s2.phi) - base_apply(s2, s1.phi),
        base_apply(s1, s2.tau) - base_apply(s2, s1.tau),
        base_apply(s1, s2.alpha) - base_apply(s2, s1.alpha),
        (base_apply(s1, s2.beta) - base_apply(s2, s1.beta)
         + s1.beta * s2.alpha - s2.beta * s1.alpha),
    )


@dataclass(frozen=True)
class ClosureFailure:
    i: int
    j: int
    residual: VField


@dataclass(frozen=True)
class AlgebraBasis:
    """Basis with exact structure constants and closure bookkeeping.

    constants[(i, j)] is the coefficient list of [basis[i], basis[j]] in the
    basis (i < j; antisymmetry gives the rest).  failures lists bracket
    pairs falling outside the span; closure is data, not an error.
    """

    basis: tuple
    constants: dict
    failures: tuple = ()

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def closed(self) -> bool:
        return not self.failures

    def constant(self, i: int, j: int, k: int) -> Fraction:
        if i == j:
            return Fraction(0)
        if i < j:
            coeffs = self.constants.get((i, j))
            return coeffs[k] if coeffs else Fraction(0)
        coeffs = self.constants.get((j, i))
        return -coeffs[k] if coeffs else Fraction(0)

    def nonzero_constants(self) -> list:
        """Sorted (i, j, k, value) quadruples for i < j."""
        out = []
        for (i, j), coeffs in sorted(self.constants.items()):
            if coeffs is None:
                continue
            for k, val in enumerate(coeffs):
                if val:
                    out.append((i, j, k, val))
        return out


def structure_constants(basis: list) -> AlgebraBasis:
    """Expand every bracket in the given basis by exact linear solves.

    Requires the basis to be linearly independent (checked by exact rank).
    """
    columns = [vfield_vector(S) for S in basis]
    one = Fraction(1)
    if rank(columns, one) != len(basis):
        raise ValueError("basis is linearly dependent")
    constants = {}
    failures = []
    n = len(basis)
    for i in range(n):
        for j in range(i + 1, n):
            br = bracket(basis[i], basis[j])
            if br.is_zero():
                constants[(i, j)] = [Fraction(0)] * n
                continue
            coeffs = solve_columns(columns, vfield_vector(br), one)
            if coeffs is None:
                constants[(i, j)] = None
                failures.append(ClosureFailure(i, j, br))
            else:
                constants[(i, j)] = coeffs
    return AlgebraBasis(tuple(basis), constants, tuple(failures))


def jacobi_check(basis: list) -> bool:
    """Sum of cyclic double brackets vanishes exactly for every triple."""
    n = len(basis)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total = (bracket(bracket(basis[i], basis[j]), basis[k])
                         + bracket(bracket(basis[j], basis[k]), basis[i])
                         + bracket(bracket(basis[k], basis[i]), basis[j]))
                if not total.is_zero():
                    return False
    return True


def bracket_in_basis(alg: AlgebraBasis, i: int, j: int) -> Optional[list]:
    """Coefficients of [b_i, b_j] in the basis, or None outside the span."""
    if i == j:
        return [Fraction(0)] * alg.dimension
    sign = 1
    if i > j:
        i, j, sign = j, i, -1
    coeffs = alg.constants.get((i, j))
    if coeffs is None:
        return None
    return [sign * c for c in coeffs]
