"""On-shell symmetry verification for Delta_H1 u + f(u) = 0.

For a candidate generator S and a nonlinearity class, `symmetry_defect`
applies the second prolongation to the equation, eliminates u_xx through the
equation itself and collects the remainder as a graded expression.  S
generates a one-parameter symmetry group precisely when that defect is the
zero GExpr (every tag component vanishes identically).

The grading convention treats the tag functions (1, u, f, f', u^(p+j), e^u)
as independent.  That is exact for the function classes handled here: an
arbitrary f, powers with p outside {0, 1}, exponentials, linear and constant
right-hand sides.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import variables as v
from .gexpr import EXPU, F, FPRIME, GExpr, PLAIN, Tag, upow
from .poly import Poly, x, y
from .prolongation import Diff, VField, prolong2

SYMBOLIC = None  # marker for a parameter kept as a formal symbol


@dataclass(frozen=True)
class FCase:
    """Nonlinearity class: which f(u) the equation carries.

    kind is one of arbitrary, zero, const, linear, power, exp.  Parameters
    are exact rationals, or None for a formal symbol (k and p only, where
    supported).  Const(0) normalizes to Zero; Linear requires k != 0; Power
    requires p outside {0, 1}.
    """

    kind: str
    k: Optional[Fraction] = None
    p: Optional[Fraction] = None
    c: Optional[Fraction] = None

    @staticmethod
    def arbitrary() -> "FCase":
        return FCase("arbitrary")

    @staticmethod
    def zero() -> "FCase":
        return FCase("zero")

    @staticmethod
    def const(c) -> "FCase":
        c = Fraction(c)
        if c == 0:
            return FCase.zero()
        return FCase("const", c=c)

    @staticmethod
    def linear(k=SYMBOLIC) -> "FCase":
        if k is not SYMBOLIC:
            k = Fraction(k)
            if k == 0:
                raise ValueError("linear case requires k != 0 (use zero)")
        return FCase("linear", k=k)

    @staticmethod
    def power(k=SYMBOLIC, p=SYMBOLIC) -> "FCase":
        if k is not SYMBOLIC:
            k = Fraction(k)
            if k == 0:
                raise ValueError("power case requires k != 0 (use zero)")
        if p is not SYMBOLIC:
            p = Fraction(p)
            if p in (0, 1):
                raise ValueError("power case requires p outside {0, 1}")
        return FCase("power", k=k, p=p)

    @staticmethod
    def exp(k=SYMBOLIC) -> "FCase":
        if k is not SYMBOLIC:
            k = Fraction(k)
            if k == 0:
                raise ValueError("exp case requires k != 0 (use zero)")
        return FCase("exp", k=k)

    @property
    def is_critical(self) -> bool:
        """Power nonlinearity at the critical exponent p = 3."""
        return self.kind == "power" and self.p == 3

    def k_poly(self) -> Poly:
        return Poly.variable(v.K) if self.k is SYMBOLIC else Poly.const(self.k)

    def p_poly(self) -> Poly:
        return Poly.variable(v.P) if self.p is SYMBOLIC else Poly.const(self.p)

    def describe(self) -> str:
        if self.kind == "arbitrary":
            return "f(u) arbitrary"
        if self.kind == "zero":
            return "f(u) = 0"
        if self.kind == "const":
            return f"f(u) = {self.c}"
        k = "k" if self.k is SYMBOLIC else str(self.k)
        if self.kind == "linear":
            return f"f(u) = {k}*u"
        if self.kind == "power":
            p = "p" if self.p is SYMBOLIC else str(self.p)
            return f"f(u) = {k}*u^{p}"
        return f"f(u) = {k}*exp(u)"


def _plain_lhs() -> Poly:
    """Polynomial part of the equation: u_xx + u_yy + 4(x^2+y^2) u_tt
    + 4y u_xt - 4x u_yt."""
    uxx, uyy, utt = (Poly.variable(c) for c in (v.UXX, v.UYY, v.UTT))
    uxt, uyt = Poly.variable(v.UXT), Poly.variable(v.UYT)
    return uxx + uyy + 4 * (x * x + y * y) * utt + 4 * y * uxt - 4 * x * uyt


def _f_gexpr(fc: FCase) -> GExpr:
    """f(u) in graded form."""
    if fc.kind == "arbitrary":
        return GExpr({F: Poly.const(1)})
    if fc.kind == "zero":
        return GExpr.zero()
    if fc.kind == "const":
        return GExpr.plain(Poly.const(fc.c))
    if fc.kind == "linear":
        return GExpr.plain(fc.k_poly() * Poly.variable(v.U))
    if fc.kind == "power":
        return GExpr({upow(0): fc.k_poly()})
    return GExpr({EXPU: fc.k_poly()})


def _fprime_times(fc: FCase, factor: Poly) -> GExpr:
    """factor * f'(u) in graded form; the factor may contain u, in which
    case UPow components absorb it into the tag offset."""
    if fc.kind in ("zero", "const"):
        return GExpr.zero()
    if fc.kind == "arbitrary":
        return GExpr({FPRIME: factor})
    if fc.kind == "linear":
        return GExpr.plain(fc.k_poly() * factor)
    if fc.kind == "power":
        return GExpr({upow(-1): fc.k_poly() * fc.p_poly() * factor})
    return GExpr({EXPU: fc.k_poly() * factor})


def equation_rhs(fc: FCase) -> GExpr:
    """The full equation Delta_H1 u + f(u) as a graded expression."""
    return GExpr.plain(_plain_lhs()) + _f_gexpr(fc)


def _shat_parts(S: VField, diff: Optional[Diff] = None) -> tuple:
    """Apply the prolonged generator to the equation before going on-shell.

    Returns (plain, eta): the polynomial part (still containing u_xx) and
    the coefficient of f'(u), which is the generator's u-component.
    """
    pr = prolong2(S, diff)
    plain = (
        (8 * x * S.xi + 8 * y * S.phi) * Poly.variable(v.UTT)
        + 4 * S.phi * Poly.variable(v.UXT)
        - 4 * S.xi * Poly.variable(v.UYT)
        + pr.eta2_xx + pr.eta2_yy
        + 4 * (x * x + y * y) * pr.eta2_tt
        + 4 * y * pr.eta2_xt - 4 * x * pr.eta2_yt
    )
    eta = S.alpha * Poly.variable(v.U) + S.beta
    return plain, eta


def symmetry_defect(S: VField, fc: FCase, diff: Optional[Diff] = None) -> GExpr:
    """On-shell symmetry defect of S for the given nonlinearity class.

    u_xx is eliminated through the equation (the plain part and the graded
    f-part both substitute into the linear u_xx slot), f'(u) enters through
    its graded form, and the result is collected as a GExpr.  The defect is
    zero iff S generates a symmetry for that class.
    """
    plain, eta = _shat_parts(S, diff)
    if plain.degree_in(v.UXX) > 1:
        raise AssertionError("symmetry condition must be linear in u_xx")
    b = plain.partial(v.UXX)
    a = plain - b * Poly.variable(v.UXX)
    rest = _plain_lhs() - Poly.variable(v.UXX)  # u_xx = -rest - f(u)
    defect = GExpr.plain(a - b * rest)
    defect = defect - _f_gexpr(fc).scale(b)
    defect = defect + _fprime_times(fc, eta)
    if fc.kind == "power" and fc.p is not SYMBOLIC:
        defect = defect.fold_upow(fc.p)
    return defect


@dataclass(frozen=True)
class VerifyResult:
    is_symmetry: bool
    certificate: list = field(default_factory=list)
    defect: GExpr = field(default_factory=GExpr.zero)

    def __bool__(self) -> bool:
        return self.is_symmetry


def verify_generator(S: VField, fc: FCase) -> VerifyResult:
    """Decide symmetry membership; on failure the certificate lists every
    nonzero defect coefficient as (tag, monomial, coefficient)."""
    defect = symmetry_defect(S, fc)
    if defect.is_zero():
        return VerifyResult(True, [], defect)
    return VerifyResult(False, defect.entries(), defect)


def _f_values(fc: FCase, u_val: Fraction) -> tuple:
    """Exact (f(u), f'(u)) for a concrete polynomial nonlinearity."""
    if fc.kind == "zero":
        return Fraction(0), Fraction(0)
    if fc.kind == "const":
        return fc.c, Fraction(0)
    if fc.kind == "linear":
        return fc.k * u_val, fc.k
    if fc.kind == "power":
        p = int(fc.p)
        return fc.k * u_val ** p, fc.k * p * u_val ** (p - 1)
    raise ValueError(f"numeric spot check requires a concrete polynomial f ({fc.kind} given)")


def numeric_spot_check(S: VField, fc: FCase, trials: int, seed: int = 0) -> bool:
    """Independent numeric oracle in exact rational arithmetic.

    Each trial draws random rationals for the coordinates, u and all jets
    except u_xx, solves u_xx from the equation, and evaluates the symmetry
    condition exactly.  True iff every trial gives exactly zero.  Requires a
    concrete polynomial nonlinearity (zero, const, linear, or power with an
    integer exponent p >= 2).
    """
    if fc.kind in ("arbitrary", "exp"):
        raise ValueError(f"numeric spot check requires a concrete polynomial f ({fc.kind} given)")
    if fc.kind == "linear" and fc.k is SYMBOLIC:
        raise ValueError("numeric spot check requires a concrete k")
    if fc.kind == "power":
        if fc.k is SYMBOLIC or fc.p is SYMBOLIC:
            raise ValueError("numeric spot check requires concrete k and p")
        if fc.p.denominator != 1 or fc.p < 2:
            raise ValueError("numeric spot check requires an integer exponent p >= 2")

    params = {c for comp in S.components() for c in comp.variables()} & set(v.PARAMS)
    if params:
        names = ", ".join(sorted(v.name_of(c) for c in params))
        raise ValueError(f"generator contains symbolic parameters ({names})")

    plain, eta = _shat_parts(S)
    rest = _plain_lhs() - Poly.variable(v.UXX)
    rng = random.Random(seed)

    def draw() -> Fraction:
        return Fraction(rng.randint(-20, 20), rng.randint(1, 12))

    free = list(v.COORDS) + [v.U] + [c for c in v.JETS if c != v.UXX]
    for _ in range(max(1, trials)):
        point = {c: draw() for c in free}
        f_val, fp_val = _f_values(fc, point[v.U])
        point[v.UXX] = -(rest.eval(point) + f_val)
        value = plain.eval(point) + eta.eval(point) * fp_val
        if value != 0:
            return False
    return True
