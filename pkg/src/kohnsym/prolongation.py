"""Second prolongation of point-symmetry generators for u(x, y, t).

A generator is restricted to the form xi(x,y,t) d/dx + phi d/dy + tau d/dt
+ (alpha(x,y,t) u + beta(x,y,t)) d/du; none of the five component functions
may involve u or its derivatives.  The prolongation extends the generator to
the nine first- and second-order jet coordinates.

Two independent constructions are provided: `prolong2` builds the
coefficients recursively from total derivatives, while `closed_form_eta`
transcribes the standard explicit formulas.  They must agree exactly; the
test suite pins them against each other on randomized generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import variables as v
from .poly import Poly

Diff = Callable[[Poly, int], Poly]


def _plain_diff(e: Poly, code: int) -> Poly:
    return e.partial(code)


@dataclass(frozen=True)
class VField:
    """Point-symmetry generator (xi, phi, tau, alpha, beta)."""

    xi: Poly
    phi: Poly
    tau: Poly
    alpha: Poly
    beta: Poly
    name: str = ""

    def __post_init__(self):
        forbidden = {v.U} | set(v.JETS)
        for label, comp in self.items():
            bad = comp.variables() & forbidden
            if bad:
                names = ", ".join(sorted(v.name_of(c) for c in bad))
                raise ValueError(f"component {label} must not contain {names}")

    def items(self) -> list:
        return [("xi", self.xi), ("phi", self.phi), ("tau", self.tau),
                ("alpha", self.alpha), ("beta", self.beta)]

    def components(self) -> tuple:
        return (self.xi, self.phi, self.tau, self.alpha, self.beta)

    def eta(self) -> Poly:
        return self.alpha * Poly.variable(v.U) + self.beta

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components())

    def __add__(self, other: "VField") -> "VField":
        return VField(self.xi + other.xi, self.phi + other.phi, self.tau + other.tau,
                      self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other: "VField") -> "VField":
        return self + (-1) * other

    def __mul__(self, scalar) -> "VField":
        return VField(self.xi * scalar, self.phi * scalar, self.tau * scalar,
                      self.alpha * scalar, self.beta * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "VField":
        return (-1) * self

    def __str__(self) -> str:
        parts = [f"{label}={comp}" for label, comp in self.items()]
        return "; ".join(parts)


ZERO_FIELD = VField(Poly.zero(), Poly.zero(), Poly.zero(), Poly.zero(), Poly.zero())


@dataclass(frozen=True)
class Prolonged:
    """The nine prolongation coefficients of a generator."""

    eta1_x: Poly
    eta1_y: Poly
    eta1_t: Poly
    eta2_xx: Poly
    eta2_xy: Poly
    eta2_xt: Poly
    eta2_yy: Poly
    eta2_yt: Poly
    eta2_tt: Poly

    def items(self) -> list:
        return [("eta1_x", self.eta1_x), ("eta1_y", self.eta1_y), ("eta1_t", self.eta1_t),
                ("eta2_xx", self.eta2_xx), ("eta2_xy", self.eta2_xy), ("eta2_xt", self.eta2_xt),
                ("eta2_yy", self.eta2_yy), ("eta2_yt", self.eta2_yt), ("eta2_tt", self.eta2_tt)]


def total_derivative(e: Poly, wrt: int, diff: Optional[Diff] = None) -> Poly:
    """Total derivative D_wrt on the second-order jet space.

    D_i e = d_i e + u_i du e + sum_j u_(ij) d(u_j) e, with symmetrised
    second jets.  Input may contain coordinates, u, first jets and
    parameters; second jets are rejected because the result would need
    third-order jets, which are outside the variable universe.
    """
    if wrt not in v.COORDS:
        raise ValueError("total derivative direction must be a coordinate")
    present = e.variables()
    bad = present & set(v.SECOND_JETS)
    if bad:
        names = ", ".join(sorted(v.name_of(c) for c in bad))
        raise ValueError(f"total derivative input contains second-order jets: {names}")
    d = diff or _plain_diff
    out = d(e, wrt)
    for source in (v.U,) + v.FIRST_JETS:
        if source in present:
            target = v.TOTAL_SHIFT[(source, wrt)]
            out = out + Poly.variable(target) * e.partial(source)
    return out


def prolong2(field: VField, diff: Optional[Diff] = None) -> Prolonged:
    """Second prolongation via the recursive total-derivative construction.

    eta1_i = D_i(eta) - u_x D_i xi - u_y D_i phi - u_t D_i tau and
    eta2_ij = D_j(eta1_i) - u_(ix) D_j xi - u_(iy) D_j phi - u_(it) D_j tau.
    The optional diff argument replaces the formal partial derivative used
    on the components (the determining-system module passes a derivative
    that knows about opaque unknown-function symbols).
    """
    u_x, u_y, u_t = (Poly.variable(c) for c in v.FIRST_JETS)
    eta = field.alpha * Poly.variable(v.U) + field.beta

    def d(e: Poly, wrt: int) -> Poly:
        return total_derivative(e, wrt, diff)

    def eta1(wrt: int) -> Poly:
        return (d(eta, wrt) - u_x * d(field.xi, wrt)
                - u_y * d(field.phi, wrt) - u_t * d(field.tau, wrt))

    e1 = {c: eta1(c) for c in v.COORDS}

    def eta2(i: int, j: int) -> Poly:
        jet_i = {c: Poly.variable(v.TOTAL_SHIFT[(v.TOTAL_SHIFT[(v.U, i)], c)]) for c in v.COORDS}
        return (d(e1[i], j) - jet_i[v.X] * d(field.xi, j)
                - jet_i[v.Y] * d(field.phi, j) - jet_i[v.T] * d(field.tau, j))

    return Prolonged(
        eta1_x=e1[v.X], eta1_y=e1[v.Y], eta1_t=e1[v.T],
        eta2_xx=eta2(v.X, v.X), eta2_xy=eta2(v.X, v.Y), eta2_xt=eta2(v.X, v.T),
        eta2_yy=eta2(v.Y, v.Y), eta2_yt=eta2(v.Y, v.T), eta2_tt=eta2(v.T, v.T),
    )


def closed_form_eta(field: VField) -> Prolonged:
    """Second prolongation by direct transcription of the explicit formulas.

    Serves as the independent oracle for `prolong2`; only polynomial
    components are supported (derivatives are formal partials).
    """
    xi, phi, tau, al, be = field.components()
    U, UX, UY, UT = (Poly.variable(c) for c in (v.U,) + v.FIRST_JETS)
    UXX, UXY, UXT, UYY, UYT, UTT = (Poly.variable(c) for c in v.SECOND_JETS)

    def dx(e): return e.partial(v.X)
    def dy(e): return e.partial(v.Y)
    def dt(e): return e.partial(v.T)

    eta1_x = dx(be) + dx(al) * U + (al - dx(xi)) * UX - dx(phi) * UY - dx(tau) * UT
    eta1_y = dy(be) + dy(al) * U - dy(xi) * UX + (al - dy(phi)) * UY - dy(tau) * UT
    eta1_t = dt(be) + dt(al) * U - dt(xi) * UX - dt(phi) * UY + (al - dt(tau)) * UT

    eta2_xx = (dx(dx(be)) + dx(dx(al)) * U + (2 * dx(al) - dx(dx(xi))) * UX
               - dx(dx(phi)) * UY - dx(dx(tau)) * UT
               + (al - 2 * dx(xi)) * UXX - 2 * dx(phi) * UXY - 2 * dx(tau) * UXT)

    eta2_yy = (dy(dy(be)) + dy(dy(al)) * U - dy(dy(xi)) * UX
               + (2 * dy(al) - dy(dy(phi))) * UY - dy(dy(tau)) * UT
               - 2 * dy(xi) * UXY + (al - 2 * dy(phi)) * UYY - 2 * dy(tau) * UYT)

    eta2_tt = (dt(dt(be)) + dt(dt(al)) * U - dt(dt(xi)) * UX - dt(dt(phi)) * UY
               + (2 * dt(al) - dt(dt(tau))) * UT
               - 2 * dt(xi) * UXT - 2 * dt(phi) * UYT + (al - 2 * dt(tau)) * UTT)

    eta2_xt = (dt(dx(be)) + dt(dx(al)) * U + (dt(al) - dt(dx(xi))) * UX
               - dt(dx(phi)) * UY + (dx(al) - dt(dx(tau))) * UT
               - dt(xi) * UXX - dt(phi) * UXY - dx(phi) * UYT
               + (al - dx(xi) - dt(tau)) * UXT - dx(tau) * UTT)

    eta2_yt = (dt(dy(be)) + dt(dy(al)) * U - dt(dy(xi)) * UX
               + (dt(al) - dt(dy(phi))) * UY + (dy(al) - dt(dy(tau))) * UT
               - dy(xi) * UXT - dt(xi) * UXY - dt(phi) * UYY
               + (al - dy(phi) - dt(tau)) * UYT - dy(tau) * UTT)

    # The mixed x-y coefficient is not needed by the symmetry condition of
    # this equation (no u_xy term) but belongs to the full prolongation.
    eta2_xy = (dy(dx(be)) + dy(dx(al)) * U + (dy(al) - dy(dx(xi))) * UX
               + (dx(al) - dy(dx(phi))) * UY - dy(dx(tau)) * UT
               - dy(xi) * UXX + (al - dx(xi) - dy(phi)) * UXY - dy(tau) * UXT
               - dx(phi) * UYY - dx(tau) * UYT)

    return Prolonged(eta1_x, eta1_y, eta1_t, eta2_xx, eta2_xy, eta2_xt,
                     eta2_yy, eta2_yt, eta2_tt)
