"""The Heisenberg group H1 and its invariant first-order operators.

H1 is R^3 with the product (x,y,t)(x',y',t') = (x+x', y+y', t+t'+2(yx'-xy')).
The left-invariant frame is X = d/dx + 2y d/dt, Y = d/dy - 2x d/dt together
with T = d/dt, satisfying [X, Y] = -4T and [X, T] = [Y, T] = 0.  The
sub-Laplacian (Kohn Laplacian) is X^2 + Y^2.  The right-invariant
counterparts Xt = d/dx - 2y d/dt and Yt = d/dy + 2x d/dt commute with the
left-invariant frame.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from . import variables as v
from .poly import Poly, x, y, t

Point = Tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class FirstOrderOp:
    """First-order operator a*d/dx + b*d/dy + c*d/dt with Poly coefficients."""

    a: Poly
    b: Poly
    c: Poly
    name: str = ""

    def __post_init__(self):
        for coeff in (self.a, self.b, self.c):
            bad = coeff.variables() & ({v.U} | set(v.JETS))
            if bad:
                names = ", ".join(sorted(v.name_of(c) for c in bad))
                raise ValueError(f"vector field coefficients must be u/jet-free (found {names})")

    def __call__(self, e: Poly) -> Poly:
        return apply_field(self, e)

    def coefficients(self) -> tuple:
        return (self.a, self.b, self.c)

    def __str__(self) -> str:
        parts = []
        for coeff, sym in zip((self.a, self.b, self.c), ("dx", "dy", "dt")):
            if not coeff.is_zero():
                parts.append(f"({coeff})*{sym}")
        return " + ".join(parts) if parts else "0"


def apply_field(field: FirstOrderOp, e: Poly) -> Poly:
    """Apply a first-order operator to a polynomial (jets and parameters are
    treated as constants)."""
    return field.a * e.partial(v.X) + field.b * e.partial(v.Y) + field.c * e.partial(v.T)


X = FirstOrderOp(Poly.const(1), Poly.zero(), 2 * y, name="X")
Y = FirstOrderOp(Poly.zero(), Poly.const(1), -2 * x, name="Y")
T = FirstOrderOp(Poly.zero(), Poly.zero(), Poly.const(1), name="T")
X_TILDE = FirstOrderOp(Poly.const(1), Poly.zero(), -2 * y, name="Xt")
Y_TILDE = FirstOrderOp(Poly.zero(), Poly.const(1), 2 * x, name="Yt")


def kohn_laplace(e: Poly) -> Poly:
    """Sub-Laplacian X(X e) + Y(Y e), computed exactly."""
    return apply_field(X, apply_field(X, e)) + apply_field(Y, apply_field(Y, e))


def commutator(f: FirstOrderOp, g: FirstOrderOp) -> FirstOrderOp:
    """Commutator [f, g] as a first-order operator.

    Computed on coefficients: the i-th coefficient of [f, g] is
    f(g_i) - g(f_i).  Second-order parts of the composition cancel
    identically for well-formed vector fields, so none are ever built.
    """
    return FirstOrderOp(
        apply_field(f, g.a) - apply_field(g, f.a),
        apply_field(f, g.b) - apply_field(g, f.b),
        apply_field(f, g.c) - apply_field(g, f.c),
    )


def group_mul(p: Point, q: Point) -> Point:
    """Heisenberg product of two rational points."""
    px, py, pt = (Fraction(c) for c in p)
    qx, qy, qt = (Fraction(c) for c in q)
    return (px + qx, py + qy, pt + qt + 2 * (py * qx - px * qy))


def group_inverse(p: Point) -> Point:
    px, py, pt = (Fraction(c) for c in p)
    return (-px, -py, -pt)


def left_translate(a: Point, e: Poly) -> Poly:
    """Pull back a polynomial on H1 by left translation: e o L_a."""
    ax, ay, at = (Fraction(c) for c in a)
    return e.substitute({
        v.X: x + ax,
        v.Y: y + ay,
        v.T: t + at + 2 * (ay * x - ax * y),
    })
