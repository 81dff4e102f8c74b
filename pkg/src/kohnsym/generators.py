"""Named point-symmetry generators of the classification.

These fixtures are the human-readable anchors of the engine: the
always-present quadruple (T: time translation, R: rotation, Xt/Yt: the
right-invariant frame extended trivially to u), the scalings Z1/Z2/Z3 and
Z(p), and the three extra generators V1, V2, V3 of the f = 0 and critical
power cases.  W(beta) acts on u alone.
"""

from __future__ import annotations

from fractions import Fraction

from . import variables as v
from .poly import Poly, x, y, t
from .prolongation import VField

_0 = Poly.zero()
_1 = Poly.const(1)


def _vf(xi, phi, tau, alpha, beta, name) -> VField:
    return VField(xi, phi, tau, alpha, beta, name=name)


T = _vf(_0, _0, _1, _0, _0, "T")
R = _vf(y, -x, _0, _0, _0, "R")
XT = _vf(_1, _0, -2 * y, _0, _0, "Xt")
YT = _vf(_0, _1, 2 * x, _0, _0, "Yt")
Z1 = _vf(x, y, 2 * t, _0, _0, "Z1")
Z2 = _vf(_0, _0, _0, _1, _0, "Z2")
Z3 = _vf(x, y, 2 * t, _0, Poly.const(-2), "Z3")

V1 = _vf(
    x * t - x * x * y - y ** 3,
    y * t + x ** 3 + x * y * y,
    t * t - (x * x + y * y) ** 2,
    -t, _0, "V1",
)
V2 = _vf(
    t - 4 * x * y,
    3 * x * x - y * y,
    -2 * y * t - 2 * x ** 3 - 2 * x * y * y,
    2 * y, _0, "V2",
)
V3 = _vf(
    x * x - 3 * y * y,
    t + 4 * x * y,
    2 * x * t - 2 * x * x * y - 2 * y ** 3,
    -2 * x, _0, "V3",
)


def Z(p) -> VField:
    """Dilation for the power case: x dx + y dy + 2t dt + 2/(1-p) u du."""
    p = Fraction(p)
    if p == 1:
        raise ValueError("Z(p) requires p != 1")
    return _vf(x, y, 2 * t, Poly.const(Fraction(2, 1) / (1 - p)), _0, f"Z:{p}")


def Z_scaled_symbolic() -> VField:
    """(1-p)-multiple of the power-case dilation with p kept symbolic.

    The u-coefficient 2/(1-p) is not polynomial in p, so the symbolically
    verifiable representative is the rescaled generator
    (1-p)(x dx + y dy + 2t dt) + 2u du; the symmetry condition is linear in
    the generator, so a nonzero rational multiple has the same defect rank.
    """
    one_minus_p = Poly.const(1) - Poly.variable(v.P)
    return _vf(one_minus_p * x, one_minus_p * y, 2 * one_minus_p * t,
               Poly.const(2), _0, "Z~")


def W(beta: Poly) -> VField:
    """Shift of u by a function of the base variables."""
    return _vf(_0, _0, _0, _0, beta, f"W({beta})")


NAMED = {
    "T": T, "R": R, "Xt": XT, "Yt": YT,
    "Z1": Z1, "Z2": Z2, "Z3": Z3,
    "V1": V1, "V2": V2, "V3": V3,
}

# Display order for relabelled bases and commutator tables.
NAME_ORDER = ("T", "R", "Xt", "Yt", "Z", "Z1", "Z2", "Z3", "V1", "V2", "V3")


def lookup(spec: str) -> VField:
    """Resolve a generator name; Z takes its exponent as 'Z:<p>'."""
    if spec in NAMED:
        return NAMED[spec]
    if spec.startswith("Z:"):
        return Z(Fraction(spec[2:]))
    raise KeyError(f"unknown generator name {spec!r}")
