"""Variable universe shared by the whole engine.

Every symbol lives in a single integer-coded universe so that monomials can
be compared, hashed and rendered deterministically: the coordinates x, y, t,
the dependent variable u, the nine first- and second-order jet variables of
u, the scalar parameters k and p, and generated unknowns (opaque derivative
symbols used while re-deriving the determining equations, and the c_i
coefficients of polynomial ansaetze).

Codes order as coordinate < dependent < jet < parameter < generated, which
fixes the graded-lexicographic monomial order used everywhere for canonical
output.
"""

from __future__ import annotations

from fractions import Fraction

Rat = Fraction

# Fixed codes.
X = 0
Y = 1
T = 2
U = 3
UX, UY, UT = 4, 5, 6
UXX, UXY, UXT, UYY, UYT, UTT = 7, 8, 9, 10, 11, 12
K = 13
P = 14

COORDS = (X, Y, T)
FIRST_JETS = (UX, UY, UT)
SECOND_JETS = (UXX, UXY, UXT, UYY, UYT, UTT)
JETS = FIRST_JETS + SECOND_JETS
PARAMS = (K, P)

# Generated symbols: opaque unknown-function derivatives first (registered
# on demand from GEN_BASE), ansatz coefficients c_i in their own band so the
# two never collide regardless of registration order.
GEN_BASE = 15
ANSATZ_BASE = 200

_FIXED_NAMES = {
    X: "x", Y: "y", T: "t", U: "u",
    UX: "u_x", UY: "u_y", UT: "u_t",
    UXX: "u_xx", UXY: "u_xy", UXT: "u_xt",
    UYY: "u_yy", UYT: "u_yt", UTT: "u_tt",
    K: "k", P: "p",
}

_gen_names: dict[int, str] = {}
_gen_codes: dict[str, int] = {}
_next_gen = GEN_BASE


def register_symbol(name: str) -> int:
    """Register a generated symbol (idempotent) and return its code."""
    global _next_gen
    if name in _gen_codes:
        return _gen_codes[name]
    if name in _name_to_code_fixed():
        raise ValueError(f"symbol name {name!r} collides with a fixed variable")
    code = _next_gen
    if code >= ANSATZ_BASE:
        raise RuntimeError("generated-symbol band exhausted")
    _next_gen += 1
    _gen_names[code] = name
    _gen_codes[name] = code
    return code


def ansatz_unknown(i: int) -> int:
    """Code of the i-th ansatz coefficient c_i."""
    if i < 0:
        raise ValueError("ansatz index must be non-negative")
    return ANSATZ_BASE + i


def name_of(code: int) -> str:
    if code in _FIXED_NAMES:
        return _FIXED_NAMES[code]
    if code in _gen_names:
        return _gen_names[code]
    if code >= ANSATZ_BASE:
        return f"c{code - ANSATZ_BASE}"
    raise KeyError(f"unknown variable code {code}")


def _name_to_code_fixed() -> dict[str, int]:
    return {name: code for code, name in _FIXED_NAMES.items()}


def code_of(name: str) -> int:
    """Inverse of name_of; accepts fixed names, generated names and c<i>."""
    fixed = _name_to_code_fixed()
    if name in fixed:
        return fixed[name]
    if name in _gen_codes:
        return _gen_codes[name]
    if name.startswith("c") and name[1:].isdigit():
        return ansatz_unknown(int(name[1:]))
    raise KeyError(f"unknown variable name {name!r}")


def is_jet(code: int) -> bool:
    return UX <= code <= UTT


def is_second_jet(code: int) -> bool:
    return UXX <= code <= UTT


def is_coordinate(code: int) -> bool:
    return code <= T


# Total-derivative shift table: differentiating u or a first jet with
# respect to a coordinate lands on the canonical (symmetrised) jet.
TOTAL_SHIFT = {
    (U, X): UX, (U, Y): UY, (U, T): UT,
    (UX, X): UXX, (UX, Y): UXY, (UX, T): UXT,
    (UY, X): UXY, (UY, Y): UYY, (UY, T): UYT,
    (UT, X): UXT, (UT, Y): UYT, (UT, T): UTT,
}
