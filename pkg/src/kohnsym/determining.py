"""Mechanical re-derivation of the determining equations.

Running the second prolongation on a generator whose five components are
opaque unknown functions of (x, y, t), substituting into the symmetry
condition and eliminating u_xx on-shell turns the condition into an
identity in the remaining jet variables.  Collecting jet coefficients and
the free term yields nine linear differential equations in the unknowns
(xi, phi, tau, alpha, beta), labelled eq18..eq26; six further equations
eq27..eq33 form the reduced system (eq22 and eq26 are consequences).

Normalization of the collected coefficients, declared per label:

    eq18 <- coeff(u_yy) / 2      eq23 <- free term
    eq19 <- coeff(u_xy) / (-2)   eq24 <- coeff(u_xt) / 2
    eq20 <- coeff(u_x)  / (-1)   eq25 <- coeff(u_yt) / (-2)
    eq21 <- coeff(u_y)  / (-1)   eq26 <- coeff(u_tt) / 4
    eq22 <- coeff(u_t)  / (-1)

Equations are values of LinDet: linear expressions in derivative symbols of
the unknown functions with Poly coefficients in (x, y, t), graded by a tag
slot (plain or f-coupled, each with a u-weight of 0 or 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional

from . import variables as v
from .linalg import solve_columns
from .poly import Poly, x, y, t
from .prolongation import VField
from .verifier import FCase, symmetry_defect

FNS = ("xi", "phi", "tau", "alpha", "beta")

# Multi-indices over (x, y, t) in graded order.  The prolongation only needs
# order two; order three appears when dependency certificates differentiate
# the second-order equations.
MUS = tuple((ex, ey, d - ex - ey)
            for d in range(4)
            for ex in range(d, -1, -1)
            for ey in range(d - ex, -1, -1))

_COORD_STEP = {v.X: (1, 0, 0), v.Y: (0, 1, 0), v.T: (0, 0, 1)}


def _suffix(mu: tuple) -> str:
    s = "x" * mu[0] + "y" * mu[1] + "t" * mu[2]
    return f"_{s}" if s else ""


# Register the derivative symbols once, in a fixed order, so codes (and any
# output depending on them) are stable across processes.
SYM_CODE: dict = {}
CODE_SYM: dict = {}
for _fn in FNS:
    for _mu in MUS:
        _code = v.register_symbol(f"{_fn}{_suffix(_mu)}")
        SYM_CODE[(_fn, _mu)] = _code
        CODE_SYM[_code] = (_fn, _mu)


def unknown_symbol(fn: str, mu: tuple = (0, 0, 0)) -> Poly:
    return Poly.variable(SYM_CODE[(fn, mu)])


def unknown_diff(e: Poly, coord: int) -> Poly:
    """Partial derivative aware of the opaque unknown-function symbols."""
    out = e.partial(coord)
    step = _COORD_STEP[coord]
    for code in e.variables():
        sym = CODE_SYM.get(code)
        if sym is None:
            continue
        fn, mu = sym
        nxt = (mu[0] + step[0], mu[1] + step[1], mu[2] + step[2])
        if sum(nxt) > 3:
            raise ValueError("derivative order above three is outside the symbol table")
        out = out + e.partial(code) * Poly.variable(SYM_CODE[(fn, nxt)])
    return out


# -- LinDet: linear differential expressions in the unknowns ---------------

# Tag slots: ("plain" | "f" | "fprime", u-weight).  Only the f-coupled
# equation uses anything beyond ("plain", 0).
SLOTS = (("fprime", 1), ("fprime", 0), ("plain", 1), ("plain", 0), ("f", 0))


class LinDet:
    """Linear expression sum coeff(x,y,t) * D^mu(fn), graded by tag slot."""

    __slots__ = ("slots",)

    def __init__(self, slots=None):
        clean: dict = {}
        if slots:
            for slot, terms in slots.items():
                bucket: dict = {}
                for key, coeff in terms.items():
                    poly = coeff if isinstance(coeff, Poly) else Poly.const(coeff)
                    if not poly.is_zero():
                        bucket[key] = bucket.get(key, Poly.zero()) + poly
                bucket = {k: p for k, p in bucket.items() if not p.is_zero()}
                if bucket:
                    clean[slot] = bucket
        object.__setattr__(self, "slots", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LinDet is immutable")

    @classmethod
    def plain(cls, terms: dict) -> "LinDet":
        return cls({("plain", 0): terms})

    def is_zero(self) -> bool:
        return not self.slots

    def __eq__(self, other):
        if not isinstance(other, LinDet):
            return NotImplemented
        return self.slots == other.slots

    def __hash__(self):
        raise TypeError("LinDet is not hashable")

    def __add__(self, other: "LinDet") -> "LinDet":
        merged = {slot: dict(terms) for slot, terms in self.slots.items()}
        for slot, terms in other.slots.items():
            bucket = merged.setdefault(slot, {})
            for key, poly in terms.items():
                bucket[key] = bucket.get(key, Poly.zero()) + poly
        return LinDet(merged)

    def __sub__(self, other: "LinDet") -> "LinDet":
        return self + other.scale(-1)

    def __neg__(self) -> "LinDet":
        return self.scale(-1)

    def scale(self, factor) -> "LinDet":
        if isinstance(factor, (int, Fraction)):
            factor = Poly.const(factor)
        return LinDet({slot: {key: poly * factor for key, poly in terms.items()}
                       for slot, terms in self.slots.items()})

    def deriv(self, coord: int) -> "LinDet":
        """Coordinate derivative with the product rule on coefficients."""
        step = _COORD_STEP[coord]
        out: dict = {}
        for slot, terms in self.slots.items():
            bucket = out.setdefault(slot, {})
            for (fn, mu), poly in terms.items():
                dp = poly.partial(coord)
                if not dp.is_zero():
                    bucket[(fn, mu)] = bucket.get((fn, mu), Poly.zero()) + dp
                nxt = (mu[0] + step[0], mu[1] + step[1], mu[2] + step[2])
                if sum(nxt) > 3:
                    raise ValueError("derivative escapes the order-three table")
                bucket[(fn, nxt)] = bucket.get((fn, nxt), Poly.zero()) + poly
        return LinDet(out)

    def substitute(self, values: dict) -> dict:
        """Evaluate on a concrete generator: values maps fn name -> Poly.

        Returns the slot map with each term replaced by
        coeff * d^mu(values[fn]); only Plain slots are evaluated (the
        f-coupled slots have no meaning for a concrete field here).
        """
        out = {}
        for slot, terms in self.slots.items():
            total = Poly.zero()
            for (fn, mu), poly in terms.items():
                comp = values[fn]
                for coord, n in zip(v.COORDS, mu):
                    for _ in range(n):
                        comp = comp.partial(coord)
                total = total + poly * comp
            out[slot] = total
        return out

    def vectorize(self) -> dict:
        """Flat exact-coefficient view for linear solves."""
        vec = {}
        for slot, terms in self.slots.items():
            for key, poly in terms.items():
                for mono, coeff in poly.terms.items():
                    vec[(slot, key, mono)] = coeff
        return vec

    def render(self) -> str:
        if not self.slots:
            return "0"
        chunks = []
        for slot in SLOTS:
            terms = self.slots.get(slot)
            if not terms:
                continue
            kind, uw = slot
            ordered = sorted(terms.items(),
                             key=lambda kv: (FNS.index(kv[0][0]), MUS.index(kv[0][1])))
            for (fn, mu), poly in ordered:
                name = f"{fn}{_suffix(mu)}"
                if poly == Poly.const(1):
                    body = name
                elif poly == Poly.const(-1):
                    body = f"-{name}"
                elif poly.is_constant() or len(poly.terms) == 1:
                    body = f"{poly}*{name}"
                else:
                    body = f"({poly})*{name}"
                if uw:
                    body += "*u"
                if kind == "f":
                    body += "*f(u)"
                elif kind == "fprime":
                    body += "*f'(u)"
                chunks.append(body)
        text = ""
        for i, chunk in enumerate(chunks):
            if i == 0:
                text = chunk
            elif chunk.startswith("-"):
                text += f" - {chunk[1:]}"
            else:
                text += f" + {chunk}"
        return text

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"LinDet({self.render()})"


@dataclass(frozen=True)
class DetSystem:
    """Labelled sequence of determining equations."""

    equations: tuple

    def __post_init__(self):
        labels = [label for label, _ in self.equations]
        if len(labels) != len(set(labels)):
            raise ValueError("duplicate equation labels")

    def __getitem__(self, label: str) -> LinDet:
        for lab, eq in self.equations:
            if lab == label:
                return eq
        raise KeyError(label)

    def labels(self) -> list:
        return [label for label, _ in self.equations]

    def items(self) -> tuple:
        return self.equations


# -- transcription targets --------------------------------------------------


def _L(terms: dict) -> LinDet:
    return LinDet.plain(terms)


def _xop(fn: str) -> dict:
    return {(fn, (1, 0, 0)): Poly.const(1), (fn, (0, 0, 1)): 2 * y}


def _yop(fn: str) -> dict:
    return {(fn, (0, 1, 0)): Poly.const(1), (fn, (0, 0, 1)): -2 * x}


def _lap(fn: str) -> dict:
    return {
        (fn, (2, 0, 0)): Poly.const(1),
        (fn, (0, 2, 0)): Poly.const(1),
        (fn, (0, 0, 2)): 4 * (x * x + y * y),
        (fn, (1, 0, 1)): 4 * y,
        (fn, (0, 1, 1)): -4 * x,
    }


def _merge(*term_maps, scales=None) -> dict:
    out: dict = {}
    scales = scales or [1] * len(term_maps)
    for terms, s in zip(term_maps, scales):
        factor = s if isinstance(s, Poly) else Poly.const(s)
        for key, poly in terms.items():
            poly = poly if isinstance(poly, Poly) else Poly.const(poly)
            out[key] = out.get(key, Poly.zero()) + poly * factor
    return out


def transcribed_nine() -> DetSystem:
    """The nine determining equations transcribed term by term."""
    one = Poly.const(1)
    eq18 = _L({("xi", (1, 0, 0)): one, ("xi", (0, 0, 1)): 2 * y,
               ("phi", (0, 1, 0)): -one, ("phi", (0, 0, 1)): 2 * x})
    eq19 = _L({("xi", (0, 1, 0)): one, ("xi", (0, 0, 1)): -2 * x,
               ("phi", (1, 0, 0)): one, ("phi", (0, 0, 1)): 2 * y})
    eq20 = _L(_merge(_lap("xi"), _xop("alpha"), scales=[1, -2]))
    eq21 = _L(_merge(_lap("phi"), _yop("alpha"), scales=[1, -2]))
    eq22 = _L(_merge(_lap("tau"), _xop("alpha"), _yop("alpha"),
                     scales=[1, -4 * y, 4 * x]))
    eq23 = LinDet({
        ("fprime", 1): {("alpha", (0, 0, 0)): one},
        ("fprime", 0): {("beta", (0, 0, 0)): one},
        ("plain", 1): _lap("alpha"),
        ("plain", 0): _lap("beta"),
        ("f", 0): {("xi", (0, 0, 1)): 4 * y, ("xi", (1, 0, 0)): 2 * one,
                   ("alpha", (0, 0, 0)): -one},
    })
    eq24 = _L({("xi", (1, 0, 0)): 2 * y, ("xi", (0, 1, 0)): 2 * x,
               ("xi", (0, 0, 1)): 4 * (y * y - x * x),
               ("phi", (0, 0, 0)): 2 * one,
               ("tau", (1, 0, 0)): -one, ("tau", (0, 0, 1)): -2 * y})
    eq25 = _L({("xi", (1, 0, 0)): 4 * x, ("xi", (0, 0, 1)): 8 * x * y,
               ("xi", (0, 0, 0)): 2 * one,
               ("phi", (1, 0, 0)): 2 * y, ("phi", (0, 1, 0)): -2 * x,
               ("phi", (0, 0, 1)): 4 * (x * x + y * y),
               ("tau", (0, 1, 0)): one, ("tau", (0, 0, 1)): -2 * x})
    eq26 = _L({("xi", (1, 0, 0)): 2 * (x * x + y * y),
               ("xi", (0, 0, 1)): 4 * y * (x * x + y * y),
               ("xi", (0, 0, 0)): 2 * x,
               ("phi", (0, 0, 0)): 2 * y,
               ("tau", (1, 0, 0)): -y, ("tau", (0, 1, 0)): x,
               ("tau", (0, 0, 1)): -2 * (x * x + y * y)})
    return DetSystem((
        ("eq18", eq18), ("eq19", eq19), ("eq20", eq20), ("eq21", eq21),
        ("eq22", eq22), ("eq23", eq23), ("eq24", eq24), ("eq25", eq25),
        ("eq26", eq26),
    ))


def reduced_system() -> DetSystem:
    """The seven-equation reduced system with X and Y expanded."""
    one = Poly.const(1)
    eq27 = _L(_merge(_xop("xi"), _yop("phi"), scales=[1, -1]))
    eq28 = _L(_merge(_yop("xi"), _xop("phi"), scales=[1, 1]))
    eq29 = _L(_merge(_lap("xi"), _xop("alpha"), scales=[1, -2]))
    eq30 = _L(_merge(_lap("phi"), _yop("alpha"), scales=[1, -2]))
    eq31 = LinDet({
        ("fprime", 1): {("alpha", (0, 0, 0)): one},
        ("fprime", 0): {("beta", (0, 0, 0)): one},
        ("plain", 1): _lap("alpha"),
        ("plain", 0): _lap("beta"),
        ("f", 0): _merge(_xop("xi"), {("alpha", (0, 0, 0)): -one}, scales=[2, 1]),
    })
    eq32 = _L(_merge(_xop("tau"), _xop("xi"), _yop("xi"),
                     {("phi", (0, 0, 0)): one},
                     scales=[1, -2 * y, -2 * x, -2]))
    eq33 = _L(_merge(_yop("tau"), _xop("xi"), _yop("xi"),
                     {("xi", (0, 0, 0)): one},
                     scales=[1, 2 * x, -2 * y, 2]))
    return DetSystem((
        ("eq27", eq27), ("eq28", eq28), ("eq29", eq29), ("eq30", eq30),
        ("eq31", eq31), ("eq32", eq32), ("eq33", eq33),
    ))


# -- mechanical derivation ---------------------------------------------------

_NORMALIZATION = {
    "eq18": (v.UYY, Fraction(2)),
    "eq19": (v.UXY, Fraction(-2)),
    "eq20": (v.UX, Fraction(-1)),
    "eq21": (v.UY, Fraction(-1)),
    "eq22": (v.UT, Fraction(-1)),
    "eq24": (v.UXT, Fraction(2)),
    "eq25": (v.UYT, Fraction(-2)),
    "eq26": (v.UTT, Fraction(4)),
}


def normalization_table() -> dict:
    """Label -> (collected jet coefficient, divisor) as declared above."""
    return {label: (v.name_of(jet), div) for label, (jet, div) in _NORMALIZATION.items()}


def _poly_to_terms(poly: Poly) -> dict:
    """Split a Poly that is linear in the unknown symbols into LinDet terms."""
    out: dict = {}
    for mono, coeff in poly.terms.items():
        sym = None
        rest = []
        for code, exp in mono:
            if code in CODE_SYM:
                if sym is not None or exp != 1:
                    raise AssertionError("collected coefficient is not linear in the unknowns")
                sym = CODE_SYM[code]
            else:
                rest.append((code, exp))
        if sym is None:
            raise AssertionError("collected coefficient has a term free of the unknowns")
        key = sym
        out.setdefault(key, {})[tuple(rest)] = coeff
    return {key: Poly(terms) for key, terms in out.items()}


def _split_u(poly: Poly) -> tuple:
    """(u-free part, coefficient of u); degree in u must be <= 1."""
    if poly.degree_in(v.U) > 1:
        raise AssertionError("free term is not affine in u")
    cu = poly.partial(v.U)
    return poly - cu * Poly.variable(v.U), cu


def derive_determining() -> DetSystem:
    """Re-derive the nine determining equations from the prolongation.

    The result is asserted (in tests and the acceptance suite) to coincide
    with `transcribed_nine` exactly.
    """
    S = VField(unknown_symbol("xi"), unknown_symbol("phi"), unknown_symbol("tau"),
               unknown_symbol("alpha"), unknown_symbol("beta"))
    defect = symmetry_defect(S, FCase.arbitrary(), diff=unknown_diff)

    from .gexpr import F, FPRIME, PLAIN

    plain = defect.get(PLAIN)
    f_part = defect.get(F)
    fp_part = defect.get(FPRIME)

    jets_in_plain = plain.variables() & set(v.JETS)
    coeffs = {}
    stripped = plain
    for jet in sorted(jets_in_plain):
        if plain.degree_in(jet) > 1:
            raise AssertionError("on-shell condition must be linear in each jet")
        c = plain.partial(jet)
        coeffs[jet] = c
        stripped = stripped - c * Poly.variable(jet)
    free = stripped

    equations = {}
    for label, (jet, div) in _NORMALIZATION.items():
        poly = coeffs.get(jet, Poly.zero()) * (1 / div)
        equations[label] = LinDet({("plain", 0): _poly_to_terms(poly)})

    free0, free1 = _split_u(free)
    f0, f1 = _split_u(f_part)
    fp0, fp1 = _split_u(fp_part)
    if not f1.is_zero():
        raise AssertionError("f-coupled coefficient should be u-free")
    equations["eq23"] = LinDet({
        ("fprime", 1): _poly_to_terms(fp1),
        ("fprime", 0): _poly_to_terms(fp0),
        ("plain", 1): _poly_to_terms(free1),
        ("plain", 0): _poly_to_terms(free0),
        ("f", 0): _poly_to_terms(f0),
    })

    order = ("eq18", "eq19", "eq20", "eq21", "eq22", "eq23", "eq24", "eq25", "eq26")
    return DetSystem(tuple((label, equations[label]) for label in order))


# -- dependency checks -------------------------------------------------------


def combination_residual(target: LinDet, parts: Iterable) -> LinDet:
    """target - sum multiplier * equation, as an exact LinDet."""
    acc = target
    for mult, eq in parts:
        acc = acc - eq.scale(mult)
    return acc


def _xyz_monomials(max_degree: int) -> list:
    out = []
    for d in range(max_degree + 1):
        for ex in range(d, -1, -1):
            for ey in range(d - ex, -1, -1):
                et = d - ex - ey
                out.append((x ** ex) * (y ** ey) * (t ** et))
    return out


_DERIV_OPS = (("", None), ("dx", v.X), ("dy", v.Y), ("dt", v.T))


def find_combination(target: LinDet, generators: list, degree: int = 2,
                     use_derivatives: bool = False) -> Optional[list]:
    """Search for target = sum m_(g,D) * D(g) with Poly multipliers.

    generators: list of (label, LinDet).  D ranges over the identity and,
    when use_derivatives is set, the three coordinate derivatives.  Returns
    a list of (label, op, multiplier Poly) for the nonzero multipliers, or
    None when the target is outside the module searched.
    """
    ops = _DERIV_OPS if use_derivatives else _DERIV_OPS[:1]
    monos = _xyz_monomials(degree)
    columns = []
    meta = []
    for label, eq in generators:
        for op_label, coord in ops:
            base = eq if coord is None else eq.deriv(coord)
            for mono in monos:
                columns.append(base.scale(mono).vectorize())
                meta.append((label, op_label, mono))
    sol = solve_columns(columns, target.vectorize(), Fraction(1))
    if sol is None:
        return None
    grouped: dict = {}
    for coeff, (label, op_label, mono) in zip(sol, meta):
        if coeff:
            key = (label, op_label)
            grouped[key] = grouped.get(key, Poly.zero()) + mono * coeff
    out = [(label, op_label, poly) for (label, op_label), poly in grouped.items()]
    out.sort(key=lambda item: (item[0], item[1]))
    return out


def apply_combination(parts: list, system: DetSystem) -> LinDet:
    """Evaluate a certificate produced by find_combination."""
    acc = LinDet()
    for label, op_label, mult in parts:
        eq = system[label]
        for name, coord in _DERIV_OPS:
            if name == op_label and coord is not None:
                eq = eq.deriv(coord)
        acc = acc + eq.scale(mult)
    return acc


@dataclass(frozen=True)
class DependencyReport:
    """Outcome of the redundancy checks on the nine equations."""

    literal_residual: LinDet
    literal_holds: bool
    eq26_certificate: Optional[list]
    eq22_certificate: Optional[list]
    eq22_generators: tuple

    @property
    def eq26_derivable(self) -> bool:
        return self.eq26_certificate is not None

    @property
    def eq22_derivable(self) -> bool:
        return self.eq22_certificate is not None


def check_dependencies(system: DetSystem) -> DependencyReport:
    """Verify the stated redundancies among the nine equations.

    The literal combination eq26 = y*eq24 + x*eq25 - x*eq18 - y*eq19 is
    evaluated exactly and its residual reported (it does not vanish: the
    true multipliers on eq18 and eq19 are -2x^2 and -2xy, found below).
    eq22 additionally needs eq20 and eq21 with first-order derivative
    multipliers, since eq18/eq19/eq24/eq25 do not involve alpha at all.
    """
    eq18, eq19 = system["eq18"], system["eq19"]
    eq24, eq25, eq26 = system["eq24"], system["eq25"], system["eq26"]
    literal = combination_residual(
        eq26, [(y, eq24), (x, eq25), (-x, eq18), (-y, eq19)])

    core = [("eq18", eq18), ("eq19", eq19), ("eq24", eq24), ("eq25", eq25)]
    cert26 = find_combination(eq26, core, degree=2, use_derivatives=False)

    cert22 = find_combination(system["eq22"], core, degree=2, use_derivatives=True)
    used = ("eq18", "eq19", "eq24", "eq25")
    if cert22 is None:
        extended = core + [("eq20", system["eq20"]), ("eq21", system["eq21"])]
        cert22 = find_combination(system["eq22"], extended, degree=2,
                                  use_derivatives=True)
        used = ("eq18", "eq19", "eq20", "eq21", "eq24", "eq25")
    return DependencyReport(literal, literal.is_zero(), cert26, cert22, used)


def reduction_combinations() -> dict:
    """Each reduced equation as an exact Poly-multiplier combination of the
    nine; verified identically in tests."""
    return {
        "eq27": [("eq18", Poly.const(1))],
        "eq28": [("eq19", Poly.const(1))],
        "eq29": [("eq20", Poly.const(1))],
        "eq30": [("eq21", Poly.const(1))],
        "eq31": [("eq23", Poly.const(1))],
        "eq32": [("eq24", Poly.const(-1))],
        "eq33": [("eq25", Poly.const(1)), ("eq18", -2 * x), ("eq19", -2 * y)],
    }


# -- consequences of the determining equations ------------------------------

CONSEQUENCE_IDS = ("lap_phi", "lap_xi", "x_alpha", "y_alpha", "tau_t", "alpha_t")


@dataclass(frozen=True)
class ConsequenceReport:
    results: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)

    @property
    def all_hold(self) -> bool:
        return all(self.results.values())


def check_consequences(S: VField) -> ConsequenceReport:
    """Evaluate the six identities every solution of the reduced system
    satisfies: lap(phi) = 4 xi_t, lap(xi) = -4 phi_t, X(alpha) = -2 phi_t,
    Y(alpha) = 2 xi_t, tau_t = 2y xi_t - 2x phi_t + 2 X(xi), and
    alpha_t = -(X xi)_t.  Exact pass/fail per identity."""
    from .geometry import X as XOP, Y as YOP, kohn_laplace

    xi_t = S.xi.partial(v.T)
    phi_t = S.phi.partial(v.T)
    residuals = {
        "lap_phi": kohn_laplace(S.phi) - 4 * xi_t,
        "lap_xi": kohn_laplace(S.xi) + 4 * phi_t,
        "x_alpha": XOP(S.alpha) + 2 * phi_t,
        "y_alpha": YOP(S.alpha) - 2 * xi_t,
        "tau_t": S.tau.partial(v.T) - 2 * y * xi_t + 2 * x * phi_t - 2 * XOP(S.xi),
        "alpha_t": S.alpha.partial(v.T) + XOP(S.xi).partial(v.T),
    }
    results = {key: res.is_zero() for key, res in residuals.items()}
    return ConsequenceReport(results, residuals)
