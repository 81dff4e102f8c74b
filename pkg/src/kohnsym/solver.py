"""Re-derivation of the classification by an exact polynomial-ansatz solve.

Each of the five generator components is posited as a polynomial of bounded
degree in (x, y, t) with fresh unknown coefficients.  Substituting into the
reduced determining system plus the per-case splitting of the f-coupled
equation makes every monomial coefficient a homogeneous linear constraint
over those unknowns; the symmetry algebra (restricted to polynomial
infinitesimals of that degree) is exactly the kernel.

The per-case splittings of the f-coupled equation are:

    arbitrary   alpha = 0, beta = 0, X(xi) = 0
    zero        lap(alpha) = 0                      (beta: lap(beta) = 0)
    const c     lap(alpha) = 0, 2 X(xi) - alpha = 0
    linear k    lap(alpha) + 2k X(xi) = 0           (beta: lap(beta) + k beta = 0)
    power k,p   (p-1) alpha + 2 X(xi) = 0, lap(alpha) = 0, beta = 0
    exp k       alpha = 0, beta = alpha - 2 X(xi) (substituted), lap(beta) = 0

beta is carried as solver unknowns only for the zero and linear cases (and
even there `classify` excludes it: the beta directions are the separate
kernel of lap(beta) + k beta = 0, see `beta_kernel`).  For the exponential
case beta is not free: it is reconstructed from xi after solving.

With a symbolic exponent the matrix lives over Q(p) and elimination tracks
pivots that vanish at candidate special values; k never enters the matrix
(it is normalized away since k != 0 throughout).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import variables as v
from .gexpr import GExpr
from .geometry import kohn_laplace
from .linalg import (RF_ONE, RatFunc, SymbolicKernel, in_span, nullspace_field,
                     nullspace_rational, poly_to_ratfunc, ratfunc_to_poly,
                     rows_to_int, solve_columns)
from ._backend import kernels
from .poly import Poly, mono_key, x, y, t
from .prolongation import VField
from .verifier import SYMBOLIC, FCase, verify_generator
from . import generators as named_gens

COMPONENTS = ("xi", "phi", "tau", "alpha", "beta")


def monomials_upto(degree: int) -> list:
    """All (x, y, t) monomials of total degree <= degree, canonical order."""
    monos = []
    for ex in range(degree + 1):
        for ey in range(degree + 1 - ex):
            for et in range(degree + 1 - ex - ey):
                mono = tuple((c, e) for c, e in ((v.X, ex), (v.Y, ey), (v.T, et)) if e)
                monos.append(mono)
    monos.sort(key=mono_key)
    return monos


@dataclass(frozen=True)
class Ansatz:
    """Degree-bounded polynomial ansatz with distinct unknown coefficients."""

    degree: int
    components: dict  # component name -> Poly with ansatz unknowns
    unknown_count: int

    @staticmethod
    def build(degree: int) -> "Ansatz":
        monos = monomials_upto(degree)
        comps = {}
        idx = 0
        for name in COMPONENTS:
            poly = Poly.zero()
            for mono in monos:
                c = Poly.variable(v.ansatz_unknown(idx))
                poly = poly + c * Poly({mono: Fraction(1)})
                idx += 1
            comps[name] = poly
        return Ansatz(degree, comps, idx)


def _xop(e: Poly) -> Poly:
    return e.partial(v.X) + 2 * y * e.partial(v.T)


def _yop(e: Poly) -> Poly:
    return e.partial(v.Y) - 2 * x * e.partial(v.T)


def _case_rows(fc: FCase, include_beta: bool) -> list:
    """Per-case extra operators (label, callable on the component dict)."""
    if fc.kind == "arbitrary":
        return [("f:x_xi", lambda c: _xop(c["xi"]))]
    if fc.kind == "zero":
        rows = [("f:lap_alpha", lambda c: kohn_laplace(c["alpha"]))]
        if include_beta:
            rows.append(("f:lap_beta", lambda c: kohn_laplace(c["beta"])))
        return rows
    if fc.kind == "const":
        return [
            ("f:lap_alpha", lambda c: kohn_laplace(c["alpha"])),
            ("f:shift", lambda c: 2 * _xop(c["xi"]) - c["alpha"]),
        ]
    if fc.kind == "linear":
        k = Fraction(1) if fc.k is SYMBOLIC else fc.k
        rows = [("f:lap_alpha", lambda c: kohn_laplace(c["alpha"]) + 2 * k * _xop(c["xi"]))]
        if include_beta:
            rows.append(("f:lap_beta", lambda c: kohn_laplace(c["beta"]) + k * c["beta"]))
        return rows
    if fc.kind == "power":
        p_factor = (Poly.variable(v.P) if fc.p is SYMBOLIC else Poly.const(fc.p)) - 1
        return [
            ("f:scaling", lambda c: p_factor * c["alpha"] + 2 * _xop(c["xi"])),
            ("f:lap_alpha", lambda c: kohn_laplace(c["alpha"])),
        ]
    if fc.kind == "exp":
        return [("f:lap_beta", lambda c: kohn_laplace(c["alpha"] - 2 * _xop(c["xi"])))]
    raise ValueError(f"unsupported case {fc.kind}")


def _geometric_rows() -> list:
    return [
        ("eq27", lambda c: _xop(c["xi"]) - _yop(c["phi"])),
        ("eq28", lambda c: _yop(c["xi"]) + _xop(c["phi"])),
        ("eq29", lambda c: kohn_laplace(c["xi"]) - 2 * _xop(c["alpha"])),
        ("eq30", lambda c: kohn_laplace(c["phi"]) - 2 * _yop(c["alpha"])),
        ("eq32", lambda c: _xop(c["tau"]) - 2 * y * _xop(c["xi"]) - 2 * x * _yop(c["xi"]) - 2 * c["phi"]),
        ("eq33", lambda c: _yop(c["tau"]) + 2 * x * _xop(c["xi"]) - 2 * y * _yop(c["xi"]) + 2 * c["xi"]),
    ]


def excluded_components(fc: FCase, include_beta: Optional[bool] = None) -> tuple:
    """Components forced to zero (not carried as unknown columns)."""
    if include_beta is None:
        include_beta = fc.kind in ("zero", "linear")
    out = []
    if fc.kind in ("arbitrary", "exp"):
        out.append("alpha")
    if fc.kind in ("arbitrary", "const", "power", "exp") or not include_beta:
        out.append("beta")
    return tuple(out)


@dataclass(frozen=True)
class ExactMatrix:
    """Assembled homogeneous linear system over the ansatz unknowns."""

    fc: FCase
    degree: int
    rows: list  # list of dict[col -> Fraction | Poly-in-p]
    ncols: int
    columns: list  # (component name, monomial) per column
    symbolic: bool
    included: tuple
    notes: tuple = ()

    @property
    def nrows(self) -> int:
        return len(self.rows)


def assemble(fc: FCase, degree: int, include_beta: Optional[bool] = None) -> ExactMatrix:
    """Build the exact constraint matrix for a case at an ansatz degree."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    notes = []
    if fc.kind == "power" and fc.p == 2:
        notes.append("p=2: solvable by the engine, but the equation has no "
                     "solutions at this exponent (nonexistence), so the "
                     "classification here is formal")
    excluded = excluded_components(fc, include_beta)
    included = tuple(n for n in COMPONENTS if n not in excluded)
    monos = monomials_upto(degree)
    columns = [(name, mono) for name in included for mono in monos]
    col_index = {key: i for i, key in enumerate(columns)}

    ops = _geometric_rows() + _case_rows(
        fc, include_beta if include_beta is not None else fc.kind in ("zero", "linear"))

    symbolic = fc.kind == "power" and fc.p is SYMBOLIC
    zero = Poly.zero()
    row_map: dict = {}
    for op_idx, (label, op) in enumerate(ops):
        for name, mono in columns:
            comps = {n: zero for n in COMPONENTS}
            comps[name] = Poly({mono: Fraction(1)})
            image = op(comps)
            if image.is_zero():
                continue
            col = col_index[(name, mono)]
            for img_mono, coeff in image.terms.items():
                xyz = []
                p_part = []
                for code, exp in img_mono:
                    (p_part if code == v.P else xyz).append((code, exp))
                entry_key = (op_idx, tuple(xyz))
                row = row_map.setdefault(entry_key, {})
                add = Poly({tuple(p_part): coeff}) if symbolic else coeff
                prev = row.get(col)
                row[col] = add if prev is None else prev + add
    ordered_keys = sorted(row_map, key=lambda key: (key[0], mono_key(key[1])))
    rows = []
    for key in ordered_keys:
        row = {c: val for c, val in row_map[key].items()
               if (not val.is_zero() if symbolic else val != 0)}
        if row:
            rows.append(row)
    return ExactMatrix(fc, degree, rows, len(columns), columns, symbolic,
                       included, tuple(notes))


def nullspace(matrix: ExactMatrix) -> list:
    """Exact kernel basis; vectors are dense lists over the matrix columns.

    Rational matrices give Fraction entries; symbolic ones give Poly
    entries in p with denominators cleared per vector.
    """
    if not matrix.symbolic:
        return nullspace_rational(matrix.rows, matrix.ncols)
    rf_rows = [{c: poly_to_ratfunc(val, v.P) / RF_ONE for c, val in row.items()}
               for row in matrix.rows]
    basis, _ = nullspace_field(rf_rows, matrix.ncols, RF_ONE)
    out = []
    for vec in basis:
        dens = [rf.den for rf in vec.values()]
        lcm = (Fraction(1),)
        from .linalg import _uni_divmod, _uni_gcd, _uni_mul
        for den in dens:
            g = _uni_gcd(lcm, den)
            quot, _ = _uni_divmod(den, g)
            lcm = _uni_mul(lcm, quot)
        scale = RatFunc(lcm)
        dense = [Poly.zero()] * matrix.ncols
        for c, rf in vec.items():
            dense[c] = ratfunc_to_poly(rf * scale, v.P)
        out.append(dense)
    return out


def symbolic_pivot_report(matrix: ExactMatrix, probe_values=(0, 1, 2, 3)) -> SymbolicKernel:
    """Kernel over Q(p) with the vanishing-pivot bookkeeping."""
    if not matrix.symbolic:
        raise ValueError("pivot report is only defined for symbolic matrices")
    from .linalg import nullspace_symbolic
    rf_rows = [{c: poly_to_ratfunc(val, v.P) for c, val in row.items()}
               for row in matrix.rows]
    return nullspace_symbolic(rf_rows, matrix.ncols, probe_values)


def _vector_components(matrix: ExactMatrix, vec: list) -> dict:
    comps = {name: Poly.zero() for name in COMPONENTS}
    for (name, mono), entry in zip(matrix.columns, vec):
        if isinstance(entry, Poly):
            if entry.is_zero():
                continue
            comps[name] = comps[name] + entry * Poly({mono: Fraction(1)})
        elif entry:
            comps[name] = comps[name] + Poly({mono: entry})
    return comps


def _reconstruct_field(matrix: ExactMatrix, vec: list) -> VField:
    comps = _vector_components(matrix, vec)
    if matrix.fc.kind == "exp":
        comps["beta"] = comps["alpha"] - 2 * _xop(comps["xi"])
    return VField(comps["xi"], comps["phi"], comps["tau"], comps["alpha"], comps["beta"])


def named_family(fc: FCase) -> Optional[list]:
    """The expected basis for a concrete case, by name."""
    g = named_gens
    base = [g.T, g.R, g.XT, g.YT]
    if fc.kind == "arbitrary":
        return base
    if fc.kind == "zero":
        return base + [g.Z1, g.Z2, g.V1, g.V2, g.V3]
    if fc.kind == "linear":
        return base + [g.Z2]
    if fc.kind == "exp":
        return base + [g.Z3]
    if fc.kind == "power" and fc.p is not SYMBOLIC:
        if fc.p == 3:
            return base + [g.Z(3), g.V1, g.V2, g.V3]
        return base + [g.Z(fc.p)]
    return None


def vfield_vector(S: VField) -> dict:
    """Sparse exact-coefficient view of a generator for span computations."""
    out = {}
    for idx, comp in enumerate(S.components()):
        for mono, coeff in comp.terms.items():
            out[(idx, mono)] = coeff
    return out


def spans_match(basis_a: list, basis_b: list) -> bool:
    """Exact mutual membership of two generator families."""
    va = [vfield_vector(S) for S in basis_a]
    vb = [vfield_vector(S) for S in basis_b]
    one = Fraction(1)
    return (all(in_span(va, w, one) for w in vb)
            and all(in_span(vb, w, one) for w in va))


@dataclass(frozen=True)
class ClassifyResult:
    fc: FCase
    degree: int
    matrix: ExactMatrix
    basis: list  # VField kernel basis, deterministic order
    verified: list  # per-generator verify_generator verdicts
    named_basis: Optional[list]  # relabelled family when spans agree
    notes: tuple = ()

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def all_verified(self) -> bool:
        return all(self.verified)

    def display_basis(self) -> list:
        return self.named_basis if self.named_basis is not None else self.basis


def classify(fc: FCase, degree: int = 4) -> ClassifyResult:
    """Solve the determining system over the polynomial ansatz.

    beta columns are excluded here for the zero/linear cases; their
    contribution is the separate W family computed by `beta_kernel`.
    Every kernel vector is passed back through the symmetry verifier.
    """
    matrix = assemble(fc, degree, include_beta=False)
    vecs = nullspace(matrix)
    basis = [_reconstruct_field(matrix, vec) for vec in vecs]
    verified = [verify_generator(S, fc).is_symmetry for S in basis]
    named = None
    expected = named_family(fc)
    if expected is not None and len(expected) == len(basis):
        if spans_match(basis, expected):
            named = expected
    return ClassifyResult(fc, degree, matrix, basis, verified, named, matrix.notes)


def beta_kernel(fc: FCase, degree: int) -> list:
    """Polynomial solutions of lap(beta) + k beta = 0 up to a degree.

    k = 0 for the zero case; the linear case requires a concrete k.  The
    same exact nullspace machinery runs over the monomial basis.
    """
    if fc.kind == "zero":
        k = Fraction(0)
    elif fc.kind == "linear":
        if fc.k is SYMBOLIC:
            raise ValueError("beta kernel requires a concrete k")
        k = fc.k
    else:
        raise ValueError("beta kernel exists only for the zero and linear cases")
    monos = monomials_upto(degree)
    col_index = {mono: i for i, mono in enumerate(monos)}
    row_map: dict = {}
    for mono, col in col_index.items():
        image = kohn_laplace(Poly({mono: Fraction(1)})) + k * Poly({mono: Fraction(1)})
        for img_mono, coeff in image.terms.items():
            row_map.setdefault(img_mono, {})[col] = coeff
    rows = [row_map[key] for key in sorted(row_map, key=mono_key)]
    vecs = nullspace_rational(rows, len(monos))
    out = []
    for vec in vecs:
        poly = Poly({mono: entry for mono, entry in zip(monos, vec) if entry})
        out.append(poly)
    return out


@dataclass(frozen=True)
class ShiftResult:
    constant: Fraction
    shift: Poly
    residual_constant: Fraction
    paper_shift: Poly
    paper_residual: Fraction

    @property
    def sign_discrepancy(self) -> bool:
        """True when the classical statement's +c/2 shift fails to close."""
        return self.paper_residual != 0


def constant_shift(c) -> ShiftResult:
    """Shift removing a constant right-hand side: u = v + s x^2.

    lap(x^2) = 2 exactly, so s = -c/2 maps lap(u) + c = 0 to lap(v) = 0.
    The classical statement uses +c/2, which leaves a residual of 2c; both
    shifts are evaluated and reported rather than silently picking one.
    """
    c = Fraction(c)
    base = kohn_laplace(x * x).constant_value()  # = 2
    s = -c / base
    shift = s * x * x
    residual = kohn_laplace(shift).constant_value() + c
    paper_shift = (c / 2) * x * x
    paper_residual = kohn_laplace(paper_shift).constant_value() + c
    return ShiftResult(c, shift, residual, paper_shift, paper_residual)


@dataclass(frozen=True)
class ScanResult:
    fc: FCase
    dimensions: dict  # degree -> kernel dimension
    non_decreasing: bool
    stable_value: Optional[int]

    def stable_from(self, degree: int) -> bool:
        vals = [dim for d, dim in sorted(self.dimensions.items()) if d >= degree]
        return bool(vals) and len(set(vals)) == 1


def stability_scan(fc: FCase, d_from: int, d_to: int) -> ScanResult:
    """Classify dimension per ansatz degree over a range."""
    if d_from > d_to:
        raise ValueError("empty degree range")
    dims = {}
    for d in range(d_from, d_to + 1):
        dims[d] = classify(fc, d).dimension
    ordered = [dims[d] for d in range(d_from, d_to + 1)]
    non_dec = all(a <= b for a, b in zip(ordered, ordered[1:]))
    stable = ordered[-1] if ordered.count(ordered[-1]) == len(ordered) else None
    return ScanResult(fc, dims, non_dec, stable)
