"""Exact linear algebra helpers shared by the solver and algebra modules.

Two elimination routes exist on purpose.  Rational matrices go through the
backend's fraction-free integer elimination (`nullspace_int`), the hot path
of the classification.  Matrices over the univariate rational-function field
Q(p) (symbolic power exponent) and all small membership solves go through a
generic reduced-row-echelon routine that only needs field operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ._backend import kernels
from . import variables as v
from .poly import Poly, mono_var


def rows_to_int(rows: Sequence[dict]) -> list:
    """Clear denominators per row and reduce to primitive integer rows.

    Scaling a row never changes the kernel, so this is exact.
    """
    from math import gcd

    out = []
    for row in rows:
        if not row:
            continue
        den = 1
        for q in row.values():
            den = den * q.denominator // gcd(den, q.denominator)
        ints = {c: int(q * den) for c, q in row.items()}
        g = 0
        for val in ints.values():
            g = gcd(g, val)
        out.append({c: val // g for c, val in ints.items()})
    return out


def nullspace_rational(rows: Sequence[dict], ncols: int) -> list:
    """Kernel basis of a matrix with Fraction entries, one dense Fraction
    vector per free column (deterministic, primitive integer entries)."""
    int_rows = rows_to_int(rows)
    basis = kernels.nullspace_int(int_rows, ncols)
    return [[Fraction(e) for e in vec] for vec in basis]


# -- generic field elimination ---------------------------------------------


def rref(rows: list, ncols: int, one) -> tuple:
    """Reduced row echelon form over any exact field.

    rows: list of dict[col -> field element]; mutated copies are used.
    Returns (pivots, reduced) where pivots is a list of
    (column, row dict, original pivot value) with ascending columns, every
    pivot entry normalized to `one` and eliminated from all other rows.
    """
    work = [dict(r) for r in rows if r]
    used = [False] * len(work)
    records = []  # (column, row index, original pivot value)
    while True:
        best_col = None
        best_row = -1
        for i, r in enumerate(work):
            if used[i] or not r:
                continue
            c = min(r)
            if best_col is None or c < best_col:
                best_col = c
                best_row = i
        if best_col is None:
            break
        used[best_row] = True
        piv = work[best_row]
        pivot_value = piv[best_col]
        inv = one / pivot_value
        piv = {c: val * inv for c, val in piv.items()}
        work[best_row] = piv
        records.append((best_col, best_row, pivot_value))
        for i, r in enumerate(work):
            if i == best_row or not r:
                continue
            b = r.get(best_col)
            if b is None:
                continue
            new = dict(r)
            for c2, val in piv.items():
                s = new.get(c2)
                prod = b * val
                if s is None:
                    new[c2] = -prod
                else:
                    s = s - prod
                    if s:
                        new[c2] = s
                    else:
                        del new[c2]
            work[i] = new
    # Later elimination steps replace row dicts, so the fully reduced pivot
    # rows must be read back from the workspace at the very end.
    pivots = [(col, work[idx], pv) for col, idx, pv in records]
    return pivots, work


def nullspace_field(rows: list, ncols: int, one) -> tuple:
    """Kernel basis over an exact field via RREF; one vector per free
    column, entry at the free column equal to `one`."""
    pivots, _ = rref(rows, ncols, one)
    pivot_cols = {c for c, _, _ in pivots}
    basis = []
    for fc in range(ncols):
        if fc in pivot_cols:
            continue
        vec = {fc: one}
        for col, row, _ in pivots:
            val = row.get(fc)
            if val is not None:
                vec[col] = -val
        basis.append(vec)
    return basis, pivots


def solve_columns(columns: list, target: dict, one) -> Optional[list]:
    """Solve sum_j x_j * columns[j] = target exactly, or return None.

    Columns and target are sparse dicts over an arbitrary row-index space.
    """
    keys = set(target)
    for col in columns:
        keys |= set(col)
    index = {key: i for i, key in enumerate(sorted(keys))}
    n = len(columns)
    rows = []
    for key, i in index.items():
        row = {}
        for j, col in enumerate(columns):
            val = col.get(key)
            if val is not None:
                row[j] = val
        tval = target.get(key)
        if tval is not None:
            row[n] = tval
        if row:
            rows.append(row)
    pivots, _ = rref(rows, n + 1, one)
    zero = one - one
    coeffs = [zero] * n
    for col, row, _ in pivots:
        if col == n:
            return None  # inconsistent: pivot in the augmented column
        # Free columns are set to zero, so each pivot unknown equals the
        # reduced augmented entry of its row.
        coeffs[col] = row.get(n, zero)
    return coeffs


def in_span(columns: list, target: dict, one) -> bool:
    """Exact membership of target in the span of the columns."""
    keys = set(target)
    for col in columns:
        keys |= set(col)
    n = len(columns)
    rows = []
    for key in sorted(keys):
        row = {}
        for j, col in enumerate(columns):
            val = col.get(key)
            if val is not None:
                row[j] = val
        tval = target.get(key)
        if tval is not None:
            row[n] = tval
        if row:
            rows.append(row)
    pivots, _ = rref(rows, n + 1, one)
    return all(col != n for col, _, _ in pivots)


def rank(columns: list, one) -> int:
    keys = set()
    for col in columns:
        keys |= set(col)
    rows = []
    for key in sorted(keys):
        row = {}
        for j, col in enumerate(columns):
            val = col.get(key)
            if val is not None:
                row[j] = val
        if row:
            rows.append(row)
    pivots, _ = rref(rows, len(columns), one)
    return len(pivots)


# -- univariate rational functions over Q (the symbolic exponent field) ----


def _strip(c: tuple) -> tuple:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return c[:n]


def _uni_add(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, q in enumerate(b):
        out[i] += q
    return _strip(tuple(out))


def _uni_neg(a: tuple) -> tuple:
    return tuple(-q for q in a)


def _uni_mul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, qa in enumerate(a):
        if qa:
            for j, qb in enumerate(b):
                if qb:
                    out[i + j] += qa * qb
    return _strip(tuple(out))


def _uni_divmod(a: tuple, b: tuple) -> tuple:
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    rem = list(a)
    quo = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    for shift in range(len(a) - len(b), -1, -1):
        coeff = rem[shift + len(b) - 1] / lead
        if coeff:
            quo[shift] = coeff
            for i, qb in enumerate(b):
                rem[shift + i] -= coeff * qb
    return _strip(tuple(quo)), _strip(tuple(rem))


def _uni_gcd(a: tuple, b: tuple) -> tuple:
    while b:
        _, r = _uni_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = tuple(q / lead for q in a)
    return a


def _uni_eval(a: tuple, at: Fraction) -> Fraction:
    total = Fraction(0)
    for q in reversed(a):
        total = total * at + q
    return total


class RatFunc:
    """Element of Q(s) for a single symbol s; denominator kept monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(Fraction(1),)):
        if isinstance(num, (int, Fraction)):
            num = (Fraction(num),) if num else ()
        num = _strip(tuple(Fraction(q) for q in num))
        den = _strip(tuple(Fraction(q) for q in den))
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if num:
            g = _uni_gcd(num, den)
            if len(g) > 1:
                num, _ = _uni_divmod(num, g)
                den, _ = _uni_divmod(den, g)
            lead = den[-1]
            if lead != 1:
                num = tuple(q / lead for q in num)
                den = tuple(q / lead for q in den)
        else:
            den = (Fraction(1),)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == RatFunc(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(_uni_add(_uni_mul(self.num, other.den), _uni_mul(other.num, self.den)),
                       _uni_mul(self.den, other.den))

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(_uni_add(_uni_mul(self.num, other.den), _uni_neg(_uni_mul(other.num, self.den))),
                       _uni_mul(self.den, other.den))

    def __neg__(self):
        return RatFunc(_uni_neg(self.num), self.den)

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(_uni_mul(self.num, other.num), _uni_mul(self.den, other.den))

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(_uni_mul(self.num, other.den), _uni_mul(self.den, other.num))

    def eval_num_at(self, at: Fraction) -> Fraction:
        return _uni_eval(self.num, Fraction(at))

    def __repr__(self):
        return f"RatFunc(num={self.num}, den={self.den})"


RF_ONE = RatFunc(1)
RF_ZERO = RatFunc(0)


def poly_to_ratfunc(p: Poly, symbol: int) -> RatFunc:
    """Convert a Poly in a single symbol into a RatFunc numerator."""
    coeffs: dict[int, Fraction] = {}
    for mono, coeff in p.terms.items():
        if not mono:
            coeffs[0] = coeffs.get(0, Fraction(0)) + coeff
        elif len(mono) == 1 and mono[0][0] == symbol:
            coeffs[mono[0][1]] = coeffs.get(mono[0][1], Fraction(0)) + coeff
        else:
            raise ValueError(f"entry is not univariate in {v.name_of(symbol)}: {p}")
    top = max(coeffs, default=-1)
    return RatFunc(tuple(coeffs.get(i, Fraction(0)) for i in range(top + 1)))


def ratfunc_to_poly(r: RatFunc, symbol: int) -> Poly:
    """Polynomial numerator as a Poly (denominator must be trivial)."""
    if r.den != (Fraction(1),):
        raise ValueError("rational function has a nontrivial denominator")
    terms = {}
    for i, q in enumerate(r.num):
        if q:
            terms[mono_var(symbol, i) if i else ()] = q
    return Poly(terms)


@dataclass(frozen=True)
class SymbolicKernel:
    """Kernel over Q(p) together with pivot bookkeeping."""

    basis: list  # list of dict[col -> RatFunc]
    pivot_values: list  # numerator tuples of the pivots, elimination order
    vanishing: dict  # candidate p value -> list of pivot indices that vanish


def nullspace_symbolic(rows: list, ncols: int, probe_values=(0, 1, 2, 3)) -> SymbolicKernel:
    """Kernel of a matrix over Q(p); reports pivots that vanish at the probe
    values (candidate special exponents where the generic branch degenerates).
    """
    basis, pivots = nullspace_field(rows, ncols, RF_ONE)
    pivot_values = [pv for _, _, pv in pivots]
    vanishing: dict = {}
    for a in probe_values:
        a = Fraction(a)
        dead = [i for i, pv in enumerate(pivot_values)
                if pv.eval_num_at(a) == 0 and _uni_eval(pv.den, a) != 0]
        if dead:
            vanishing[a] = dead
    return SymbolicKernel(basis, pivot_values, vanishing)
