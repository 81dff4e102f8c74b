"""Pure-Python compute kernels.

This is the fallback backend for the two hot paths of the engine: sparse
polynomial term-map arithmetic and the exact integer nullspace used by the
ansatz solver.  A compiled Cython twin (`kohnsym._kernels`) implements the
same functions with identical semantics; `kohnsym._backend` picks whichever
is importable.  Results of the two backends must be bit-identical.

Term maps are plain dicts mapping a monomial (sorted tuple of
(variable code, exponent) pairs) to a Fraction coefficient; zero
coefficients are never stored.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def terms_add(a: dict, b: dict) -> dict:
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for mono, coeff in b.items():
        s = out.get(mono)
        if s is None:
            out[mono] = coeff
        else:
            s = s + coeff
            if s:
                out[mono] = s
            else:
                del out[mono]
    return out


def terms_sub(a: dict, b: dict) -> dict:
    if not b:
        return dict(a)
    out = dict(a)
    for mono, coeff in b.items():
        s = out.get(mono)
        if s is None:
            out[mono] = -coeff
        else:
            s = s - coeff
            if s:
                out[mono] = s
            else:
                del out[mono]
    return out


def mono_mul(m1: tuple, m2: tuple) -> tuple:
    """Merge two sorted exponent tuples."""
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        c1, e1 = m1[i]
        c2, e2 = m2[j]
        if c1 == c2:
            out.append((c1, e1 + e2))
            i += 1
            j += 1
        elif c1 < c2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def terms_mul(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            mono = mono_mul(m1, m2)
            c = c1 * c2
            s = out.get(mono)
            if s is None:
                out[mono] = c
            else:
                s = s + c
                if s:
                    out[mono] = s
                else:
                    del out[mono]
    return out


def terms_scale(a: dict, c) -> dict:
    if not c:
        return {}
    return {mono: coeff * c for mono, coeff in a.items()}


def _row_content(row: dict) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


def nullspace_int(rows: list, ncols: int) -> list:
    """Exact kernel basis of an integer matrix given as sparse rows.

    rows: list of dict[column -> int] (zero entries absent).  Elimination is
    fraction-free with content reduction; pivot choice is leftmost column,
    first nonzero row, so the result is deterministic.  Returns one dense
    integer vector per free column (ascending), each primitive with a
    positive entry at its free column.
    """
    work = [dict(r) for r in rows if r]
    used = [False] * len(work)
    pivots: list = []  # (column, row dict), ascending columns
    while True:
        best_col = -1
        best_row = -1
        for i, r in enumerate(work):
            if used[i] or not r:
                continue
            c = min(r)
            if best_col < 0 or c < best_col:
                best_col = c
                best_row = i
        if best_col < 0:
            break
        used[best_row] = True
        piv = work[best_row]
        a = piv[best_col]
        pivots.append((best_col, piv))
        for i, r in enumerate(work):
            if used[i] or not r:
                continue
            b = r.get(best_col)
            if b is None:
                continue
            new = {c2: a * v for c2, v in r.items()}
            for c2, v in piv.items():
                s = new.get(c2, 0) - b * v
                if s:
                    new[c2] = s
                elif c2 in new:
                    del new[c2]
            g = _row_content(new)
            if g > 1:
                new = {c2: v // g for c2, v in new.items()}
            work[i] = new

    pivot_cols = {c for c, _ in pivots}
    basis = []
    one = Fraction(1)
    for fc in range(ncols):
        if fc in pivot_cols:
            continue
        v = {fc: one}
        for col, row in reversed(pivots):
            s = 0
            for c2, val in row.items():
                if c2 != col:
                    q = v.get(c2)
                    if q is not None:
                        s += val * q
            if s:
                v[col] = Fraction(-s, row[col])
        den = 1
        for q in v.values():
            den = den * q.denominator // gcd(den, q.denominator)
        ints = {c: int(q * den) for c, q in v.items() if q}
        g = 0
        for val in ints.values():
            g = gcd(g, val)
        dense = [0] * ncols
        for c, val in ints.items():
            dense[c] = val // g
        basis.append(dense)
    return basis
