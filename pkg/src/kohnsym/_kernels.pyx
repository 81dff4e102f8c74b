# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled compute kernels.

Twin of `kohnsym._kernels_py`: identical functions, identical results; the
build is optional and the pure-Python module takes over when this extension
is absent.  Coefficients are exact (Fraction / arbitrary-precision int), so
the win here is loop and dispatch overhead, not numeric format.
"""

from fractions import Fraction
from math import gcd


def terms_add(dict a, dict b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    cdef dict out = dict(a)
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


def terms_sub(dict a, dict b):
    if not b:
        return dict(a)
    cdef dict out = dict(a)
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


def mono_mul(tuple m1, tuple m2):
    """Merge two sorted exponent tuples."""
    if not m1:
        return m2
    if not m2:
        return m1
    cdef list out = []
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t n1 = len(m1), n2 = len(m2)
    cdef long c1, c2
    while i < n1 and j < n2:
        c1 = <long>(<tuple>m1[i])[0]
        c2 = <long>(<tuple>m2[j])[0]
        if c1 == c2:
            out.append((c1, (<tuple>m1[i])[1] + (<tuple>m2[j])[1]))
            i += 1
            j += 1
        elif c1 < c2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    while i < n1:
        out.append(m1[i])
        i += 1
    while j < n2:
        out.append(m2[j])
        j += 1
    return tuple(out)


def terms_mul(dict a, dict b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    cdef dict out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            mono = mono_mul(<tuple>m1, <tuple>m2)
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


def terms_scale(dict a, c):
    if not c:
        return {}
    return {mono: coeff * c for mono, coeff in a.items()}


cdef object _row_content(dict row):
    g = 0
    for val in row.values():
        g = gcd(g, val)
        if g == 1:
            return 1
    return g


def nullspace_int(list rows, Py_ssize_t ncols):
    """Exact kernel basis of an integer matrix given as sparse rows.

    Semantics match kohnsym._kernels_py.nullspace_int exactly: fraction-free
    elimination with content reduction, leftmost-pivot / first-row choice,
    one primitive dense vector per free column.
    """
    cdef list work = [dict(r) for r in rows if r]
    cdef Py_ssize_t nrows = len(work)
    cdef list used = [False] * nrows
    cdef list pivots = []
    cdef Py_ssize_t i
    cdef long best_col, c
    cdef Py_ssize_t best_row
    cdef dict r, piv, new

    while True:
        best_col = -1
        best_row = -1
        for i in range(nrows):
            if used[i]:
                continue
            r = <dict>work[i]
            if not r:
                continue
            c = min(r)
            if best_col < 0 or c < best_col:
                best_col = c
                best_row = i
        if best_col < 0:
            break
        used[best_row] = True
        piv = <dict>work[best_row]
        a = piv[best_col]
        pivots.append((best_col, piv))
        for i in range(nrows):
            if used[i]:
                continue
            r = <dict>work[i]
            if not r:
                continue
            b = r.get(best_col)
            if b is None:
                continue
            new = {}
            for c2, val in r.items():
                new[c2] = a * val
            for c2, val in piv.items():
                s = new.get(c2, 0) - b * val
                if s:
                    new[c2] = s
                elif c2 in new:
                    del new[c2]
            g = _row_content(new)
            if g > 1:
                new = {c2: val // g for c2, val in new.items()}
            work[i] = new

    pivot_cols = {col for col, _ in pivots}
    cdef list basis = []
    one = Fraction(1)
    cdef Py_ssize_t fc
    for fc in range(ncols):
        if fc in pivot_cols:
            continue
        v = {fc: one}
        for col, row in reversed(pivots):
            s = 0
            for c2, val in (<dict>row).items():
                if c2 != col:
                    q = v.get(c2)
                    if q is not None:
                        s += val * q
            if s:
                v[col] = Fraction(-s, (<dict>row)[col])
        den = 1
        for q in v.values():
            den = den * q.denominator // gcd(den, q.denominator)
        ints = {cc: int(q * den) for cc, q in v.items() if q}
        g = 0
        for val in ints.values():
            g = gcd(g, val)
        dense = [0] * ncols
        for cc, val in ints.items():
            dense[cc] = val // g
        basis.append(dense)
    return basis
