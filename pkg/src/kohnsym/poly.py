"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a term map from monomials to Fractions.  A monomial is a
sorted tuple of (variable code, exponent) pairs with positive exponents;
the empty tuple is the constant monomial.  Zero coefficients are never
stored, so two polynomials are equal iff their term maps are equal and the
representation is canonical by construction.

Canonical rendering orders terms by ascending total degree, ties broken so
that more weight on earlier variables comes first ("x*t - x^2*y - y^3").
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from . import variables as v
from ._backend import kernels

Mono = tuple  # tuple[(code, exp), ...] sorted by code
Scalar = Union[int, Fraction]

MONO_ONE: Mono = ()


def mono_var(code: int, exp: int = 1) -> Mono:
    return ((code, exp),) if exp else MONO_ONE


def mono_mul(m1: Mono, m2: Mono) -> Mono:
    return kernels.mono_mul(m1, m2)


def mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def mono_key(m: Mono):
    """Sort key for the canonical (graded, earliest-variable-heavy) order."""
    return (mono_degree(m), tuple((c, -e) for c, e in m))


def mono_str(m: Mono) -> str:
    if not m:
        return "1"
    parts = []
    for code, exp in m:
        name = v.name_of(code)
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return "*".join(parts)


class Poly:
    """Immutable sparse polynomial over the shared variable universe."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Mono, Scalar] | None = None):
        clean: dict = {}
        if terms:
            for mono, coeff in terms.items():
                q = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
                if q:
                    clean[mono] = q
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        p = object.__new__(cls)
        object.__setattr__(p, "terms", terms)
        return p

    @classmethod
    def zero(cls) -> "Poly":
        return cls._raw({})

    @classmethod
    def const(cls, q: Scalar) -> "Poly":
        q = Fraction(q)
        return cls._raw({MONO_ONE: q} if q else {})

    @classmethod
    def variable(cls, code: int) -> "Poly":
        return cls._raw({mono_var(code): Fraction(1)})

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and MONO_ONE in self.terms)

    def constant_value(self) -> Fraction:
        """Value of a constant polynomial (raises otherwise)."""
        if not self.terms:
            return Fraction(0)
        if self.is_constant():
            return self.terms[MONO_ONE]
        raise ValueError(f"not a constant polynomial: {self}")

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    def degree_in(self, code: int) -> int:
        best = 0
        for m in self.terms:
            for c, e in m:
                if c == code and e > best:
                    best = e
        return best

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for c, _ in m:
                out.add(c)
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._raw(kernels.terms_add(self.terms, o.terms))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._raw(kernels.terms_sub(self.terms, o.terms))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly._raw(kernels.terms_sub(o.terms, self.terms))

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly._raw(kernels.terms_scale(self.terms, Fraction(other)))
        if isinstance(other, Poly):
            return Poly._raw(kernels.terms_mul(self.terms, other.terms))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if not q:
                raise ZeroDivisionError("division of Poly by zero scalar")
            return self * (1 / q)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("Poly exponent must be a non-negative integer")
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- calculus -----------------------------------------------------

    def partial(self, code: int) -> "Poly":
        """Formal partial derivative; every variable is independent."""
        out: dict = {}
        for mono, coeff in self.terms.items():
            for i, (c, e) in enumerate(mono):
                if c == code:
                    if e == 1:
                        new = mono[:i] + mono[i + 1:]
                    else:
                        new = mono[:i] + ((c, e - 1),) + mono[i + 1:]
                    q = coeff * e
                    s = out.get(new)
                    if s is None:
                        out[new] = q
                    else:
                        s = s + q
                        if s:
                            out[new] = s
                        else:
                            del out[new]
                    break
        return Poly._raw(out)

    def coefficient_of(self, code: int) -> "Poly":
        """Coefficient of a variable the polynomial is linear in."""
        if self.degree_in(code) > 1:
            raise ValueError(f"polynomial is not linear in {v.name_of(code)}")
        return self.partial(code)

    def eval(self, assignment: Mapping[int, Scalar]) -> Fraction:
        """Exact value at a point; every occurring variable must be assigned."""
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            val = coeff
            for c, e in mono:
                val *= Fraction(assignment[c]) ** e
            total += val
        return total

    def substitute(self, mapping: Mapping[int, "Poly"]) -> "Poly":
        """Replace variables by polynomials; unmapped variables are kept."""
        out = Poly.zero()
        for mono, coeff in self.terms.items():
            term = Poly.const(coeff)
            for c, e in mono:
                repl = mapping.get(c)
                factor = repl ** e if repl is not None else Poly._raw({mono_var(c, e): Fraction(1)})
                term = term * factor
            out = out + term
        return out

    # -- rendering ----------------------------------------------------

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: mono_key(kv[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (mono, coeff) in enumerate(self.sorted_terms()):
            neg = coeff < 0
            mag = -coeff if neg else coeff
            if mono == MONO_ONE:
                body = str(mag)
            elif mag == 1:
                body = mono_str(mono)
            else:
                body = f"{mag}*{mono_str(mono)}"
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __iter__(self) -> Iterator:
        return iter(self.sorted_terms())


# Convenience instances; cheap and immutable.
ZERO = Poly.zero()
ONE = Poly.const(1)
x = Poly.variable(v.X)
y = Poly.variable(v.Y)
t = Poly.variable(v.T)
u = Poly.variable(v.U)


def poly_sum(items: Iterable[Poly]) -> Poly:
    total = Poly.zero()
    for p in items:
        total = total + p
    return total
