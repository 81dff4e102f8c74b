"""Graded expressions: polynomial coefficients attached to nonlinearity tags.

A GExpr is a finite map from a basis tag to a Poly coefficient.  The tags
are: Plain (ordinary polynomial part), F (an opaque nonlinearity f(u)),
FPrime (its derivative f'(u)), UPow(j) (the power u^(p+j) relative to a
power-law exponent p), and ExpU (e^u).  The grading is what makes collecting
coefficients of an on-shell symmetry condition sound: a GExpr is zero iff
every tag component is the zero polynomial.

UPow coefficients are kept free of the dependent variable u: any power of u
in a UPow(j) coefficient is promoted into the tag offset on construction.
For F, FPrime and ExpU the coefficient may contain u (u*f(u) has no tag of
its own).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from . import variables as v
from .poly import Poly, mono_var

_KIND_ORDER = {"plain": 0, "f": 1, "fprime": 2, "upow": 3, "expu": 4}


@dataclass(frozen=True, order=False)
class Tag:
    kind: str
    offset: int = 0

    def sort_key(self) -> tuple:
        return (_KIND_ORDER[self.kind], self.offset)

    def render(self) -> str:
        if self.kind == "plain":
            return "1"
        if self.kind == "f":
            return "f(u)"
        if self.kind == "fprime":
            return "f'(u)"
        if self.kind == "expu":
            return "exp(u)"
        j = self.offset
        if j == 0:
            return "u^p"
        sign = "+" if j > 0 else "-"
        return f"u^(p{sign}{abs(j)})"


PLAIN = Tag("plain")
F = Tag("f")
FPRIME = Tag("fprime")
EXPU = Tag("expu")


def upow(j: int) -> Tag:
    return Tag("upow", j)


def _split_u(poly: Poly) -> dict:
    """Split a Poly by its power of u: exponent -> u-free Poly."""
    buckets: dict[int, dict] = {}
    for mono, coeff in poly.terms.items():
        e_u = 0
        rest = mono
        for i, (c, e) in enumerate(mono):
            if c == v.U:
                e_u = e
                rest = mono[:i] + mono[i + 1:]
                break
        buckets.setdefault(e_u, {})[rest] = coeff
    return {e: Poly(ts) for e, ts in buckets.items()}


class GExpr:
    """Immutable graded expression (tag -> Poly, no zero components)."""

    __slots__ = ("components",)

    def __init__(self, components: Mapping[Tag, Poly] | None = None):
        clean: dict[Tag, Poly] = {}
        if components:
            for tag, poly in components.items():
                if poly.is_zero():
                    continue
                if tag.kind == "upow":
                    for e_u, part in _split_u(poly).items():
                        shifted = upow(tag.offset + e_u)
                        prev = clean.get(shifted)
                        merged = part if prev is None else prev + part
                        if merged.is_zero():
                            clean.pop(shifted, None)
                        else:
                            clean[shifted] = merged
                else:
                    prev = clean.get(tag)
                    merged = poly if prev is None else prev + poly
                    if merged.is_zero():
                        clean.pop(tag, None)
                    else:
                        clean[tag] = merged
        object.__setattr__(self, "components", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GExpr is immutable")

    @classmethod
    def zero(cls) -> "GExpr":
        return cls()

    @classmethod
    def plain(cls, poly: Poly) -> "GExpr":
        return cls({PLAIN: poly})

    def is_zero(self) -> bool:
        return not self.components

    def get(self, tag: Tag) -> Poly:
        return self.components.get(tag, Poly.zero())

    def tags(self) -> list:
        return sorted(self.components, key=Tag.sort_key)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GExpr):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(frozenset(self.components.items()))

    def __add__(self, other: "GExpr") -> "GExpr":
        merged = dict(self.components)
        for tag, poly in other.components.items():
            merged[tag] = merged.get(tag, Poly.zero()) + poly
        return GExpr(merged)

    def __sub__(self, other: "GExpr") -> "GExpr":
        return self + (-other)

    def __neg__(self) -> "GExpr":
        return GExpr({tag: -poly for tag, poly in self.components.items()})

    def scale(self, factor) -> "GExpr":
        """Multiply every component by a Poly or scalar free of u-promotion
        concerns; factors containing u are only legal when no UPow tag is
        present (use mul_u for tag-aware promotion by u itself)."""
        if isinstance(factor, (int, Fraction)):
            factor = Poly.const(factor)
        if v.U in factor.variables() and any(t.kind == "upow" for t in self.components):
            raise ValueError("scaling a UPow component by a u-dependent factor; use mul_u")
        return GExpr({tag: poly * factor for tag, poly in self.components.items()})

    def mul_u(self) -> "GExpr":
        """Multiply by the dependent variable u with tag promotion."""
        u_poly = Poly.variable(v.U)
        out: dict[Tag, Poly] = {}
        for tag, poly in self.components.items():
            if tag.kind == "upow":
                out[upow(tag.offset + 1)] = out.get(upow(tag.offset + 1), Poly.zero()) + poly
            else:
                out[tag] = out.get(tag, Poly.zero()) + poly * u_poly
        return GExpr(out)

    def fold_upow(self, p: Fraction) -> "GExpr":
        """For a concrete exponent p, fold UPow components with p+j in {0,1}
        into the Plain part (u^0 and u^1 are genuinely polynomial)."""
        out: dict[Tag, Poly] = {}
        u_poly = Poly.variable(v.U)
        for tag, poly in self.components.items():
            if tag.kind == "upow":
                power = p + tag.offset
                if power == 0:
                    out[PLAIN] = out.get(PLAIN, Poly.zero()) + poly
                    continue
                if power == 1:
                    out[PLAIN] = out.get(PLAIN, Poly.zero()) + poly * u_poly
                    continue
            out[tag] = out.get(tag, Poly.zero()) + poly
        return GExpr(out)

    def entries(self) -> list:
        """Deterministic flat view: (tag, monomial, coefficient) triples."""
        out = []
        for tag in self.tags():
            for mono, coeff in self.components[tag].sorted_terms():
                out.append((tag, mono, coeff))
        return out

    def __str__(self) -> str:
        if not self.components:
            return "0"
        parts = []
        for tag in self.tags():
            poly = self.components[tag]
            if tag.kind == "plain":
                parts.append(str(poly))
            else:
                parts.append(f"({poly})*{tag.render()}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"GExpr({self})"


def gexpr_sum(items: Iterable[GExpr]) -> GExpr:
    total = GExpr.zero()
    for g in items:
        total = total + g
    return total
