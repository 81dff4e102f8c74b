"""Recursive-descent parser for polynomial and case specifications.

Grammar for polynomial expressions (the output format of canonical
rendering re-parses to the identical value):

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := '-' factor | atom ('^' INT)?
    atom     := RATIONAL | NAME | '(' expr ')'
    RATIONAL := INT ('/' INT)?

Names cover the whole variable universe (x y t u u_x ... u_tt k p c<i>);
generator components additionally reject u and jet variables.  Errors carry
the offending position.
"""

from __future__ import annotations

import re
from fractions import Fraction

from . import variables as v
from .poly import Poly
from .prolongation import VField
from .verifier import FCase
from . import generators as named_gens


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^]))")


def _tokenize(src: str) -> list:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None or m.end() == pos:
            stripped = src[pos:].lstrip()
            at = len(src) - len(stripped)
            raise ParseError(f"unexpected character {src[at]!r}", at)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, allowed=None):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0
        self.allowed = allowed

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)
        self.take()

    def parse(self) -> Poly:
        result = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {val!r}", pos)
        return result

    def expr(self) -> Poly:
        result = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                result = result + rhs if val == "+" else result - rhs
            else:
                return result

    def term(self) -> Poly:
        result = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Poly:
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, exp, pos = self.peek()
            if kind != "int":
                if kind == "op" and exp == "-":
                    raise ParseError("exponents must be non-negative integers", pos)
                raise ParseError("expected an integer exponent", pos)
            self.take()
            return base ** exp
        return base

    def atom(self) -> Poly:
        kind, val, pos = self.take()
        if kind == "int":
            num = val
            kind2, val2, _ = self.peek()
            if kind2 == "op" and val2 == "/":
                self.take()
                kind3, den, pos3 = self.peek()
                if kind3 != "int":
                    raise ParseError("expected an integer denominator", pos3)
                if den == 0:
                    raise ParseError("zero denominator", pos3)
                self.take()
                return Poly.const(Fraction(num, den))
            return Poly.const(num)
        if kind == "name":
            try:
                code = v.code_of(val)
            except KeyError:
                raise ParseError(f"unknown variable {val!r}", pos) from None
            if self.allowed is not None and code not in self.allowed:
                raise ParseError(f"variable {val!r} is not allowed here", pos)
            return Poly.variable(code)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected token {val!r}" if val else "unexpected end of input", pos)


def parse_poly(src: str, allowed=None) -> Poly:
    """Parse an expression into a canonical Poly."""
    return _Parser(src, allowed).parse()


# Generator components may use coordinates and parameters but never u/jets.
GENERATOR_VARS = frozenset({v.X, v.Y, v.T, v.K, v.P})


def parse_generator_component(src: str) -> Poly:
    return parse_poly(src, allowed=GENERATOR_VARS)


_COMPONENT_NAMES = ("xi", "phi", "tau", "alpha", "beta")


def parse_generator(spec: str) -> VField:
    """Resolve a generator: a fixture name ('V1', 'Z:5') or five components
    separated by ';' (positional, or named as 'xi=...;alpha=...'; omitted
    components are zero)."""
    spec = spec.strip()
    if ";" not in spec and "=" not in spec:
        try:
            return named_gens.lookup(spec)
        except (KeyError, ValueError):
            if re.fullmatch(r"[A-Za-z_][A-Za-z_0-9:]*", spec):
                known = ", ".join(sorted(named_gens.NAMED)) + ", Z:<p>"
                raise ParseError(f"unknown generator name {spec!r} (known: {known})", 0) from None
    parts = [chunk.strip() for chunk in spec.split(";")]
    comps = {name: Poly.zero() for name in _COMPONENT_NAMES}
    named_mode = any("=" in part for part in parts)
    if named_mode:
        for part in parts:
            if not part:
                continue
            if "=" not in part:
                raise ParseError(f"expected name=expr in {part!r}", 0)
            name, _, body = part.partition("=")
            name = name.strip()
            if name not in comps:
                raise ParseError(f"unknown component {name!r}", 0)
            comps[name] = parse_generator_component(body)
    else:
        if len(parts) > 5:
            raise ParseError("a generator has five components (xi;phi;tau;alpha;beta)", 0)
        for name, part in zip(_COMPONENT_NAMES, parts):
            if part:
                comps[name] = parse_generator_component(part)
    return VField(comps["xi"], comps["phi"], comps["tau"], comps["alpha"], comps["beta"])


def _parse_rat_or_symbol(text: str, symbol: str, what: str):
    text = text.strip()
    if text == symbol:
        return None  # symbolic
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"invalid {what} {text!r} (expected a rational or {symbol!r})", 0) from None


def parse_fspec(src: str) -> FCase:
    """Parse the surface form of a nonlinearity class:
    arbitrary | zero | const:<rat> | linear:<rat|k> | power:<rat|k>:<rat|p>
    | exp:<rat|k>."""
    parts = src.strip().split(":")
    kind = parts[0].strip().lower()
    try:
        if kind == "arbitrary" and len(parts) == 1:
            return FCase.arbitrary()
        if kind == "zero" and len(parts) == 1:
            return FCase.zero()
        if kind == "const" and len(parts) == 2:
            value = _parse_rat_or_symbol(parts[1], "", "constant")
            if value is None:
                raise ParseError("const requires a rational value", 0)
            return FCase.const(value)
        if kind == "linear" and len(parts) == 2:
            return FCase.linear(_parse_rat_or_symbol(parts[1], "k", "coefficient"))
        if kind == "power" and len(parts) == 3:
            return FCase.power(_parse_rat_or_symbol(parts[1], "k", "coefficient"),
                               _parse_rat_or_symbol(parts[2], "p", "exponent"))
        if kind == "exp" and len(parts) == 2:
            return FCase.exp(_parse_rat_or_symbol(parts[1], "k", "coefficient"))
    except ValueError as exc:
        raise ParseError(str(exc), 0) from None
    raise ParseError(
        f"invalid f specification {src!r} (expected arbitrary | zero | const:<c> "
        "| linear:<k> | power:<k>:<p> | exp:<k>)", 0)
