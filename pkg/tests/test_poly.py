from fractions import Fraction

from hypothesis import given, settings, strategies as st

from kohnsym import variables as v
from kohnsym.parser import parse_poly
from kohnsym.poly import Poly, x, y, t, u


def P(src):
    return parse_poly(src)


def test_cancellation():
    assert (x + y) + (x - y) == 2 * x


def test_difference_of_squares():
    assert (x + 2 * y) * (x - 2 * y) == x * x - 4 * y * y


def test_rational_coefficient_product():
    assert (Fraction(1, 2) * x) * (Fraction(2, 3) * x) == Fraction(1, 3) * x * x


def test_partial_basics():
    assert (x * x * y).partial(v.X) == 2 * x * y
    assert (x * x + y * y).partial(v.T) == Poly.zero()


def test_partial_of_linear_u():
    alpha, beta = P("x + 2*t"), P("y^2")
    eta = alpha * u + beta
    assert eta.partial(v.U) == alpha


def test_zero_and_constants():
    assert Poly.zero().is_zero()
    assert str(Poly.zero()) == "0"
    assert Poly.const(Fraction(-3, 2)).constant_value() == Fraction(-3, 2)
    assert (x - x).is_zero()


def test_canonical_ordering_matches_classical_layout():
    v1_xi = x * t - x * x * y - y ** 3
    assert str(v1_xi) == "x*t - x^2*y - y^3"
    v1_phi = y * t + x ** 3 + x * y * y
    assert str(v1_phi) == "y*t + x^3 + x*y^2"


def test_constant_poly_renders_value():
    assert str(2 * (x - x) + Poly.const(2)) == "2"


# -- randomized structure ---------------------------------------------------

_codes = st.sampled_from([v.X, v.Y, v.T, v.U, v.UX, v.K])


@st.composite
def polys(draw, max_terms=5):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        width = draw(st.integers(0, 3))
        mono = {}
        for _ in range(width):
            code = draw(_codes)
            mono[code] = mono.get(code, 0) + draw(st.integers(1, 3))
        coeff = Fraction(draw(st.integers(-8, 8)), draw(st.integers(1, 6)))
        key = tuple(sorted(mono.items()))
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return Poly(terms)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == Poly.zero()


@settings(max_examples=60, deadline=None)
@given(polys())
def test_partial_commutes(e):
    assert e.partial(v.X).partial(v.Y) == e.partial(v.Y).partial(v.X)
    assert e.partial(v.T).partial(v.U) == e.partial(v.U).partial(v.T)


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_canonical_string_injective(a, b):
    assert (str(a) == str(b)) == (a == b)


@settings(max_examples=60, deadline=None)
@given(polys())
def test_canonical_string_round_trip(e):
    assert parse_poly(str(e)) == e


def test_eval_and_substitute():
    e = P("x^2*t - 1/2*y")
    point = {v.X: Fraction(2), v.Y: Fraction(4), v.T: Fraction(1, 2)}
    assert e.eval(point) == Fraction(2) ** 2 * Fraction(1, 2) - Fraction(2)
    assert e.substitute({v.X: y}) == P("y^2*t - 1/2*y")


def test_pow_and_division():
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y
    assert (2 * x) / 2 == x
