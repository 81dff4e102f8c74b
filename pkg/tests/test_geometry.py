import random
from fractions import Fraction

import pytest

from conftest import random_point, random_poly

from kohnsym import variables as v
from kohnsym.geometry import (FirstOrderOp, T, X, X_TILDE, Y, Y_TILDE,
                              apply_field, commutator, group_inverse,
                              group_mul, kohn_laplace, left_translate)
from kohnsym.poly import Poly, x, y, t


def _op_eq(f: FirstOrderOp, g: FirstOrderOp) -> bool:
    return f.a == g.a and f.b == g.b and f.c == g.c


def test_apply_field_examples():
    assert apply_field(X, x * x / 2) == x
    assert apply_field(Y, x * t) == -2 * x * x
    assert apply_field(X, t) == 2 * y


def test_kohn_laplace_examples():
    assert kohn_laplace(x * x / 2) == Poly.const(1)
    assert kohn_laplace(x * y) == Poly.zero()
    assert kohn_laplace(x * t) == 4 * y


def test_heisenberg_relations():
    assert _op_eq(commutator(X, Y), FirstOrderOp(Poly.zero(), Poly.zero(), Poly.const(-4)))
    assert _op_eq(commutator(X, T), FirstOrderOp(Poly.zero(), Poly.zero(), Poly.zero()))
    assert _op_eq(commutator(Y, T), FirstOrderOp(Poly.zero(), Poly.zero(), Poly.zero()))


def test_right_invariant_relations():
    four_t = FirstOrderOp(Poly.zero(), Poly.zero(), Poly.const(4))
    zero = FirstOrderOp(Poly.zero(), Poly.zero(), Poly.zero())
    assert _op_eq(commutator(X_TILDE, Y_TILDE), four_t)
    for left in (X, Y):
        for right in (X_TILDE, Y_TILDE):
            assert _op_eq(commutator(left, right), zero)


def test_commutator_agrees_with_composition(rng):
    # Second-order parts of F(G e) - G(F e) cancel identically.
    for _ in range(20):
        f = FirstOrderOp(*(random_poly(rng, 2) for _ in range(3)))
        g = FirstOrderOp(*(random_poly(rng, 2) for _ in range(3)))
        e = random_poly(rng, 3)
        direct = apply_field(commutator(f, g), e)
        composed = apply_field(f, apply_field(g, e)) - apply_field(g, apply_field(f, e))
        assert direct == composed


def test_group_mul_examples():
    assert group_mul((0, 0, 0), (5, -7, Fraction(1, 3))) == (5, -7, Fraction(1, 3))
    assert group_mul((1, 0, 0), (0, 1, 0)) == (1, 1, -2)
    p = (Fraction(2, 3), Fraction(-1, 2), Fraction(5))
    assert group_mul(p, group_inverse(p)) == (0, 0, 0)


def test_group_mul_associative(rng):
    for _ in range(100):
        a, b, c = (random_point(rng) for _ in range(3))
        assert group_mul(group_mul(a, b), c) == group_mul(a, group_mul(b, c))


def test_left_invariance(rng):
    for _ in range(20):
        a = random_point(rng)
        e = random_poly(rng, 4)
        for field in (X, Y, T):
            assert apply_field(field, left_translate(a, e)) == \
                left_translate(a, apply_field(field, e))


def test_laplacian_matches_expanded_form(rng):
    for _ in range(25):
        e = random_poly(rng, 4)
        expanded = (e.partial(v.X).partial(v.X) + e.partial(v.Y).partial(v.Y)
                    + 4 * (x * x + y * y) * e.partial(v.T).partial(v.T)
                    + 4 * y * e.partial(v.X).partial(v.T)
                    - 4 * x * e.partial(v.Y).partial(v.T))
        assert kohn_laplace(e) == expanded


def test_vector_field_rejects_jets():
    with pytest.raises(ValueError):
        FirstOrderOp(Poly.variable(v.UX), Poly.zero(), Poly.zero())
