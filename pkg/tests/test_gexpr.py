from fractions import Fraction

import pytest

from kohnsym import variables as v
from kohnsym.gexpr import EXPU, F, FPRIME, GExpr, PLAIN, upow
from kohnsym.poly import Poly, x, y, u


def test_mul_u_shifts_upow():
    beta = x + 2 * y
    g = GExpr({upow(-1): beta})
    assert g.mul_u() == GExpr({upow(0): beta})


def test_mul_u_plain():
    g = GExpr({PLAIN: Poly.const(1)})
    assert g.mul_u() == GExpr({PLAIN: u})


def test_mul_u_keeps_u_in_opaque_coefficients():
    alpha = x
    g = GExpr({FPRIME: alpha})
    assert g.mul_u() == GExpr({FPRIME: alpha * u})


def test_zero_iff_every_component_zero():
    assert GExpr.zero().is_zero()
    g = GExpr({F: x - x, PLAIN: Poly.zero()})
    assert g.is_zero()
    assert not GExpr({F: x}).is_zero()


def test_upow_coefficients_absorb_u():
    # u-content of a UPow coefficient promotes into the tag offset.
    g = GExpr({upow(0): x * u})
    assert g == GExpr({upow(1): x})
    g2 = GExpr({upow(-1): u * u * y})
    assert g2 == GExpr({upow(1): y})


def test_fold_upow_concrete():
    g = GExpr({upow(-1): x, upow(0): y})
    folded = g.fold_upow(Fraction(1))  # u^(p-1) = 1, u^p = u
    assert folded == GExpr({PLAIN: x + y * u})
    folded2 = g.fold_upow(Fraction(5))
    assert folded2 == g


def test_addition_cancels_componentwise():
    g = GExpr({EXPU: x, PLAIN: y})
    assert (g - g).is_zero()
    assert g + GExpr({EXPU: -x}) == GExpr({PLAIN: y})


def test_scale_guard_for_upow():
    g = GExpr({upow(0): x})
    with pytest.raises(ValueError):
        g.scale(u)
    assert g.scale(2) == GExpr({upow(0): 2 * x})


def test_canonical_string():
    assert str(GExpr.zero()) == "0"
    g = GExpr({PLAIN: x, F: Poly.const(1), upow(-1): y})
    assert str(g) == "x + (1)*f(u) + (y)*u^(p-1)"


def test_entries_deterministic_order():
    g = GExpr({EXPU: x, PLAIN: y + x})
    tags = [tag for tag, _, _ in g.entries()]
    assert tags == [PLAIN, PLAIN, EXPU]
