import random
from fractions import Fraction

import pytest

from conftest import random_poly, random_vfield

from kohnsym import variables as v
from kohnsym import generators as G
from kohnsym.poly import Poly, x, y, t, u
from kohnsym.prolongation import (VField, closed_form_eta, prolong2,
                                  total_derivative)


def test_total_derivative_basics():
    assert total_derivative(u, v.X) == Poly.variable(v.UX)
    assert total_derivative(y * Poly.variable(v.UT), v.X) == y * Poly.variable(v.UXT)
    assert total_derivative(x * u + t, v.T) == x * Poly.variable(v.UT) + 1


def test_total_derivative_rejects_second_jets():
    with pytest.raises(ValueError):
        total_derivative(Poly.variable(v.UXX), v.X)
    with pytest.raises(ValueError):
        total_derivative(u, v.U)


def test_prolong_time_translation_vanishes():
    pr = prolong2(G.T)
    assert all(coeff.is_zero() for _, coeff in pr.items())


def test_eta1_x_closed_form():
    rng = random.Random(5)
    S = random_vfield(rng, 2)
    UX, UY, UT = (Poly.variable(c) for c in v.FIRST_JETS)
    expected = (S.beta.partial(v.X) + S.alpha.partial(v.X) * u
                + (S.alpha - S.xi.partial(v.X)) * UX
                - S.phi.partial(v.X) * UY - S.tau.partial(v.X) * UT)
    assert prolong2(S).eta1_x == expected
    assert closed_form_eta(S).eta1_x == expected


def test_rotation_has_no_time_extension():
    pr = closed_form_eta(G.R)
    assert pr.eta1_t.is_zero()


def test_oracle_equivalence_on_named_fields():
    for S in (G.T, G.R, G.XT, G.YT, G.Z1, G.Z2, G.Z3, G.V1, G.V2, G.V3):
        a, b = prolong2(S), closed_form_eta(S)
        for (name, pa), (_, pb) in zip(a.items(), b.items()):
            assert pa == pb, f"{S.name}: {name}"


def test_oracle_equivalence_randomized():
    rng = random.Random(123)
    for _ in range(30):
        S = random_vfield(rng, 3)
        a, b = prolong2(S), closed_form_eta(S)
        for (name, pa), (_, pb) in zip(a.items(), b.items()):
            assert pa == pb, name


def test_mixed_coefficient_symmetric_construction():
    # eta2_xt can be built through D_t(eta1_x) or D_x(eta1_t); both orders
    # must agree because the second jets are symmetrised.
    rng = random.Random(77)
    for _ in range(10):
        S = random_vfield(rng, 3)
        u_x, u_y, u_t = (Poly.variable(c) for c in v.FIRST_JETS)
        eta = S.alpha * u + S.beta

        def eta1(wrt):
            return (total_derivative(eta, wrt) - u_x * total_derivative(S.xi, wrt)
                    - u_y * total_derivative(S.phi, wrt)
                    - u_t * total_derivative(S.tau, wrt))

        uxx, uxy, uxt = (Poly.variable(c) for c in (v.UXX, v.UXY, v.UXT))
        uyt, utt = Poly.variable(v.UYT), Poly.variable(v.UTT)
        via_t = (total_derivative(eta1(v.X), v.T)
                 - uxx * S.xi.partial(v.T) - uxy * S.phi.partial(v.T)
                 - uxt * S.tau.partial(v.T))
        via_x = (total_derivative(eta1(v.T), v.X)
                 - uxt * S.xi.partial(v.X) - uyt * S.phi.partial(v.X)
                 - utt * S.tau.partial(v.X))
        assert via_t == via_x


def test_jet_linearity_invariant():
    rng = random.Random(9)
    hot = set(v.JETS) | {v.U}
    for _ in range(10):
        S = random_vfield(rng, 3)
        pr = prolong2(S)
        for name, coeff in pr.items():
            for mono, _ in coeff.terms.items():
                weight = sum(e for c, e in mono if c in hot)
                assert weight <= 1, f"{name} has a nonlinear jet term"


def test_vfield_rejects_u_and_jets():
    with pytest.raises(ValueError):
        VField(u, Poly.zero(), Poly.zero(), Poly.zero(), Poly.zero())
    with pytest.raises(ValueError):
        VField(Poly.zero(), Poly.zero(), Poly.zero(), Poly.zero(),
               Poly.variable(v.UXT))
