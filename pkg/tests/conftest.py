import random
from fractions import Fraction

import pytest

from kohnsym import variables as v
from kohnsym.poly import Poly
from kohnsym.prolongation import VField


def random_poly(rng: random.Random, degree: int, codes=(v.X, v.Y, v.T),
                terms: int = 4, span: int = 6) -> Poly:
    out = Poly.zero()
    for _ in range(terms):
        mono = {}
        budget = rng.randint(0, degree)
        for _ in range(budget):
            code = rng.choice(codes)
            mono[code] = mono.get(code, 0) + 1
        coeff = Fraction(rng.randint(-span, span), rng.randint(1, 4))
        out = out + Poly({tuple(sorted(mono.items())): coeff})
    return out


def random_vfield(rng: random.Random, degree: int = 3) -> VField:
    return VField(*(random_poly(rng, degree) for _ in range(5)))


def random_point(rng: random.Random):
    return tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 5)) for _ in range(3))


@pytest.fixture
def rng():
    return random.Random(20240)
