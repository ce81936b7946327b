import random
from fractions import Fraction

import pytest

from okmod import FractionalIdeal, build_field

# the four standing test fields: Q, Q(i), Q(sqrt-5), and the cubic x^3 - x - 1
FIELD_SPECS = {
    "Q": ([0, 1], None),
    "Qi": ([1, 0, 1], None),
    "Qm5": ([5, 0, 1], None),
    "cubic": ([-1, -1, 0, 1], None),
}

_FIELDS = {}


def get_field(name):
    if name not in _FIELDS:
        poly, basis = FIELD_SPECS[name]
        _FIELDS[name] = build_field(poly, basis)
    return _FIELDS[name]


@pytest.fixture(params=list(FIELD_SPECS), scope="session")
def field(request):
    return get_field(request.param)


def random_element(rng, K, lim=9, max_den=1):
    """Nonzero random element with coefficients in [-lim, lim]."""
    while True:
        den = rng.randint(1, max_den) if max_den > 1 else 1
        e = K.element([rng.randint(-lim, lim) for _ in range(K.degree)], den)
        if e:
            return e


def random_ideal(rng, K, lim=6, fractional=False):
    gens = [random_element(rng, K, lim)]
    if rng.random() < 0.5:
        gens.append(random_element(rng, K, lim))
    a = FractionalIdeal.from_generators(K, gens)
    if fractional and rng.random() < 0.5:
        a = FractionalIdeal.from_rational(K, Fraction(1, rng.randint(2, 5))) * a
    return a


def seeded(name, offset=0):
    seed = 987654321 + offset
    print(f"[seed] {name} seed={seed}")
    return random.Random(seed)
