import random
from fractions import Fraction

import pytest
from grouplab.groups import (
    DirectProduct, Dihedral, FiniteAbelian, HeisenbergModP, HeisenbergZ, Lamplighter, ZD, cyclic,
)
from grouplab.measures import Measure


ALL_GROUPS = [
    cyclic(2), cyclic(7), FiniteAbelian((2, 3)), FiniteAbelian((4, 4)),
    Dihedral(3), Dihedral(4), HeisenbergModP(3), HeisenbergModP(5),
    ZD(1), ZD(2), HeisenbergZ(), Lamplighter(),
    DirectProduct((cyclic(3), Dihedral(4))),
]


def random_element(rng: random.Random, g):
    """Random element with small coordinates, valid for every registered kind."""
    if g.is_finite:
        return rng.choice(g.elements())
    if isinstance(g, ZD):
        return tuple(rng.randint(-5, 5) for _ in range(g.d))
    if isinstance(g, HeisenbergZ):
        return tuple(rng.randint(-5, 5) for _ in range(3))
    if isinstance(g, Lamplighter):
        return (rng.randint(-5, 5), frozenset(x for x in range(-4, 5) if rng.random() < 0.3))
    if isinstance(g, DirectProduct):
        return tuple(random_element(rng, f) for f in g.factors)
    raise TypeError(g)


def random_measure(rng, g, size=4, signed=False, mode="rational"):
    coeffs = {}
    for _ in range(size):
        x = random_element(rng, g)
        w = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        if signed and rng.random() < 0.5:
            w = -w
        coeffs[x] = coeffs.get(x, 0) + w
    m = Measure(g, coeffs)
    return m if mode == "rational" else m.to_mode("real")


def random_probability(rng, g, size=4):
    m = random_measure(rng, g, size)
    return m.scale(1 / m.mass())


@pytest.fixture
def rng():
    return random.Random(20261014)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
