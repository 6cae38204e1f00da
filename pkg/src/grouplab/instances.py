"""Seeded random instances for the randomized verification suites.

Every generator takes a :class:`random.Random`; a suite run is fully
determined by its seed and instance count.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .groups import Dihedral, Group, HeisenbergModP, center, cyclic, FiniteAbelian
from .measures import Measure, convolve, delta
from .extlab import symmetrize_conjugation

FINITE_POOL = ("cyclic", "dihedral4", "heisenberg3")


def random_finite_group(rng: random.Random, max_cyclic: int = 12) -> Group:
    kind = rng.choice(FINITE_POOL)
    if kind == "cyclic":
        return cyclic(rng.randint(2, max_cyclic))
    if kind == "dihedral4":
        return Dihedral(4)
    return HeisenbergModP(3)


def random_probability(rng: random.Random, g: Group, size: int | None = None, max_weight: int = 5) -> Measure:
    els = g.elements()
    if size is None:
        size = rng.randint(1, min(4, len(els)))
    support = rng.sample(els, size)
    weights = [rng.randint(1, max_weight) for _ in support]
    total = sum(weights)
    return Measure(g, {x: Fraction(w, total) for x, w in zip(support, weights)})


def random_t(rng: random.Random, max_den: int = 9) -> Fraction:
    den = rng.randint(2, max_den)
    return Fraction(rng.randint(1, den - 1), den)


def random_nontrivial_element(rng: random.Random, g: Group):
    return rng.choice([x for x in g.elements() if x != g.identity])


@dataclass
class EquivInstance:
    group: Group
    P: Measure
    c: object
    t: Fraction


def equiv_instance(rng: random.Random) -> EquivInstance:
    g = random_finite_group(rng)
    return EquivInstance(g, random_probability(rng, g), random_nontrivial_element(rng, g), random_t(rng))


@dataclass
class CommutingInstance:
    group: Group
    eta: Measure
    zeta: Measure
    s: Fraction
    strategy: str

    @property
    def t(self) -> Fraction:
        return 1 - self.s


def commuting_instance(rng: random.Random) -> CommutingInstance:
    """Commuting pair from one of four constructions.

    abelian: any two measures on an abelian group; central: zeta supported
    on the centre; class: zeta conjugation invariant; polynomial: zeta a
    convex combination of powers of eta.
    """
    strategy = rng.choice(["abelian", "central", "class", "polynomial"])
    if strategy == "abelian":
        g = rng.choice([cyclic(rng.randint(2, 12)), FiniteAbelian((4, 4)), FiniteAbelian((2, 6))])
        eta, zeta = random_probability(rng, g), random_probability(rng, g)
    else:
        g = rng.choice([Dihedral(4), HeisenbergModP(3)])
        eta = random_probability(rng, g)
        if strategy == "central":
            Z = sorted(center(g), key=g.key)
            zeta = _on(rng, g, Z)
        elif strategy == "class":
            zeta = symmetrize_conjugation(g, random_probability(rng, g))
        else:
            a, b = rng.randint(1, 3), rng.randint(1, 3)
            p = random_t(rng)
            zeta = _power(eta, a).scale(p) + _power(eta, b).scale(1 - p)
    s = random_t(rng)
    return CommutingInstance(g, eta, zeta, s, strategy)


def _on(rng, g, support) -> Measure:
    size = rng.randint(1, len(support))
    chosen = rng.sample(support, size)
    weights = [rng.randint(1, 5) for _ in chosen]
    total = sum(weights)
    return Measure(g, {x: Fraction(w, total) for x, w in zip(chosen, weights)})


def _power(m: Measure, k: int) -> Measure:
    out = delta(m.group)
    for _ in range(k):
        out = convolve(out, m)
    return out
