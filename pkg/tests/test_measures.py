import math
import random
from fractions import Fraction as F

import pytest

from grouplab.errors import GroupMismatch, ModeError, PreconditionError
from grouplab.groups import Dihedral, HeisenbergModP, HeisenbergZ, ZD, cyclic, projection, reduction
from grouplab.measures import (
    Measure, cesaro, commutator_witness, convolve, delta, entropy, invert, is_symmetric, l1_norm,
    lazy, power, powers, prune, pushforward, require_probability, uniform,
)

from conftest import ALL_GROUPS, random_measure, random_probability


def dense_convolve(f, g):
    """Textbook formula (f*g)(z) = sum_x f(x) g(x^-1 z) over an enumerated group."""
    G = f.group
    return Measure(G, {z: sum(f[x] * g[G.mul(G.inv(x), z)] for x in G.elements()) for z in G.elements()})


def test_support_without_zeros():
    m = Measure(ZD(1), {(0,): F(1, 2), (1,): 0, (2,): F(1, 2)})
    assert m.support() == {(0,), (2,)}
    assert (m - m).support() == frozenset()


def test_random_walk_power_on_z():
    Z = ZD(1)
    P = Measure(Z, {(1,): F(1, 2), (-1,): F(1, 2)})
    P2 = convolve(P, P)
    assert P2 == Measure(Z, {(-2,): F(1, 4), (0,): F(1, 2), (2,): F(1, 4)})
    assert power(P, 4)[(0,)] == F(6, 16)
    assert power(P, 0) == delta(Z)


def test_dirac_product_on_noncommutative_group():
    H = HeisenbergZ()
    assert convolve(delta(H, (1, 0, 0)), delta(H, (0, 1, 0))) == delta(H, (1, 1, 1))
    assert convolve(delta(H, (0, 1, 0)), delta(H, (1, 0, 0))) == delta(H, (1, 1, 0))


@pytest.mark.parametrize("g", [g for g in ALL_GROUPS if g.is_finite], ids=str)
def test_convolution_matches_dense_oracle(g):
    rng = random.Random(str(g))
    for _ in range(20):
        f, h = random_measure(rng, g, signed=True), random_measure(rng, g, signed=True)
        assert convolve(f, h) == dense_convolve(f, h)


@pytest.mark.parametrize("g", ALL_GROUPS, ids=str)
def test_convolution_associative_and_bilinear(g):
    rng = random.Random(repr(g))
    for _ in range(500 // len(ALL_GROUPS) + 1):
        a, b, c = (random_measure(rng, g, 3, signed=True) for _ in range(3))
        assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))
        assert convolve(a, b + c) == convolve(a, b) + convolve(a, c)
        assert convolve(a, delta(g)) == a == convolve(delta(g), a)


def test_associativity_500_triples():
    rng = random.Random(500)
    for i in range(500):
        g = ALL_GROUPS[i % len(ALL_GROUPS)]
        a, b, c = (random_measure(rng, g, 3, signed=True) for _ in range(3))
        assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))


@pytest.mark.parametrize("g", ALL_GROUPS, ids=str)
def test_mass_multiplicative_and_l1_submultiplicative(g):
    rng = random.Random(11)
    for _ in range(30):
        a, b = random_measure(rng, g, signed=True), random_measure(rng, g, signed=True)
        ab = convolve(a, b)
        assert ab.mass() == a.mass() * b.mass()
        assert l1_norm(ab) <= l1_norm(a) * l1_norm(b)


@pytest.mark.parametrize("g", [cyclic(5), Dihedral(4), HeisenbergModP(3), ZD(2)], ids=str)
def test_real_mode_agrees_with_rational(g):
    rng = random.Random(5)
    for _ in range(20):
        a, b = random_probability(rng, g), random_probability(rng, g)
        exact = convolve(a, b).to_mode("real")
        assert convolve(a.to_mode("real"), b.to_mode("real")).allclose(exact, 1e-12)


def test_modes_do_not_mix():
    Z = ZD(1)
    with pytest.raises(ModeError):
        convolve(delta(Z), delta(Z, mode="real"))
    with pytest.raises(ModeError):
        Measure(Z, {(0,): 0.5})
    with pytest.raises(ModeError):
        Measure(Z, mode="decimal")
    with pytest.raises(GroupMismatch):
        convolve(delta(Z), delta(ZD(2)))


def test_cesaro_examples():
    G = cyclic(2)
    P = delta(G, (1,))
    assert cesaro(P, 1) == Measure(G, {(0,): F(1, 2), (1,): F(1, 2)})
    assert cesaro(P, 2) == Measure(G, {(0,): F(2, 3), (1,): F(1, 3)})
    defect = convolve(cesaro(P, 2), delta(G) - P)
    assert l1_norm(defect) == F(2, 3)
    Z = ZD(1)
    rw = uniform(Z, [(1,), (-1,)])
    assert cesaro(rw, 1) == Measure(Z, {(0,): F(1, 2), (1,): F(1, 4), (-1,): F(1, 4)})
    with pytest.raises(PreconditionError):
        cesaro(P, 0)


def test_cesaro_telescoping_random():
    rng = random.Random(3)
    for _ in range(10):
        g = rng.choice([cyclic(7), Dihedral(4), HeisenbergModP(3)])
        P = random_probability(rng, g)
        n = rng.randint(1, 12)
        lhs = l1_norm(convolve(cesaro(P, n), delta(g) - P))
        assert lhs == l1_norm(delta(g) - power(P, n + 1)) / (n + 1)


def test_powers_list_matches_power():
    P = uniform(Dihedral(4), [(1, 0), (0, 1)])
    ps = powers(P, 6)
    assert all(ps[k] == power(P, k) for k in range(7))


def test_lazy_and_pushforward():
    H = HeisenbergZ()
    nu = uniform(H, [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)])
    L = lazy(nu, F(1, 3))
    assert L[H.identity] == F(1, 3) and L.is_probability()
    with pytest.raises(PreconditionError):
        lazy(nu, 1)
    phi = projection(H, ZD(2), (0, 1))
    pushed = pushforward(phi, convolve(nu, nu))
    assert pushed == convolve(pushforward(phi, nu), pushforward(phi, nu))
    assert pushed.mass() == 1
    red = reduction(ZD(1), cyclic(3))
    assert pushforward(red, uniform(ZD(1), [(k,) for k in range(6)])) == uniform(cyclic(3), [(0,), (1,), (2,)])


def test_invert_and_symmetry():
    H = HeisenbergZ()
    mu = Measure(H, {(1, 1, 0): F(1, 2), (-1, -1, 1): F(1, 2)})
    assert is_symmetric(mu)
    assert not is_symmetric(Measure(H, {(1, 1, 0): F(1)}))
    rng = random.Random(4)
    for _ in range(10):
        a, b = random_measure(rng, H), random_measure(rng, H)
        assert invert(convolve(a, b)) == convolve(invert(b), invert(a))
        assert invert(invert(a)) == a


def test_prune_tracks_mass():
    Z = ZD(1)
    m = Measure(Z, {(0,): 0.5, (1,): 1e-20, (2,): 0.5 - 1e-20}, mode="real")
    p = prune(m, 1e-15)
    assert (1,) not in p.support() and p.pruned == pytest.approx(1e-20)
    assert prune(m, 0) is m
    q = convolve(p, p)
    assert q.pruned >= p.pruned


def test_require_probability_and_entropy():
    G = cyclic(4)
    with pytest.raises(PreconditionError):
        require_probability(Measure(G, {(0,): F(1, 2)}))
    with pytest.raises(PreconditionError):
        require_probability(Measure(G, {(0,): F(3, 2), (1,): F(-1, 2)}))
    assert entropy(delta(G)) == 0
    assert entropy(uniform(G, G.elements())) == pytest.approx(math.log(4))


def test_commutator_witness():
    D = Dihedral(4)
    assert commutator_witness(delta(D, D.r), delta(D, D.s)) is not None
    assert commutator_witness(delta(D, (2, 0)), delta(D, D.s)) is None


def test_scalar_multiplication():
    m = uniform(cyclic(3), [(0,), (1,)])
    assert 2 * m == m * 2 == m + m
    assert (m * m) == convolve(m, m)
