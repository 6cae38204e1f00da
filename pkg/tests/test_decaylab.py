import math
from fractions import Fraction as F

import pytest

from grouplab.decaylab import (
    coarse_bound, decay_norm, decay_report, difference_sum, fit_exponent, grid, refined_bound, staircase,
    window_radius,
)
from grouplab.errors import PreconditionError, ResourceCapExceeded
from grouplab.groups import ZD
from grouplab.measures import cesaro, convolve, delta, l1_norm, uniform


def test_worked_rows():
    assert list(grid(6).row(2)) == [F(1, 4), F(3, 8), F(6, 16), F(10, 32), F(15, 64)]
    assert list(grid(8).row(3)) == [F(1, 8), F(4, 16), F(10, 32), F(20, 64), F(35, 128), F(56, 256)]
    assert grid(6)[0, 0] == 1
    with pytest.raises(IndexError):
        grid(6)[4, 3]


def test_grid_matches_walk_on_z2():
    """Coefficient of zeta^k eta^l in sum_j mu^j, read off convolution powers."""
    n = 10
    Z2 = ZD(2)
    mu = uniform(Z2, [(1, 0), (0, 1)])
    total = cesaro(mu, n).scale(n + 1)
    g = grid(n)
    for k in range(n + 1):
        for l in range(n - k + 1):
            assert total[(k, l)] == g[k, l]


def test_diagonal_sums_and_row_tails():
    g = grid(40)
    for s in range(41):
        assert sum(g[k, s - k] for k in range(s + 1)) == 1
    # c_{k,l} = C(k+l,k)/2^(k+l); the full row sums to 2
    assert sum(grid(200).row(0)) < 2


def test_real_grid_matches_exact():
    ex, re = grid(120), grid(120, "real")
    for k in (0, 1, 17, 60, 120):
        assert all(abs(float(a) - b) < 1e-15 for a, b in zip(ex.row(k), re.row(k)))


def test_unimodality_law():
    g = grid(64)
    for k in range(65):
        for l in range(64 - k):
            a, b = g[k, l], g[k, l + 1]
            if l < k - 1:
                assert b > a
            elif l == k - 1:
                assert b == a
            else:
                assert b < a


@pytest.mark.parametrize("k", [0, 1, 2, 5, 31, 64])
def test_staircase_expands_to_row(k):
    g = grid(64)
    dec = staircase(g, k)
    assert dec.expand(len(g.row(k))) == list(g.row(k))
    assert all(b.weight > 0 for b in dec.blocks)
    # unimodal: one run per level
    assert len(dec.blocks) == len(set(g.row(k)))


def test_staircase_small_row():
    dec = staircase(grid(6), 2)
    assert dec.expand() == [F(1, 4), F(3, 8), F(3, 8), F(5, 16), F(15, 64)]
    assert dec.blocks[0].start == 0 and dec.blocks[0].length == 4 and dec.blocks[0].weight == F(15, 64)


def brute_decay(n):
    Z2 = ZD(2)
    mu = uniform(Z2, [(1, 0), (0, 1)])
    eta = delta(Z2, (0, 1))
    return l1_norm(convolve(cesaro(mu, n), delta(Z2) - eta))


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 13, 20])
def test_decay_norm_matches_convolution(n):
    assert decay_norm(n, "exact") == brute_decay(n)


def test_decay_norm_row_max_identity():
    for n in (4, 33, 100):
        g = grid(n)
        assert decay_norm(n, "exact") == F(2, n + 1) * sum(max(g.row(k)) for k in range(n + 1))


def test_decay_norm_small_values():
    assert decay_norm(1, "exact") == F(3, 2)
    assert decay_norm(0, "exact") == 2


def test_decay_norm_monotone_and_bounded():
    vals = [decay_norm(n, "exact") for n in range(1, 201)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    for n in range(16, 201):
        assert float(vals[n - 1]) <= coarse_bound(n, 0.25)


def test_real_matches_exact():
    for n in (10, 100, 300):
        assert abs(decay_norm(n, "real") - float(decay_norm(n, "exact"))) < 1e-9


def test_caps():
    with pytest.raises(ResourceCapExceeded):
        decay_norm(401, "exact")
    with pytest.raises(ResourceCapExceeded):
        decay_norm(5001, "real")
    with pytest.raises(PreconditionError):
        decay_norm(-1)


def test_fit_exponent_examples():
    pts = [(n, 3.0 * n ** -0.5) for n in (10, 20, 40, 80)]
    a, res = fit_exponent(pts)
    assert a == pytest.approx(0.5, abs=1e-12) and res < 1e-12
    with pytest.raises(PreconditionError):
        fit_exponent(pts[:3])
    with pytest.raises(PreconditionError):
        fit_exponent([(1, 1.0), (2, 0.0), (3, 1.0), (4, 1.0)])


def test_bounds():
    assert coarse_bound(16, 0.25) == pytest.approx(2 * 4 / 16 + 1)
    assert refined_bound(1, 0.25) == pytest.approx(8 / math.sqrt(math.pi))
    with pytest.raises(PreconditionError):
        coarse_bound(10, 0.5)
    assert window_radius(16, 0.25) == 2 and window_radius(81, 0.25) == 3 and window_radius(0, 0.25) == 0


def test_difference_sum_below_refined_bound():
    for n in (5, 20, 50):
        d = difference_sum(n, 0.25)
        assert 0 <= d <= refined_bound(n, 0.25)
    assert abs(float(difference_sum(30)) - difference_sum(30, mode="real")) < 1e-12


def test_decay_report():
    rep = decay_report([80, 10, 20, 40])
    assert rep.n == [10, 20, 40, 80]
    assert rep.coarse_violations() == []
    assert 0.4 < rep.exponent < 0.7
    assert len(rep.ratio_trend()) == 4
