"""Bounded harmonic functions on finite groups, computed exactly.

A function f on a finite group is stored as a tuple of values in the
enumeration order of :meth:`Group.elements`.  It is P-harmonic when
``f * P = f`` with the group-ring convolution

    (f * P)(x) = sum_s f(x s^-1) P(s),

so the operator matrix is ``M[x][y] = P(y^-1 x)`` and the harmonic space
is ``ker(I - M)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import GroupMismatch, PreconditionError, UnsupportedOperation
from .groups import Group, subgroup_closure
from .measures import (
    RATIONAL,
    REAL,
    Measure,
    cesaro,
    coerce,
    commutator_witness,
    convolve,
    delta,
    l1_norm,
    require_probability,
)


@dataclass(frozen=True)
class HarmonicBasis:
    group: Group
    vectors: tuple  # RREF rows, Fraction entries, enumeration order

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def contains(self, f: Sequence) -> bool:
        return linalg.in_span(self.vectors, f)

    def as_functions(self) -> list:
        els = self.group.elements()
        return [dict(zip(els, v)) for v in self.vectors]


def _finite(g: Group):
    if not g.is_finite:
        raise UnsupportedOperation(f"harmonic spaces are only computed on finite groups, not {g}")


def operator_matrix(g: Group, P: Measure) -> list:
    """Dense rational matrix of f -> f * P acting on value vectors."""
    _finite(g)
    if P.group != g:
        raise GroupMismatch(f"measure on {P.group}, group {g}")
    idx = g.index()
    els = g.elements()
    size = len(els)
    M = [[Fraction(0)] * size for _ in range(size)]
    terms = [(g.inv(s), Fraction(v)) for s, v in P.items()]
    for i, x in enumerate(els):
        row = M[i]
        for s_inv, v in terms:
            row[idx[g.mul(x, s_inv)]] += v
    return M


def _defect_rows(g: Group, P: Measure) -> list:
    M = operator_matrix(g, P)
    for i, row in enumerate(M):
        row[i] -= 1
    return M


def _check_input(g: Group, P: Measure, name="P"):
    if P.mode != RATIONAL:
        raise PreconditionError(f"{name} must be a rational measure for exact kernels")
    require_probability(P, name)


def harmonic_space(g: Group, P: Measure) -> HarmonicBasis:
    _finite(g)
    _check_input(g, P)
    vecs = linalg.nullspace(_defect_rows(g, P), g.order)
    return HarmonicBasis(g, tuple(tuple(v) for v in vecs))


def common_harmonic_space(g: Group, measures: Iterable[Measure]) -> HarmonicBasis:
    """Functions harmonic for every measure in ``measures`` (intersection)."""
    _finite(g)
    rows = []
    for P in measures:
        _check_input(g, P)
        rows.extend(_defect_rows(g, P))
    vecs = linalg.nullspace(rows, g.order)
    return HarmonicBasis(g, tuple(tuple(v) for v in vecs))


def is_harmonic(f: Sequence, P: Measure) -> bool:
    """Direct check ``f * P == f`` through the group-ring convolution."""
    g = P.group
    fm = function_to_measure(g, f, P.mode)
    return convolve(fm, P) == fm if P.mode == RATIONAL else convolve(fm, P).allclose(fm)


def function_to_measure(g: Group, f, mode: str = RATIONAL) -> Measure:
    els = g.elements()
    if isinstance(f, Mapping):
        return Measure(g, f, mode)
    return Measure(g, zip(els, f), mode)


def measure_to_function(g: Group, m: Measure) -> tuple:
    return tuple(m[x] for x in g.elements())


def _same_group(A: HarmonicBasis, B: HarmonicBasis):
    if A.group != B.group:
        raise GroupMismatch(f"harmonic spaces on {A.group} and {B.group}")


def space_leq(A: HarmonicBasis, B: HarmonicBasis) -> bool:
    """span(A) ⊆ span(B)."""
    _same_group(A, B)
    rb = linalg.rank(B.vectors) if B.vectors else 0
    return linalg.rank(list(B.vectors) + list(A.vectors)) == rb if A.vectors else True


def space_eq(A: HarmonicBasis, B: HarmonicBasis) -> bool:
    _same_group(A, B)
    # the RREF of a spanning set is canonical; inputs need not be reduced
    canon = lambda vs: linalg.rref(vs)[0] if vs else []
    return canon(A.vectors) == canon(B.vectors)


def intersection(A: HarmonicBasis, B: HarmonicBasis) -> HarmonicBasis:
    _same_group(A, B)
    return HarmonicBasis(A.group, tuple(tuple(v) for v in linalg.intersect(A.vectors, B.vectors)))


def witness(A: HarmonicBasis, B: HarmonicBasis):
    """A basis vector of A outside span(B), or None when A ⊆ B."""
    for v in A.vectors:
        if not B.contains(v):
            return v
    return None


def commuting_factor_check(g: Group, eta: Measure, zeta: Measure, s=Fraction(1, 2), t=Fraction(1, 2)) -> bool:
    """BH_{s eta + t zeta} ⊆ BH_eta ∩ BH_zeta for commuting eta, zeta."""
    s, t = Fraction(s), Fraction(t)
    if s + t != 1 or s <= 0 or t <= 0:
        raise PreconditionError(f"weights must be positive and sum to 1, got s={s}, t={t}")
    w = commutator_witness(eta, zeta)
    if w is not None:
        raise PreconditionError(f"eta and zeta do not commute (eta*zeta != zeta*eta at {g.serialize(w)})",
                                witness=w)
    mu = eta.scale(s) + zeta.scale(t)
    return space_leq(harmonic_space(g, mu), common_harmonic_space(g, [eta, zeta]))


# --------------------------------------------------------------------------
# Transformations of mu_t = t P + (1 - t) delta_c
# --------------------------------------------------------------------------


def _order(g: Group, c) -> int:
    n = g.element_order(g.check(c), cap=g.order if g.is_finite else 10_000)
    if n is None:
        raise PreconditionError(f"element {g.serialize(c)} has no finite order", witness=c)
    return n


def _check_t(t) -> Fraction:
    t = Fraction(t)
    if not 0 < t < 1:
        raise PreconditionError(f"t must lie in (0, 1), got {t}")
    return t


def mu_t(P: Measure, c, t) -> Measure:
    t = coerce(t, P.mode)
    return P.scale(t) + delta(P.group, c, P.mode).scale(1 - t)


def geometric_factor(g: Group, c, t, mode: str = RATIONAL) -> Measure:
    """sum_{i<n} t (1-t)^i / (1 - (1-t)^n) delta_c^i, n = order of c."""
    t = _check_t(t)
    n = _order(g, c)
    norm = 1 - (1 - t) ** n
    coeffs = {}
    for i in range(n):
        x = g.power(c, i)
        coeffs[x] = coeffs.get(x, 0) + t * (1 - t) ** i / norm
    return Measure(g, coeffs, RATIONAL).to_mode(mode)


def nu_t(P: Measure, c, t) -> Measure:
    """P * sum_{i<n} t(1-t)^i / (1-(1-t)^n) delta_c^i."""
    return convolve(P, geometric_factor(P.group, c, t, P.mode))


def equiv_mu_nu(g: Group, P: Measure, c, t) -> bool:
    return space_eq(harmonic_space(g, mu_t(P, c, t)), harmonic_space(g, nu_t(P, c, t)))


def cyclic_average(g: Group, c, mode: str = RATIONAL) -> Measure:
    """Uniform measure rho on the cyclic subgroup generated by c."""
    n = _order(g, c)
    return Measure.uniform(g, [g.power(c, i) for i in range(n)], mode)


def sws_measures(P: Measure, c) -> tuple:
    """(nu_0, averaged, sandwich) = (P*rho, (1/2n) sum (P + c^-i P c^i), rho*P*rho).

    The averaged measure is normalized by 2n so it has mass 1.
    """
    g = P.group
    n = _order(g, c)
    rho = cyclic_average(g, c, P.mode)
    nu0 = convolve(P, rho)
    acc = Measure.zero(g, P.mode)
    for i in range(n):
        ci = g.power(c, i)
        conj = convolve(convolve(delta(g, g.inv(ci), P.mode), P), delta(g, ci, P.mode))
        acc = acc + P + conj
    averaged = acc.scale(Fraction(1, 2 * n) if P.mode == RATIONAL else 1 / (2 * n))
    sandwich = convolve(convolve(rho, P), rho)
    return nu0, averaged, sandwich


def sws_containment(g: Group, P: Measure, c) -> bool:
    """BH_{nu_0} ∩ BH_{delta_c} ⊆ BH_{rho * P * rho}."""
    nu0, _, sandwich = sws_measures(P, c)
    both = common_harmonic_space(g, [nu0, delta(g, c)])
    return space_leq(both, harmonic_space(g, sandwich))


def s_t_measure(g: Group, P: Measure, t) -> Measure:
    """S_t = (1-t) sum_i (tP)^i, obtained by solving X * (delta_e - tP) = (1-t) delta_e."""
    _finite(g)
    t = Fraction(t)
    if not 0 <= t < 1:
        raise PreconditionError(f"t must lie in [0, 1), got {t}")
    A = delta(g) - P.scale(t)
    idx = g.index()
    els = g.elements()
    size = len(els)
    # (X * A)(z) = sum_x X(x) A(x^-1 z): column x gets A(a) at row x a
    L = [[Fraction(0)] * size for _ in range(size)]
    for j, x in enumerate(els):
        for a, v in A.items():
            L[idx[g.mul(x, a)]][j] += v
    b = [Fraction(0)] * size
    b[idx[g.identity]] = 1 - t
    try:
        sol = linalg.solve(L, b)
    except ZeroDivisionError:  # pragma: no cover - delta_e - tP is invertible for t < 1
        raise AssertionError("delta_e - tP is singular; impossible for t < 1") from None
    return Measure(g, zip(els, sol), RATIONAL)


def conjugate_product(g: Group, S: Measure, c) -> Measure:
    """prod_{i=1}^{n} delta_c^i * S * delta_c^-i, n = order of c."""
    n = _order(g, c)
    out = delta(g)
    for i in range(1, n + 1):
        ci = g.power(c, i)
        out = convolve(out, convolve(convolve(delta(g, ci), S), delta(g, g.inv(ci))))
    return out


def equiv_s_t(g: Group, P: Measure, c, t) -> bool:
    """BH_{mu_t} = BH_{delta_c * S_t}, and BH_{mu_t} sits inside the conjugate product's space."""
    t = _check_t(t)
    S = s_t_measure(g, P, t)
    base = harmonic_space(g, mu_t(P, c, t))
    if not space_eq(base, harmonic_space(g, convolve(delta(g, c), S))):
        return False
    return space_leq(base, harmonic_space(g, conjugate_product(g, S, c)))


# --------------------------------------------------------------------------
# Going back in time: inverse of a lazy measure
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LazyInverse:
    positive: Measure  # even-index terms of the series
    negative: Measure  # odd-index terms (nonpositive coefficients)
    positive_norm: object
    negative_norm: object
    residual: object  # || (positive + negative) * P - delta_e ||_1
    terms: int


def lazy_inverse(P: Measure, a, Q: Measure, n_terms: int = 100) -> LazyInverse:
    """Truncate P^-1 = (1/a) sum_{i<=N} ((a-1)/a Q)^i for P = a delta_e + (1-a) Q.

    Even-index terms are nonnegative and odd-index terms nonpositive; the
    two partial sums are returned separately together with their l1 norms.
    """
    a = coerce(a, P.mode)
    if not Fraction(1, 2) < a < 1:
        raise PreconditionError(f"series diverges unless 1/2 < a < 1, got a = {a}")
    if P.mode == RATIONAL:
        if P != delta(P.group).scale(a) + Q.scale(1 - a):
            raise PreconditionError("P is not a delta_e + (1 - a) Q")
    elif not P.allclose(delta(P.group, mode=P.mode).scale(a) + Q.scale(1 - a)):
        raise PreconditionError("P is not a delta_e + (1 - a) Q")
    step = Q.scale((a - 1) / a)
    term = delta(P.group, mode=P.mode).scale(1 / a)
    pos = Measure.zero(P.group, P.mode)
    neg = Measure.zero(P.group, P.mode)
    for i in range(n_terms + 1):
        if i % 2 == 0:
            pos = pos + term
        else:
            neg = neg + term
        if i < n_terms:
            term = convolve(term, step)
    residual = l1_norm(convolve(pos + neg, P) - delta(P.group, mode=P.mode))
    return LazyInverse(pos, neg, l1_norm(pos), l1_norm(neg), residual, n_terms)


# --------------------------------------------------------------------------
# Coset constancy and the Cesaro projection
# --------------------------------------------------------------------------


def coset_constancy(g: Group, f, generators: Iterable) -> bool:
    """True iff f(x z) = f(x) for all x and all z in the subgroup generated."""
    _finite(g)
    gens = list(generators)
    for z in gens:
        g.check(z)
    Z = subgroup_closure(g, gens)
    values = f if isinstance(f, Mapping) else dict(zip(g.elements(), f))
    return all(values[g.mul(x, z)] == values[x] for x in g.elements() for z in Z)


def cesaro_projection(g: Group, P: Measure, f, n: int) -> tuple:
    """f * G_n in real arithmetic; G_n the Cesaro average of P^0 .. P^n."""
    _finite(g)
    if isinstance(f, Mapping):
        f = [f.get(x, 0) for x in g.elements()]
    G = cesaro(P.to_mode(REAL), n)
    out = convolve(function_to_measure(g, [float(v) for v in f], REAL), G)
    return tuple(out[x] for x in g.elements())
