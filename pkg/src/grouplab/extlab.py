"""Central extensions: central series, extension measures, entropy curves."""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import PreconditionError, UnsupportedOperation
from .groups import (
    Group,
    HeisenbergModP,
    HeisenbergZ,
    Homomorphism,
    Lamplighter,
    ZD,
    FiniteAbelian,
    canonical_quotient,
    subgroup_closure,
    word_lengths,
)
from .measures import (
    RATIONAL,
    REAL,
    Measure,
    convolve,
    delta,
    entropy,
    prune,
    pushforward,
    require_probability,
)

# --------------------------------------------------------------------------
# Central series
# --------------------------------------------------------------------------


def upper_central_series(g: Group) -> list:
    """[Z^0, Z^1, ...] with Z^{i+1} = {x : [x, y] in Z^i for all y}, up to stabilization."""
    if not g.is_finite:
        raise UnsupportedOperation("central series are computed on finite groups only")
    els = g.elements()
    series = [frozenset([g.identity])]
    while True:
        prev = series[-1]
        nxt = frozenset(
            x for x in els
            if all(g.mul(g.mul(x, y), g.inv(g.mul(y, x))) in prev for y in els)
        )
        if nxt == prev:
            return series
        series.append(nxt)


def fc_center(g: Group) -> frozenset:
    """Elements with finite conjugacy class; all of g when g is finite."""
    if not g.is_finite:
        raise UnsupportedOperation("the FC-centre of an infinite group is not computable here")
    return frozenset(g.elements())


# --------------------------------------------------------------------------
# Extension measures
# --------------------------------------------------------------------------


def default_section(phi: Homomorphism) -> Callable:
    src, tgt = phi.source, phi.target
    if isinstance(src, (HeisenbergZ, HeisenbergModP)) and isinstance(tgt, (ZD, FiniteAbelian)):
        return lambda q: (q[0], q[1], 0)
    if isinstance(src, Lamplighter):
        return lambda q: (q[0], frozenset())
    if src == tgt:
        return lambda q: q
    if src.is_finite:
        lifts = {}
        for x in src.elements():
            lifts.setdefault(phi(x), x)
        return lifts.__getitem__
    raise PreconditionError(f"no default section for {src} -> {tgt}; pass one explicitly")


@dataclass
class ExtensionSpec:
    total: Group
    quotient_map: Homomorphism
    kernel_generators: tuple = ()
    section: Callable | Mapping | None = None
    kernel_elements: Sequence | None = None  # enumeration of N (truncated if N is infinite)

    @property
    def quotient(self) -> Group:
        return self.quotient_map.target

    def lift(self, q):
        if self.section is None:
            self.section = default_section(self.quotient_map)
        if isinstance(self.section, Mapping):
            return self.section[q]
        return self.section(q)

    def enumeration(self) -> list:
        """Elements of N, identity first, each element followed by its inverse."""
        g = self.total
        if self.kernel_elements is not None:
            els = [g.check(x) for x in self.kernel_elements]
        elif not self.kernel_generators:
            els = [g.identity]
        else:
            if not g.is_finite:
                raise PreconditionError("infinite N needs an explicit (truncated) kernel_elements list")
            els = sorted(subgroup_closure(g, self.kernel_generators), key=g.key)
        e = self.quotient_map.target.identity
        for x in els:
            if self.quotient_map(x) != e:
                raise PreconditionError(f"{g.serialize(x)} is not in the kernel of the quotient map", witness=x)
        ordered, seen = [g.identity], {g.identity}
        for x in els:
            for y in (x, g.inv(x)):
                if y not in seen:
                    seen.add(y)
                    ordered.append(y)
        return ordered


def heisenberg_center_extension(radius: int = 3) -> ExtensionSpec:
    """H(Z) over Z^2 with N = centre, enumerated as (0,0,c) for |c| <= radius."""
    H = HeisenbergZ()
    phi = canonical_quotient(H, ZD(2))
    elems = [(0, 0, c) for c in range(-radius, radius + 1)]
    return ExtensionSpec(H, phi, ((0, 0, 1),), lambda q: (q[0], q[1], 0), elems)


def extension_spec_for(total: Group, quotient: Group, radius: int = 3) -> ExtensionSpec:
    """Canonical extension data for the registered (total, quotient) pairs."""
    phi = canonical_quotient(total, quotient)
    if isinstance(total, HeisenbergZ):
        return heisenberg_center_extension(radius)
    if isinstance(total, HeisenbergModP):
        return ExtensionSpec(total, phi, ((0, 0, 1),))
    if total.is_finite:
        return ExtensionSpec(total, phi, tuple(phi.kernel()))
    if total == quotient:
        return ExtensionSpec(total, phi)
    raise PreconditionError(f"no canonical extension data for {total} -> {quotient}")


def _damping(length: int, mode: str):
    w = math.exp(-length)
    # e^-L is irrational; rational mode uses a fixed rational approximation
    return Fraction(w).limit_denominator(10 ** 9) if mode == RATIONAL else w


def build_extension_measure(spec: ExtensionSpec, nu: Measure, t, weight_rule: str = "symmetric",
                            damping: bool = True, length_cap: int = 32) -> Measure:
    """mu = mu_1 + mu_2 with phi_* mu = (1 - t) delta_e + t nu.

    mu_2 puts t nu(q) on the lift of each q in supp nu.  mu_1 has mass 1 - t
    spread over the enumeration of N with weights f(i) e^{-|x_i|}
    (f(i) = 2^-(i+1), or 2^-(p+1) with p the index of the pair {x, x^-1}
    for ``weight_rule="symmetric"``); the damping factor is only used when
    the total group has designated generators.
    """
    g, mode = spec.total, nu.mode
    require_probability(nu, "nu")
    if nu.group != spec.quotient:
        raise PreconditionError(f"nu lives on {nu.group}, expected the quotient {spec.quotient}")
    t = Fraction(t) if mode == RATIONAL else float(t)
    if not 0 < t < 1:
        raise PreconditionError(f"t must lie in (0, 1), got {t}")
    mu2 = {}
    for q, w in nu.items():
        lift = g.check(spec.lift(q))
        if spec.quotient_map(lift) != q:
            raise PreconditionError(f"section maps {nu.group.serialize(q)} to {g.serialize(lift)}, "
                                    f"which is not in its coset", witness=q)
        mu2[lift] = mu2.get(lift, 0) + t * w
    elems = spec.enumeration()
    if weight_rule == "geometric":
        exps = list(range(len(elems)))
    elif weight_rule == "symmetric":
        pair, exps, npairs = {}, [], 0
        for x in elems:
            p = pair.get(g.inv(x))
            if p is None:
                p, npairs = npairs, npairs + 1
            pair[x] = p
            exps.append(p)
    else:
        raise PreconditionError(f"unknown weight rule {weight_rule!r}")
    use_damping = damping and bool(g.generators)
    lengths = word_lengths(g, elems, cap=length_cap) if use_damping else {}
    raw = {}
    for x, k in zip(elems, exps):
        f = Fraction(1, 2 ** (k + 1)) if mode == RATIONAL else 2.0 ** -(k + 1)
        if use_damping:
            if lengths.get(x) is None:
                raise PreconditionError(f"word length of {g.serialize(x)} exceeds cap {length_cap}")
            f = f * _damping(lengths[x], mode)
        raw[x] = f
    total0 = sum(raw.values())
    out = dict(mu2)
    for x, f in raw.items():
        out[x] = out.get(x, 0) + (1 - t) * f / total0
    return Measure(g, out, mode)


def symmetrize_conjugation(g: Group, mu: Measure) -> Measure:
    """(1/|G|) sum_x delta_x * mu * delta_x^-1."""
    if not g.is_finite:
        raise UnsupportedOperation("conjugation averaging needs a finite group")
    els = g.elements()
    acc = {}
    for x in els:
        for y, v in mu.items():
            z = g.conj(x, y)
            acc[z] = acc.get(z, 0) + v
    n = len(els)
    w = Fraction(1, n) if mu.mode == RATIONAL else 1.0 / n
    return Measure(g, {z: v * w for z, v in acc.items()}, mu.mode)


# --------------------------------------------------------------------------
# Entropy
# --------------------------------------------------------------------------


@dataclass
class EntropyCurve:
    steps: list = field(default_factory=list)
    entropy: list = field(default_factory=list)
    pruned_mass: list = field(default_factory=list)
    support_size: list = field(default_factory=list)
    capped: bool = False
    method: str = "convolution"

    def increments(self) -> list:
        return [b - a for a, b in zip(self.entropy, self.entropy[1:])]

    def increments_between(self, lo: int, hi: int) -> list:
        """H(n+1) - H(n) for lo <= n < hi."""
        h = dict(zip(self.steps, self.entropy))
        return [h[n + 1] - h[n] for n in range(lo, hi) if n in h and n + 1 in h]


def entropy_curve(mu: Measure, n_max: int, eps: float = 1e-15, support_cap: int = 2_000_000) -> EntropyCurve:
    """H(mu^n) in nats for n = 0 .. n_max, pruning |coefficient| < eps after each step.

    Stops early with ``capped=True`` if a power's support exceeds ``support_cap``.
    """
    require_probability(mu.to_mode(REAL), "mu")
    mu = mu.to_mode(REAL)
    cur = delta(mu.group, mode=REAL)
    curve = EntropyCurve([0], [0.0], [0.0], [1])
    for n in range(1, n_max + 1):
        nxt = prune(convolve(cur, mu), eps)
        if len(nxt) > support_cap:
            curve.capped = True
            break
        cur = nxt
        curve.steps.append(n)
        curve.entropy.append(entropy(cur))
        curve.pruned_mass.append(cur.pruned)
        curve.support_size.append(len(cur))
    return curve


def sws_lamplighter_measure(group: Lamplighter | None = None, p_right=Fraction(1, 2), mode: str = RATIONAL) -> Measure:
    """rho * P * rho with rho uniform on {e, toggle} and P = p delta_t + (1-p) delta_t^-1."""
    L = group or Lamplighter()
    rho = Measure.uniform(L, [L.identity, L.toggle], mode)
    p = Fraction(p_right) if mode == RATIONAL else float(p_right)
    P = Measure(L, {L.step: p, L.inv(L.step): 1 - p}, mode)
    return convolve(convolve(rho, P), rho)


def detect_sws_lamplighter(mu: Measure):
    """Return p_right if ``mu`` is a switch-walk-switch measure on the lamplighter, else None."""
    if not isinstance(mu.group, Lamplighter):
        return None
    L = mu.group
    p = sum(v for x, v in mu.items() if x[0] == 1)
    if mu.mode == RATIONAL:
        return p if mu == sws_lamplighter_measure(L, p, RATIONAL) else None
    return p if mu.allclose(sws_lamplighter_measure(L, p, REAL)) else None


def lamplighter_sws_entropy(n_max: int, p_right=0.5) -> EntropyCurve:
    """Exact H(mu^n) for the switch-walk-switch measure on Z/2 wr Z.

    Under mu^n the lamps are uniform on the range [a, b] of the base walk
    and off elsewhere, so

        mu^n(x, C) = sum_{I ⊇ hull(C ∪ {0, x})} q(I, x) 2^-|I|

    with q(I, x) the law of (range, endpoint) of the walk.  Points (x, C)
    sharing the hull J have equal mass and are counted in closed form, so
    no group element is ever materialized.
    """
    p = float(p_right)
    q = {(0, 0, 0): 1.0}
    curve = EntropyCurve([0], [0.0], [0.0], [1], method="lumped-exact")
    for n in range(1, n_max + 1):
        nxt = defaultdict(float)
        for (a, b, x), w in q.items():
            for dx, pw in ((1, p), (-1, 1 - p)):
                if pw:
                    y = x + dx
                    nxt[(min(a, y), max(b, y), y)] += w * pw
        q = dict(nxt)
        by_end = defaultdict(list)
        for (a, b, x), w in q.items():
            by_end[x].append((a, b, w * 2.0 ** -(b - a + 1)))
        terms, support = [], 0
        for x, ranges in by_end.items():
            amin = min(r[0] for r in ranges)
            bmax = max(r[1] for r in ranges)
            lo, hi = min(0, x), max(0, x)
            for ja in range(amin, lo + 1):
                for jb in range(hi, bmax + 1):
                    m = sum(w for a, b, w in ranges if a <= ja and b >= jb)
                    if m <= 0:
                        continue
                    if ja == jb:
                        count = 2
                    else:
                        count = 2 ** ((jb - ja - 1) + (ja in (0, x)) + (jb in (0, x)))
                    terms.append(-count * m * math.log(m))
                    support += count
        curve.steps.append(n)
        curve.entropy.append(math.fsum(terms))
        curve.pruned_mass.append(0.0)
        curve.support_size.append(support)
    return curve
