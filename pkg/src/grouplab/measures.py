"""Sparse signed measures on a group and their convolution algebra.

A :class:`Measure` is a finitely supported function ``group -> coefficient``
with no stored zeros.  Coefficients are :class:`fractions.Fraction` in
``"rational"`` mode and ``float`` in ``"real"`` mode; the two modes never
mix.  Convolution is the group-ring product

    (f * g)(z) = sum_{x y = z} f(x) g(y),

so ``delta(a) * delta(b) == delta(ab)``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Number
from typing import Iterable, Mapping

from .errors import GroupMismatch, ModeError, PreconditionError
from .groups import Group, Homomorphism

RATIONAL = "rational"
REAL = "real"
REAL_TOL = 1e-12

_MODE_ALIASES = {"rational": RATIONAL, "exact": RATIONAL, "real": REAL, "float": REAL}


def normalize_mode(mode: str) -> str:
    try:
        return _MODE_ALIASES[mode]
    except KeyError:
        raise ModeError(f"unknown coefficient mode {mode!r}; use 'rational' or 'real'") from None


def coerce(value, mode: str):
    """Convert a scalar into the coefficient type for ``mode``."""
    if mode == RATIONAL:
        if isinstance(value, float):
            raise ModeError(f"float {value!r} given to a rational measure; pass a Fraction or 'p/q' string")
        return Fraction(value)
    return float(value)


class Measure:
    """Finitely supported signed measure.  Treat instances as immutable."""

    __slots__ = ("group", "mode", "_coeffs", "pruned")

    def __init__(self, group: Group, coeffs: Mapping | Iterable = (), mode: str = RATIONAL, pruned: float = 0.0):
        mode = normalize_mode(mode)
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        data: dict = {}
        for x, v in items:
            v = coerce(v, mode)
            data[x] = data.get(x, 0) + v
        self.group = group
        self.mode = mode
        self._coeffs = {x: v for x, v in data.items() if v != 0}
        self.pruned = float(pruned)

    # -- constructors --------------------------------------------------------
    @classmethod
    def _raw(cls, group, coeffs: dict, mode, pruned=0.0):
        m = cls.__new__(cls)
        m.group, m.mode, m.pruned = group, mode, float(pruned)
        m._coeffs = {x: v for x, v in coeffs.items() if v != 0}
        return m

    @classmethod
    def zero(cls, group, mode=RATIONAL):
        return cls._raw(group, {}, normalize_mode(mode))

    @classmethod
    def delta(cls, group, x=None, mode=RATIONAL):
        x = group.identity if x is None else group.check(x)
        mode = normalize_mode(mode)
        return cls._raw(group, {x: coerce(1, mode)}, mode)

    @classmethod
    def uniform(cls, group, support: Iterable, mode=RATIONAL):
        support = [group.check(x) for x in support]
        if not support or len(set(support)) != len(support):
            raise PreconditionError("uniform measure needs a non-empty set of distinct elements")
        mode = normalize_mode(mode)
        w = coerce(Fraction(1, len(support)), mode) if mode == RATIONAL else 1.0 / len(support)
        return cls._raw(group, {x: w for x in support}, mode)

    # -- mapping-like access ---------------------------------------------------
    def __getitem__(self, x):
        return self._coeffs.get(x, coerce(0, self.mode))

    def __contains__(self, x):
        return x in self._coeffs

    def __len__(self):
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def support(self) -> frozenset:
        return frozenset(self._coeffs)

    def sorted_items(self) -> list:
        return sorted(self._coeffs.items(), key=lambda kv: self.group.key(kv[0]))

    def as_dict(self) -> dict:
        return dict(self._coeffs)

    # -- algebra ---------------------------------------------------------------
    def _same(self, other: Measure):
        if self.group != other.group:
            raise GroupMismatch(f"measures live on different groups: {self.group} vs {other.group}")
        if self.mode != other.mode:
            raise ModeError(f"cannot mix {self.mode} and {other.mode} measures")

    def __add__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        self._same(other)
        out = dict(self._coeffs)
        for x, v in other._coeffs.items():
            out[x] = out.get(x, 0) + v
        return Measure._raw(self.group, out, self.mode, self.pruned + other.pruned)

    def __neg__(self):
        return Measure._raw(self.group, {x: -v for x, v in self._coeffs.items()}, self.mode, self.pruned)

    def __sub__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> Measure:
        c = coerce(c, self.mode)
        return Measure._raw(self.group, {x: c * v for x, v in self._coeffs.items()}, self.mode,
                            abs(float(c)) * self.pruned)

    def __mul__(self, other):
        if isinstance(other, Measure):
            return convolve(self, other)
        if isinstance(other, Number):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        return self.group == other.group and self.mode == other.mode and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.group, self.mode, frozenset(self._coeffs.items())))

    def allclose(self, other: Measure, tol: float = REAL_TOL) -> bool:
        if self.group != other.group:
            return False
        keys = set(self._coeffs) | set(other._coeffs)
        return all(abs(float(self[x]) - float(other[x])) <= tol for x in keys)

    def mass(self):
        return sum(self._coeffs.values(), coerce(0, self.mode))

    def to_mode(self, mode: str) -> Measure:
        mode = normalize_mode(mode)
        if mode == self.mode:
            return self
        if mode == REAL:
            return Measure._raw(self.group, {x: float(v) for x, v in self._coeffs.items()}, REAL, self.pruned)
        return Measure._raw(self.group, {x: Fraction(v) for x, v in self._coeffs.items()}, RATIONAL, self.pruned)

    def is_probability(self) -> bool:
        if any(v < 0 for v in self._coeffs.values()):
            return False
        if self.mode == RATIONAL:
            return self.mass() == 1
        return abs(self.mass() - 1.0) <= REAL_TOL

    def __repr__(self):
        body = ", ".join(f"{self.group.serialize(x)}: {v}" for x, v in self.sorted_items()[:8])
        more = ", ..." if len(self) > 8 else ""
        return f"Measure<{self.group}, {self.mode}>({{{body}{more}}})"


def delta(group, x=None, mode=RATIONAL) -> Measure:
    return Measure.delta(group, x, mode)


def uniform(group, support, mode=RATIONAL) -> Measure:
    return Measure.uniform(group, support, mode)


def require_probability(m: Measure, name: str = "measure") -> Measure:
    if not m.is_probability():
        raise PreconditionError(f"{name} is not a probability measure (mass {m.mass()}, "
                                f"min coefficient {min(m._coeffs.values(), default=0)})")
    return m


# --------------------------------------------------------------------------
# Operations
# --------------------------------------------------------------------------


def convolve(f: Measure, g: Measure) -> Measure:
    f._same(g)
    mul = f.group.mul
    out: dict = {}
    get = out.get
    if len(f) <= len(g):
        inner = list(g._coeffs.items())
        for x, a in f._coeffs.items():
            for y, b in inner:
                z = mul(x, y)
                out[z] = get(z, 0) + a * b
    else:
        inner = list(f._coeffs.items())
        for y, b in g._coeffs.items():
            for x, a in inner:
                z = mul(x, y)
                out[z] = get(z, 0) + a * b
    # pruned mass propagates through the product: |f g - f' g'| <= ...
    err = f.pruned * l1_norm(g) + g.pruned * l1_norm(f) + f.pruned * g.pruned
    return Measure._raw(f.group, out, f.mode, err)


def power(P: Measure, n: int, prune_eps: float = 0.0) -> Measure:
    """n-fold convolution power; ``power(P, 0)`` is the Dirac mass at e."""
    if n < 0:
        raise PreconditionError(f"power needs n >= 0, got {n}")
    result = Measure.delta(P.group, mode=P.mode)
    base = P
    while n:
        if n & 1:
            result = prune(convolve(result, base), prune_eps)
        n >>= 1
        if n:
            base = prune(convolve(base, base), prune_eps)
    return result


def powers(P: Measure, n: int) -> list:
    """[P^0, P^1, ..., P^n]."""
    out = [Measure.delta(P.group, mode=P.mode)]
    for _ in range(n):
        out.append(convolve(out[-1], P))
    return out


def cesaro(P: Measure, n: int) -> Measure:
    """Average (1/(n+1)) sum_{i=0}^{n} P^i.

    Starting the sum at i = 0 makes ``cesaro(P, n) * (delta_e - P)`` equal to
    ``(delta_e - P^(n+1)) / (n+1)`` exactly.
    """
    if n < 1:
        raise PreconditionError(f"cesaro needs n >= 1, got {n}")
    term = Measure.delta(P.group, mode=P.mode)
    total = dict(term._coeffs)
    for _ in range(n):
        term = convolve(term, P)
        for x, v in term._coeffs.items():
            total[x] = total.get(x, 0) + v
    w = Fraction(1, n + 1) if P.mode == RATIONAL else 1.0 / (n + 1)
    return Measure._raw(P.group, {x: v * w for x, v in total.items()}, P.mode)


def lazy(nu: Measure, t) -> Measure:
    """t delta_e + (1 - t) nu, for 0 <= t < 1."""
    t = coerce(t, nu.mode)
    if not 0 <= t < 1:
        raise PreconditionError(f"laziness t must lie in [0, 1), got {t}")
    return Measure.delta(nu.group, mode=nu.mode).scale(t) + nu.scale(1 - t)


def pushforward(phi: Homomorphism, mu: Measure) -> Measure:
    if mu.group != phi.source:
        raise GroupMismatch(f"measure on {mu.group} cannot be pushed through a map from {phi.source}")
    out: dict = {}
    for x, v in mu._coeffs.items():
        y = phi(x)
        out[y] = out.get(y, 0) + v
    return Measure._raw(phi.target, out, mu.mode, mu.pruned)


def invert(mu: Measure) -> Measure:
    """x -> mu(x^-1)."""
    inv = mu.group.inv
    return Measure._raw(mu.group, {inv(x): v for x, v in mu._coeffs.items()}, mu.mode, mu.pruned)


def is_symmetric(mu: Measure) -> bool:
    other = invert(mu)
    if mu.mode == RATIONAL:
        return mu == other
    return mu.allclose(other, REAL_TOL)


def l1_norm(mu: Measure):
    return sum((abs(v) for v in mu._coeffs.values()), coerce(0, mu.mode))


def prune(mu: Measure, eps: float) -> Measure:
    """Drop coefficients with |v| < eps; dropped l1 mass is added to ``pruned``."""
    if eps < 0:
        raise PreconditionError(f"pruning threshold must be >= 0, got {eps}")
    if eps == 0:
        return mu
    kept, dropped = {}, 0.0
    for x, v in mu._coeffs.items():
        if abs(v) < eps:
            dropped += abs(float(v))
        else:
            kept[x] = v
    if not dropped:
        return mu
    return Measure._raw(mu.group, kept, mu.mode, mu.pruned + dropped)


def commutator_witness(f: Measure, g: Measure, tol: float = REAL_TOL):
    """First element (canonical order) where f*g and g*f differ, or None."""
    fg, gf = convolve(f, g), convolve(g, f)
    keys = sorted(set(fg) | set(gf), key=f.group.key)
    for x in keys:
        a, b = fg[x], gf[x]
        if (a != b) if f.mode == RATIONAL else abs(a - b) > tol:
            return x
    return None


def entropy(mu: Measure) -> float:
    """Shannon entropy in nats of the (nonnegative part of the) measure."""
    return -math.fsum(float(v) * math.log(float(v)) for v in mu._coeffs.values() if v > 0)
