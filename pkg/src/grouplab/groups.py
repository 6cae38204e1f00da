"""Concrete countable groups, homomorphisms and conjugation machinery.

Elements are plain hashable Python values (tuples of ints, or
``(position, frozenset)`` for the lamplighter).  A :class:`Group` knows how
to multiply, invert, validate and serialize its elements; nothing else
about an element is assumed anywhere in the package.

Heisenberg law (both the integer and the mod-p version)::

    (a, b, c) . (a', b', c') = (a + a', b + b', c + c' + a*b')

so the centre is ``{(0, 0, c)}``.  Dihedral elements are ``(k, s)`` meaning
``r^k s^s`` with ``s r = r^-1 s``.
"""
from __future__ import annotations

import functools
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

from .errors import ElementError, GroupMismatch, PreconditionError, UnsupportedOperation

Element = Hashable


# --------------------------------------------------------------------------
# Base class
# --------------------------------------------------------------------------


class Group:
    kind: str = "abstract"
    generators: tuple = ()

    # -- subclass contract -------------------------------------------------
    @property
    def identity(self) -> Element:
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def check(self, a) -> Element:
        """Return ``a`` if it is a well-formed element, else raise ElementError."""
        raise NotImplementedError

    def serialize(self, a) -> Any:
        raise NotImplementedError

    def deserialize(self, data) -> Element:
        raise NotImplementedError

    def params(self) -> dict:
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return False

    @property
    def order(self) -> int | None:
        return None

    def _all_elements(self) -> Iterable:
        raise UnsupportedOperation(f"{self.kind} is infinite and cannot be enumerated")

    def is_central_by_construction(self, a) -> bool:
        return a == self.identity

    def default_generators(self) -> tuple:
        return ()

    # -- shared machinery --------------------------------------------------
    def key(self, a) -> tuple:
        """Sort key: the canonical serialization flattened into nested tuples."""
        return _freeze(self.serialize(a))

    def spec(self) -> dict:
        out = {"kind": self.kind, **self.params()}
        if self.generators and tuple(self.generators) != tuple(self.default_generators()):
            out["generators"] = [self.serialize(x) for x in self.generators]
        return out

    def elements(self) -> tuple:
        """All elements sorted by canonical serialization (finite kinds only)."""
        if not self.is_finite:
            raise UnsupportedOperation(f"{self.kind} is infinite and cannot be enumerated")
        return _cached_elements(self)

    def index(self) -> dict:
        """Map element -> position in :meth:`elements`."""
        return _cached_index(self)

    def power(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result, base = self.identity, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def conj(self, x, a):
        """x a x^-1"""
        return self.mul(self.mul(x, a), self.inv(x))

    def element_order(self, a, cap: int = 10_000) -> int | None:
        """Order of ``a``; ``None`` if it is not reached within ``cap``."""
        x, e = a, self.identity
        for n in range(1, cap + 1):
            if x == e:
                return n
            x = self.mul(x, a)
        return None

    def symmetric_generators(self) -> tuple:
        gens = []
        for s in self.generators:
            for x in (s, self.inv(s)):
                if x not in gens and x != self.identity:
                    gens.append(x)
        return tuple(gens)

    def __str__(self):
        inner = ",".join(f"{k}={v}" for k, v in self.params().items())
        return f"{self.kind}({inner})"


def _freeze(data):
    if isinstance(data, list):
        return tuple(_freeze(x) for x in data)
    return data


# Group dataclasses are frozen and hashable, so results can be cached per group.
@functools.lru_cache(maxsize=64)
def _cached_elements(g: Group) -> tuple:
    return tuple(sorted(g._all_elements(), key=g.key))


@functools.lru_cache(maxsize=64)
def _cached_index(g: Group) -> dict:
    return {x: i for i, x in enumerate(g.elements())}


def _int_tuple(a, length: int, what: str) -> tuple:
    if not isinstance(a, tuple) or len(a) != length or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in a
    ):
        raise ElementError(f"{what}: expected a tuple of {length} integers, got {a!r}")
    return a


def _int_list(data, length: int, what: str) -> tuple:
    if isinstance(data, int) and not isinstance(data, bool) and length == 1:
        data = [data]
    if not isinstance(data, (list, tuple)):
        raise ElementError(f"{what}: expected an integer array, got {data!r}")
    return _int_tuple(tuple(data), length, what)


# --------------------------------------------------------------------------
# Concrete families
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteAbelian(Group):
    orders: tuple
    generators: tuple = field(default=(), compare=False)
    kind = "finite_abelian"

    def __post_init__(self):
        orders = tuple(self.orders)
        if not orders or any(not isinstance(m, int) or m < 1 for m in orders):
            raise PreconditionError(f"finite_abelian orders must be positive integers, got {self.orders!r}")
        object.__setattr__(self, "orders", orders)
        if not self.generators:
            object.__setattr__(self, "generators", self.default_generators())

    @property
    def identity(self):
        return (0,) * len(self.orders)

    def mul(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.orders))

    def inv(self, a):
        return tuple((-x) % m for x, m in zip(a, self.orders))

    def check(self, a):
        _int_tuple(a, len(self.orders), self.kind)
        if any(not 0 <= x < m for x, m in zip(a, self.orders)):
            raise ElementError(f"{self.kind}: {a!r} out of range for orders {self.orders}")
        return a

    def serialize(self, a):
        return list(a)

    def deserialize(self, data):
        return self.check(_int_list(data, len(self.orders), self.kind))

    def params(self):
        return {"orders": list(self.orders)}

    @property
    def is_finite(self):
        return True

    @property
    def order(self):
        out = 1
        for m in self.orders:
            out *= m
        return out

    def _all_elements(self):
        return itertools.product(*(range(m) for m in self.orders))

    def is_central_by_construction(self, a):
        return True

    def default_generators(self):
        d = len(self.orders)
        return tuple(tuple(int(i == j) % self.orders[i] for i in range(d)) for j in range(d)
                     if self.orders[j] > 1)


def cyclic(m: int) -> FiniteAbelian:
    return FiniteAbelian((m,))


@dataclass(frozen=True)
class Dihedral(Group):
    """Dihedral group of order 2n; element (k, s) is r^k s^s."""

    n: int
    generators: tuple = field(default=(), compare=False)
    kind = "dihedral"

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise PreconditionError(f"dihedral n must be a positive integer, got {self.n!r}")
        if not self.generators:
            object.__setattr__(self, "generators", self.default_generators())

    @property
    def identity(self):
        return (0, 0)

    def mul(self, a, b):
        k1, s1 = a
        k2, s2 = b
        return ((k1 + (-k2 if s1 else k2)) % self.n, (s1 + s2) % 2)

    def inv(self, a):
        k, s = a
        return a if s else ((-k) % self.n, 0)

    def check(self, a):
        _int_tuple(a, 2, self.kind)
        if not (0 <= a[0] < self.n and a[1] in (0, 1)):
            raise ElementError(f"dihedral({self.n}): {a!r} out of range")
        return a

    def serialize(self, a):
        return list(a)

    def deserialize(self, data):
        return self.check(_int_list(data, 2, self.kind))

    def params(self):
        return {"n": self.n}

    @property
    def is_finite(self):
        return True

    @property
    def order(self):
        return 2 * self.n

    def _all_elements(self):
        return itertools.product(range(self.n), range(2))

    def is_central_by_construction(self, a):
        k, s = a
        return s == 0 and (2 * k) % self.n == 0

    def default_generators(self):
        return ((1 % self.n, 0), (0, 1))

    @property
    def r(self):
        return (1 % self.n, 0)

    @property
    def s(self):
        return (0, 1)


def _heis_mul(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1])


def _heis_inv(a):
    x, y, z = a
    return (-x, -y, x * y - z)


@dataclass(frozen=True)
class HeisenbergModP(Group):
    p: int
    generators: tuple = field(default=(), compare=False)
    kind = "heisenberg_mod_p"

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2:
            raise PreconditionError(f"heisenberg_mod_p needs p >= 2, got {self.p!r}")
        if not self.generators:
            object.__setattr__(self, "generators", self.default_generators())

    @property
    def identity(self):
        return (0, 0, 0)

    def mul(self, a, b):
        return tuple(v % self.p for v in _heis_mul(a, b))

    def inv(self, a):
        return tuple(v % self.p for v in _heis_inv(a))

    def check(self, a):
        _int_tuple(a, 3, self.kind)
        if any(not 0 <= v < self.p for v in a):
            raise ElementError(f"heisenberg_mod_p({self.p}): {a!r} out of range")
        return a

    def serialize(self, a):
        return list(a)

    def deserialize(self, data):
        return self.check(_int_list(data, 3, self.kind))

    def params(self):
        return {"p": self.p}

    @property
    def is_finite(self):
        return True

    @property
    def order(self):
        return self.p ** 3

    def _all_elements(self):
        return itertools.product(range(self.p), repeat=3)

    def is_central_by_construction(self, a):
        return a[0] == 0 and a[1] == 0

    def default_generators(self):
        return ((1, 0, 0), (0, 1, 0))

    def center_generators(self):
        return ((0, 0, 1),)


@dataclass(frozen=True)
class ZD(Group):
    d: int
    generators: tuple = field(default=(), compare=False)
    kind = "zd"

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise PreconditionError(f"zd needs d >= 1, got {self.d!r}")
        if not self.generators:
            object.__setattr__(self, "generators", self.default_generators())

    @property
    def identity(self):
        return (0,) * self.d

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def check(self, a):
        return _int_tuple(a, self.d, self.kind)

    def serialize(self, a):
        return list(a)

    def deserialize(self, data):
        return self.check(_int_list(data, self.d, self.kind))

    def params(self):
        return {"d": self.d}

    def is_central_by_construction(self, a):
        return True

    def default_generators(self):
        return tuple(tuple(int(i == j) for i in range(self.d)) for j in range(self.d))


@dataclass(frozen=True)
class HeisenbergZ(Group):
    generators: tuple = field(default=(), compare=False)
    kind = "heisenberg_z"

    def __post_init__(self):
        if not self.generators:
            object.__setattr__(self, "generators", self.default_generators())

    @property
    def identity(self):
        return (0, 0, 0)

    def mul(self, a, b):
        return _heis_mul(a, b)

    def inv(self, a):
        return _heis_inv(a)

    def check(self, a):
        return _int_tuple(a, 3, self.kind)

    def serialize(self, a):
        return list(a)

    def deserialize(self, data):
        return self.check(_int_list(data, 3, self.kind))

    def params(self):
        return {}

    def is_central_by_construction(self, a):
        return a[0] == 0 and a[1] == 0

    def default_generators(self):
        return ((1, 0, 0), (0, 1, 0))


@dataclass(frozen=True)
class Lamplighter(Group):
    """Z/2 wreath Z.  Element ``(position, lit)`` with ``lit`` a frozenset of ints.

    ``(p, L) . (q, M) = (p + q, L xor (M + p))``.
    """

    generators: tuple = field(default=(), compare=False)
    kind = "lamplighter"

    def __post_init__(self):
        if not self.generators:
            object.__setattr__(self, "generators", self.default_generators())

    @property
    def identity(self):
        return (0, frozenset())

    def mul(self, a, b):
        p, lit = a
        q, other = b
        if not other:
            return (p + q, lit)
        return (p + q, lit ^ frozenset(m + p for m in other))

    def inv(self, a):
        p, lit = a
        return (-p, frozenset(m - p for m in lit))

    def check(self, a):
        ok = (
            isinstance(a, tuple) and len(a) == 2 and isinstance(a[0], int)
            and not isinstance(a[0], bool) and isinstance(a[1], frozenset)
            and all(isinstance(m, int) and not isinstance(m, bool) for m in a[1])
        )
        if not ok:
            raise ElementError(f"lamplighter: expected (int, frozenset[int]), got {a!r}")
        return a

    def serialize(self, a):
        return [a[0], sorted(a[1])]

    def deserialize(self, data):
        if not (isinstance(data, (list, tuple)) and len(data) == 2 and isinstance(data[1], (list, tuple))):
            raise ElementError(f"lamplighter: expected [position, [lit positions...]], got {data!r}")
        lit = list(data[1])
        if len(set(lit)) != len(lit):
            raise ElementError(f"lamplighter: repeated lamp position in {data!r}")
        return self.check((data[0], frozenset(lit)))

    def key(self, a):
        return (a[0], tuple(sorted(a[1])))

    def params(self):
        return {}

    def default_generators(self):
        return ((1, frozenset()), (0, frozenset({0})))

    @property
    def step(self):
        return (1, frozenset())

    @property
    def toggle(self):
        return (0, frozenset({0}))


@dataclass(frozen=True)
class DirectProduct(Group):
    factors: tuple
    generators: tuple = field(default=(), compare=False)
    kind = "direct_product"

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise PreconditionError("direct_product needs at least one factor")
        if not self.generators:
            object.__setattr__(self, "generators", self.default_generators())

    @property
    def identity(self):
        return tuple(f.identity for f in self.factors)

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def inv(self, a):
        return tuple(f.inv(x) for f, x in zip(self.factors, a))

    def check(self, a):
        if not isinstance(a, tuple) or len(a) != len(self.factors):
            raise ElementError(f"direct_product: expected a {len(self.factors)}-tuple, got {a!r}")
        for f, x in zip(self.factors, a):
            f.check(x)
        return a

    def serialize(self, a):
        return [f.serialize(x) for f, x in zip(self.factors, a)]

    def deserialize(self, data):
        if not isinstance(data, (list, tuple)) or len(data) != len(self.factors):
            raise ElementError(f"direct_product: expected {len(self.factors)} components, got {data!r}")
        return tuple(f.deserialize(x) for f, x in zip(self.factors, data))

    def key(self, a):
        return tuple(f.key(x) for f, x in zip(self.factors, a))

    def params(self):
        return {"factors": [f.spec() for f in self.factors]}

    @property
    def is_finite(self):
        return all(f.is_finite for f in self.factors)

    @property
    def order(self):
        if not self.is_finite:
            return None
        out = 1
        for f in self.factors:
            out *= f.order
        return out

    def _all_elements(self):
        return itertools.product(*(f.elements() for f in self.factors))

    def is_central_by_construction(self, a):
        return all(f.is_central_by_construction(x) for f, x in zip(self.factors, a))

    def default_generators(self):
        gens = []
        for i, f in enumerate(self.factors):
            for s in f.generators:
                gens.append(tuple(s if j == i else h.identity for j, h in enumerate(self.factors)))
        return tuple(gens)


_KINDS = {
    "finite_abelian": lambda spec: FiniteAbelian(tuple(spec["orders"])),
    "dihedral": lambda spec: Dihedral(spec["n"]),
    "heisenberg_mod_p": lambda spec: HeisenbergModP(spec["p"]),
    "zd": lambda spec: ZD(spec["d"]),
    "heisenberg_z": lambda spec: HeisenbergZ(),
    "lamplighter": lambda spec: Lamplighter(),
    "direct_product": lambda spec: DirectProduct(tuple(group_from_spec(f) for f in spec["factors"])),
}


def group_from_spec(spec: dict) -> Group:
    """Build a group from its JSON spec, e.g. ``{"kind": "dihedral", "n": 4}``."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise PreconditionError(f"group spec must be an object with a 'kind' field, got {spec!r}")
    kind = spec["kind"]
    if kind not in _KINDS:
        raise PreconditionError(f"unknown group kind {kind!r}; expected one of {sorted(_KINDS)}")
    try:
        g = _KINDS[kind](spec)
    except KeyError as exc:
        raise PreconditionError(f"group spec for {kind!r} is missing field {exc}") from None
    except TypeError as exc:
        raise PreconditionError(f"bad group spec {spec!r}: {exc}") from None
    if "generators" in spec:
        gens = tuple(g.deserialize(x) for x in spec["generators"])
        object.__setattr__(g, "generators", gens)
    return g


# --------------------------------------------------------------------------
# Validated element operations
# --------------------------------------------------------------------------


def group_mul(g: Group, a, b):
    return g.mul(g.check(a), g.check(b))


def group_inv(g: Group, a):
    return g.inv(g.check(a))


def enumerate_group(g: Group) -> tuple:
    return g.elements()


def conjugacy_class(g: Group, a) -> frozenset:
    g.check(a)
    if not g.is_finite:
        if g.is_central_by_construction(a):
            return frozenset([a])
        raise UnsupportedOperation(f"conjugacy class of {a!r} in infinite {g.kind} is not computable here")
    return frozenset(g.conj(x, a) for x in g.elements())


def conjugacy_classes(g: Group) -> list:
    seen, classes = set(), []
    for a in g.elements():
        if a not in seen:
            cls = conjugacy_class(g, a)
            seen |= cls
            classes.append(cls)
    return classes


def word_length(g: Group, a, cap: int = 64, generators: Sequence | None = None) -> int | None:
    """Geodesic length of ``a`` in the Cayley graph; ``None`` past radius ``cap``.

    Uses the designated generators of ``g`` (plus inverses) unless
    ``generators`` is given.
    """
    g.check(a)
    gens = g.symmetric_generators() if generators is None else tuple(generators)
    if a == g.identity:
        return 0
    if not gens:
        raise PreconditionError(f"{g} has no designated generating set")
    seen = {g.identity}
    frontier = [g.identity]
    for radius in range(1, cap + 1):
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.mul(x, s)
                if y not in seen:
                    if y == a:
                        return radius
                    seen.add(y)
                    nxt.append(y)
        if not nxt:
            return None
        frontier = nxt
    return None


def word_lengths(g: Group, targets: Iterable, cap: int = 64) -> dict:
    """Word length of every target from a single breadth-first search; ``None`` past ``cap``."""
    wanted = {g.check(a) for a in targets}
    out = {a: None for a in wanted}
    if g.identity in wanted:
        out[g.identity] = 0
    remaining = wanted - {g.identity}
    gens = g.symmetric_generators()
    if remaining and not gens:
        raise PreconditionError(f"{g} has no designated generating set")
    seen = {g.identity}
    frontier = [g.identity]
    radius = 0
    while remaining and frontier and radius < cap:
        radius += 1
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if y in remaining:
                        out[y] = radius
                        remaining.discard(y)
        frontier = nxt
    return out


def subgroup_closure(g: Group, generators: Iterable, cap: int | None = None) -> frozenset:
    """Subgroup generated by ``generators`` via breadth-first multiplication.

    ``cap`` bounds the number of elements (default: |g| for finite groups);
    exceeding it raises PreconditionError.
    """
    gens = [g.check(s) for s in generators]
    gens = gens + [g.inv(s) for s in gens]
    if cap is None:
        cap = g.order if g.is_finite else 100_000
    seen = {g.identity}
    queue = deque([g.identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = g.mul(x, s)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise PreconditionError(f"subgroup closure exceeds cap of {cap} elements")
                queue.append(y)
    return frozenset(seen)


def center(g: Group) -> frozenset:
    els = g.elements()
    return frozenset(a for a in els if all(g.mul(a, x) == g.mul(x, a) for x in els))


def is_normal(g: Group, subgroup: frozenset) -> bool:
    return all(g.conj(x, h) in subgroup for x in g.elements() for h in subgroup)


# --------------------------------------------------------------------------
# Homomorphisms
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Homomorphism:
    source: Group
    target: Group
    rule: Callable = field(compare=False)
    label: str = "map"

    def __call__(self, a):
        return self.rule(a)

    def kernel(self) -> frozenset:
        e = self.target.identity
        return frozenset(a for a in self.source.elements() if self(a) == e)


def identity_map(g: Group) -> Homomorphism:
    return Homomorphism(g, g, lambda a: a, "identity")


def projection(source: Group, target: Group, indices: Sequence[int]) -> Homomorphism:
    """Keep the coordinates ``indices`` of a tuple-valued element.

    Valid as a homomorphism e.g. for Heisenberg -> Z^2 (drop the central
    coordinate) or for projections of Z^d / finite abelian groups.
    """
    idx = tuple(indices)
    if isinstance(source, DirectProduct):
        if len(idx) == 1:
            return Homomorphism(source, target, lambda a: a[idx[0]], f"factor{idx}")
        return Homomorphism(source, target, lambda a: tuple(a[i] for i in idx), f"factors{idx}")
    return Homomorphism(source, target, lambda a: tuple(a[i] for i in idx), f"coords{idx}")


def reduction(source: Group, target: Group) -> Homomorphism:
    """Coordinate-wise reduction (Z^d -> prod Z/m_i, H(Z) -> H(Z/p))."""
    if isinstance(source, ZD) and isinstance(target, FiniteAbelian) and len(target.orders) == source.d:
        ms = target.orders
        return Homomorphism(source, target, lambda a: tuple(x % m for x, m in zip(a, ms)), "mod")
    if isinstance(source, HeisenbergZ) and isinstance(target, HeisenbergModP):
        p = target.p
        return Homomorphism(source, target, lambda a: tuple(x % p for x in a), f"mod{p}")
    if isinstance(source, FiniteAbelian) and isinstance(target, FiniteAbelian) and len(source.orders) == len(target.orders):
        if any(m % n for m, n in zip(source.orders, target.orders)):
            raise PreconditionError(f"cannot reduce {source} onto {target}: orders do not divide")
        ns = target.orders
        return Homomorphism(source, target, lambda a: tuple(x % n for x, n in zip(a, ns)), "mod")
    raise PreconditionError(f"no reduction map from {source} to {target}")


def lamplighter_position(source: Lamplighter, target: ZD | None = None) -> Homomorphism:
    target = target or ZD(1)
    return Homomorphism(source, target, lambda a: (a[0],), "position")


def from_generator_images(source: Group, target: Group, images: dict) -> Homomorphism:
    """Extend a map on generators of a finite ``source`` to a homomorphism.

    A table is built by breadth-first search over words; any inconsistency
    (a relation of ``source`` not satisfied in ``target``) raises
    PreconditionError.
    """
    if not source.is_finite:
        raise UnsupportedOperation("from_generator_images needs a finite source group")
    gens = list(images)
    table = {source.identity: target.identity}
    queue = deque([source.identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y, fy = source.mul(x, s), target.mul(table[x], images[s])
            if y in table:
                if table[y] != fy:
                    raise PreconditionError(f"generator images are inconsistent at {y!r}", witness=y)
            else:
                table[y] = fy
                queue.append(y)
    if len(table) != source.order:
        raise PreconditionError("given generators do not generate the source group")
    # consistency of the BFS tree is not enough; check every product
    for a in source.elements():
        for b in source.elements():
            if table[source.mul(a, b)] != target.mul(table[a], table[b]):
                raise PreconditionError(f"not a homomorphism at ({a!r}, {b!r})", witness=(a, b))
    return Homomorphism(source, target, table.__getitem__, "generated")


def canonical_quotient(total: Group, quotient: Group) -> Homomorphism:
    """The natural quotient map between two registered group kinds."""
    if isinstance(total, HeisenbergZ) and isinstance(quotient, ZD) and quotient.d == 2:
        return projection(total, quotient, (0, 1))
    if isinstance(total, HeisenbergModP) and isinstance(quotient, FiniteAbelian) and quotient.orders == (total.p, total.p):
        return projection(total, quotient, (0, 1))
    if isinstance(total, Lamplighter) and isinstance(quotient, ZD) and quotient.d == 1:
        return lamplighter_position(total, quotient)
    if total == quotient:
        return identity_map(total)
    return reduction(total, quotient)
