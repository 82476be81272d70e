"""Fractional ideals of quadratic orders ``D = Z + f*omega*Z``.

Elements of ``K = Q(sqrt d)`` are pairs ``(x, y)`` of rationals standing for
``x + y*omega`` where ``omega`` generates the maximal order: ``(1+sqrt d)/2``
when ``d = 1 mod 4`` and ``sqrt d`` otherwise.  Ideals are stored as
:class:`~fracideal.lattice.Lattice2` in those coordinates.

The order has its own canonical generator ``w`` (``sqrt(Delta/4)`` or
``(1 + sqrt Delta)/2`` for the discriminant ``Delta = f^2 d_K``) so that
``D = Z + wZ``; user-facing element syntax ``u + v*w`` refers to it.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from .errors import InternalInconsistency, MixedOrders, ZeroElement
from .lattice import Lattice2, Rat

__all__ = [
    "FracIdealQ",
    "PrimeAbove",
    "QuadOrder",
    "colon",
    "essential_at",
    "ideal_add",
    "ideal_intersect",
    "ideal_mul",
    "inverse",
    "is_maximal_order",
    "principal",
    "t_closure",
    "v_closure",
]

Elem = tuple[Rat, Rat]


def _squarefree(n: int) -> bool:
    n = abs(n)
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class QuadOrder:
    """The order of conductor ``f`` in ``Q(sqrt d)``."""

    d: int
    f: int = 1

    def __post_init__(self) -> None:
        if self.d in (0, 1) or not _squarefree(self.d):
            raise ValueError(f"d must be a squarefree integer other than 0, 1; got {self.d}")
        if self.f < 1:
            raise ValueError(f"conductor must be >= 1; got {self.f}")

    # omega^2 = trace * omega + const
    @cached_property
    def _tn(self) -> tuple[int, int]:
        if self.d % 4 == 1:
            return 1, (self.d - 1) // 4
        return 0, self.d

    @cached_property
    def shift(self) -> int:
        """Integer ``k`` with ``w = f*omega + k``."""
        if self.d % 4 != 1:
            return 0
        if self.f % 2:
            return (1 - self.f) // 2
        return -(self.f // 2)

    @property
    def discriminant(self) -> int:
        dk = self.d if self.d % 4 == 1 else 4 * self.d
        return self.f * self.f * dk

    def __str__(self) -> str:
        return f"QuadOrder(d={self.d}, f={self.f})"

    # -- element arithmetic -------------------------------------------------
    def mul(self, x: Sequence, y: Sequence) -> tuple:
        t, n = self._tn
        x0, x1 = x
        y0, y1 = y
        return (x0 * y0 + n * x1 * y1, x0 * y1 + x1 * y0 + t * x1 * y1)

    def conj(self, x: Sequence) -> tuple:
        t, _ = self._tn
        return (x[0] + t * x[1], -x[1])

    def norm(self, x: Sequence):
        t, n = self._tn
        return x[0] * x[0] + t * x[0] * x[1] - n * x[1] * x[1]

    def inv(self, x: Sequence) -> Elem:
        nx = self.norm(x)
        if nx == 0:
            raise ZeroElement("zero has no inverse")
        cx = self.conj(x)
        return (Rat(cx[0]) / nx, Rat(cx[1]) / nx)

    def element(self, u, v=0) -> Elem:
        """``u + v*w`` in internal coordinates."""
        u, v = Rat(u), Rat(v)
        return (u + v * self.shift, v * self.f)

    def order_coords(self, x: Sequence) -> Elem:
        """Inverse of :meth:`element`."""
        v = Rat(x[1]) / self.f
        return (Rat(x[0]) - v * self.shift, v)

    def contains_element(self, x: Sequence) -> bool:
        u, v = self.order_coords(x)
        return u.denominator == 1 and v.denominator == 1

    def format_element(self, x: Sequence) -> str:
        u, v = self.order_coords(x)
        if v == 0:
            return str(u)
        vs = "w" if v == 1 else "-w" if v == -1 else f"{v}*w"
        if u == 0:
            return vs
        return f"{u}-{vs[1:]}" if vs.startswith("-") else f"{u}+{vs}"

    def height_key(self, x: Sequence) -> tuple:
        u, v = self.order_coords(x)
        return (max(abs(u), abs(v)), u, v)

    # -- ideals ------------------------------------------------------------
    @cached_property
    def _one(self) -> FracIdealQ:
        return FracIdealQ._trusted(self, Lattice2.from_int_rows(((1, 0), (0, self.f))))

    def one(self) -> FracIdealQ:
        """D itself."""
        return self._one

    def principal(self, x: Sequence) -> FracIdealQ:
        return principal(self, x)

    def ideal(self, gens: Sequence[Sequence]) -> FracIdealQ:
        """D-module generated by ``gens``."""
        if not gens:
            raise ZeroElement("empty generator list")
        rows = []
        g = (0, self.f)
        for x in gens:
            rows.append(tuple(x))
            rows.append(self.mul(x, g))
        try:
            return FracIdealQ._trusted(self, Lattice2.from_rows(rows))
        except ValueError:
            raise ZeroElement("ideal generated by zero") from None

    @cached_property
    def maximal(self) -> FracIdealQ:
        """The maximal order as a fractional ideal of this order."""
        return FracIdealQ._trusted(self, Lattice2.from_int_rows(((1, 0), (0, 1))))

    @cached_property
    def conductor(self) -> FracIdealQ:
        """``f * O_K``, the largest common ideal of D and O_K."""
        return FracIdealQ._trusted(self, Lattice2.from_int_rows(((self.f, 0), (0, self.f))))

    def elements(self, height: int) -> list[Elem]:
        """Nonzero ``u + v*w`` with ``|u|, |v| <= height`` in height order."""
        coords = [
            (u, v)
            for u in range(-height, height + 1)
            for v in range(-height, height + 1)
            if u or v
        ]
        coords.sort(key=lambda c: (max(abs(c[0]), abs(c[1])), c))
        return [self.element(u, v) for u, v in coords]

    def special_ideals(self) -> list[tuple[tuple, tuple]]:
        """Generator pairs of the conductor-adjacent ideal ``(f, f*omega)``."""
        if self.f == 1:
            return []
        return [(self.element(self.f), (Rat(0), Rat(self.f)))]

    def random_element(self, rng: random.Random, height: int = 10) -> Elem:
        while True:
            u = rng.randint(-height, height)
            v = rng.randint(-height, height)
            if u or v:
                return self.element(u, v)

    def random_ideal(self, rng: random.Random, height: int = 10) -> FracIdealQ:
        """Random two-generated fractional ideal, occasionally conductor-adjacent."""
        if self.f > 1 and rng.random() < 0.05:
            base = self.conductor
        else:
            a = self.random_element(rng, height)
            b = self.random_element(rng, height)
            base = self.ideal([a, b])
        r = rng.randint(1, 6)
        return base.scale(Rat(1, r))

    def theory_oracle(self) -> bool:
        return is_maximal_order(self)

    def describe(self) -> dict:
        return {"kind": "quadratic", "d": self.d, "f": self.f}


# -- memoized integer kernels -------------------------------------------------
# Ideals are split as scale * integral HNF lattice; rational scales factor out
# of colon and product, so the caches see far fewer distinct keys.


def _unit(lat: Lattice2) -> Lattice2:
    return Lattice2(lat.a, lat.b, lat.c, Rat(1))


def _scaled_rows(order: QuadOrder, x: Sequence[int], lat: Lattice2) -> list[tuple]:
    return [order.mul(x, (lat.a, lat.b)), order.mul(x, (0, lat.c))]


@lru_cache(maxsize=1 << 16)
def _colon_unit(order: QuadOrder, la: Lattice2, lb: Lattice2) -> Lattice2:
    # (A : B) = ∩ over a Z-basis e of B of e^{-1} A
    result = None
    for e in ((lb.a, lb.b), (0, lb.c)):
        ce = order.conj(e)
        ne = abs(order.norm(e))
        part = Lattice2.from_int_rows(_scaled_rows(order, ce, la), Rat(1, ne))
        result = part if result is None else result & part
    return result


@lru_cache(maxsize=1 << 16)
def _mul_unit(order: QuadOrder, la: Lattice2, lb: Lattice2) -> Lattice2:
    rows = []
    for e in ((la.a, la.b), (0, la.c)):
        rows.extend(_scaled_rows(order, e, lb))
    return Lattice2.from_int_rows(rows)


@lru_cache(maxsize=1 << 16)
def _intersect_rel(la: Lattice2, lb: Lattice2) -> Lattice2:
    return la & lb


@dataclass(frozen=True)
class FracIdealQ:
    """A nonzero fractional ideal of a quadratic order."""

    order: QuadOrder
    module: Lattice2

    def __post_init__(self) -> None:
        g = (0, self.order.f)
        for e in self.module.vectors():
            if self.order.mul(g, e) not in self.module:
                raise ValueError("lattice is not closed under multiplication by the order")

    @classmethod
    def _trusted(cls, order: QuadOrder, module: Lattice2) -> FracIdealQ:
        obj = object.__new__(cls)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "module", module)
        return obj

    def __repr__(self) -> str:
        m = self.module
        return f"FracIdealQ(d={self.order.d}, f={self.order.f}, basis={m.basis}, scale={m.scale})"

    @property
    def domain(self) -> QuadOrder:
        return self.order

    def _check(self, other: FracIdealQ) -> None:
        if self.order != other.order:
            raise MixedOrders(f"{self.order} vs {other.order}")

    def basis(self) -> tuple[Elem, Elem]:
        return self.module.vectors()

    def scale(self, q) -> FracIdealQ:
        return FracIdealQ._trusted(self.order, self.module.scaled(q))

    def times_element(self, x: Sequence) -> FracIdealQ:
        """``x * self`` for a nonzero element ``x`` of K."""
        x0, x1 = Rat(x[0]), Rat(x[1])
        if x0 == 0 and x1 == 0:
            raise ZeroElement("multiplication by zero")
        den = x0.denominator * x1.denominator
        xi = (int(x0 * den), int(x1 * den))
        m = self.module
        rows = _scaled_rows(self.order, xi, _unit(m))
        return FracIdealQ._trusted(self.order, Lattice2.from_int_rows(rows, m.scale / den))

    def __mul__(self, other: FracIdealQ) -> FracIdealQ:
        self._check(other)
        m, n = self.module, other.module
        lat = _mul_unit(self.order, _unit(m), _unit(n)).scaled(m.scale * n.scale)
        return FracIdealQ._trusted(self.order, lat)

    def __add__(self, other: FracIdealQ) -> FracIdealQ:
        self._check(other)
        return FracIdealQ._trusted(self.order, self.module + other.module)

    def __and__(self, other: FracIdealQ) -> FracIdealQ:
        self._check(other)
        m, n = self.module, other.module
        lat = _intersect_rel(_unit(m), n.scaled(1 / m.scale)).scaled(m.scale)
        return FracIdealQ._trusted(self.order, lat)

    def colon(self, other: FracIdealQ) -> FracIdealQ:
        """``(self : other) = {x in K : x*other ⊆ self}``."""
        self._check(other)
        m, n = self.module, other.module
        lat = _colon_unit(self.order, _unit(m), _unit(n)).scaled(m.scale / n.scale)
        return FracIdealQ._trusted(self.order, lat)

    def inverse(self) -> FracIdealQ:
        return self.order.one().colon(self)

    def v(self) -> FracIdealQ:
        return self.inverse().inverse()

    def t(self) -> FracIdealQ:
        """t-closure; the order is Noetherian so it coincides with the v-closure.

        The union over finitely generated subideals is attained at the ideal
        itself. A cheap guard confirms the v-closures of a few subideals stay
        inside the result.
        """
        result = self.v()
        e1, e2 = self.basis()
        for sub in (self.order.principal(e1), self.order.principal(e2)):
            if not sub.v() <= result:
                raise InternalInconsistency(f"t-closure guard failed for {self!r}")
        return result

    def __le__(self, other: FracIdealQ) -> bool:
        self._check(other)
        return self.module <= other.module

    def __ge__(self, other: FracIdealQ) -> bool:
        return other <= self

    def contains_element(self, x: Sequence) -> bool:
        return x in self.module

    def generators(self) -> list[Elem]:
        """A D-generating set with one element when a basis vector suffices."""
        e1, e2 = self.basis()
        for e in (e1, e2):
            if self.order.principal(e) == self:
                return [e]
        return [e1, e2]

    def elements(self, height: int = 3) -> list[Elem]:
        """Nonzero ``k1*e1 + k2*e2`` with ``|k_i| <= height`` in height order."""
        e1, e2 = self.basis()
        coords = [
            (k1, k2)
            for k1 in range(-height, height + 1)
            for k2 in range(-height, height + 1)
            if k1 or k2
        ]
        coords.sort(key=lambda c: (max(abs(c[0]), abs(c[1])), c))
        return [(k1 * e1[0] + k2 * e2[0], k1 * e1[1] + k2 * e2[1]) for k1, k2 in coords]

    def render(self) -> str:
        e1, e2 = self.basis()
        fmt = self.order.format_element
        return f"<{fmt(e1)}, {fmt(e2)}>"


def principal(order: QuadOrder, x: Sequence) -> FracIdealQ:
    """``x*D``; raises ZeroElement for ``x == 0``."""
    if x[0] == 0 and x[1] == 0:
        raise ZeroElement("principal ideal of zero")
    return _principal(order, x[0], x[1])


@lru_cache(maxsize=1 << 14)
def _principal(order: QuadOrder, x0, x1) -> FracIdealQ:
    return order.one().times_element((x0, x1))


def ideal_mul(a: FracIdealQ, b: FracIdealQ) -> FracIdealQ:
    return a * b


def ideal_add(a: FracIdealQ, b: FracIdealQ) -> FracIdealQ:
    return a + b


def ideal_intersect(a: FracIdealQ, b: FracIdealQ) -> FracIdealQ:
    return a & b


def colon(a: FracIdealQ, b: FracIdealQ) -> FracIdealQ:
    return a.colon(b)


def inverse(a: FracIdealQ) -> FracIdealQ:
    return a.inverse()


def v_closure(a: FracIdealQ) -> FracIdealQ:
    return a.v()


def t_closure(a: FracIdealQ) -> FracIdealQ:
    return a.t()


def is_maximal_order(order: QuadOrder) -> bool:
    return order.f == 1


@dataclass(frozen=True)
class PrimeAbove:
    """A prime ``P = (p, g - r)`` (or ``pD`` when inert) of the order over ``p``."""

    p: int
    label: str
    ideal: FracIdealQ
    essential: bool


def essential_at(order: QuadOrder, p: int) -> list[PrimeAbove]:
    """For each prime P of D over p, whether D_P is a valuation ring.

    D_P is one-dimensional Noetherian local, hence a valuation ring iff it is
    a DVR iff P does not contain the conductor ``f*O_K``.  Primes are found by
    factoring the minimal polynomial of ``g = f*omega`` mod p (``D = Z[g]``).
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    t, n = order._tn
    f = order.f
    g = (Rat(0), Rat(f))
    roots = [r for r in range(p) if (r * r - f * t * r - f * f * n) % p == 0]
    cond = order.conductor
    found = []
    if not roots:
        ideals = [(f"({p})", order.ideal([order.element(p)]))]
    else:
        ideals = []
        for r in roots:
            gen = (g[0] - r, g[1])
            label = f"({p}, {order.format_element(gen)})"
            ideals.append((label, order.ideal([order.element(p), gen])))
    for label, P in ideals:
        found.append(PrimeAbove(p, label, P, not cond <= P))
    return found
