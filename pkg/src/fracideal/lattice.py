"""Exact rank-2 lattices in Q^2 kept in a canonical Hermite form.

A lattice is stored as ``scale * span_Z{(a, b), (0, c)}`` with ``a, c > 0``,
``0 <= b < c``, ``gcd(a, b, c) == 1`` and ``scale`` a positive rational (``gmpy2.mpq``).
Every rank-2 Z-module in Q^2 has exactly one such representation, so two
lattices are equal iff their fields are equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable, Sequence

from gmpy2 import mpq as Rat

__all__ = [
    "Rat",
    "Lattice2",
    "RankDeficient",
    "hnf",
    "lattice_intersect",
    "lattice_member",
    "xgcd",
]

Rational = int | Rat


class RankDeficient(ValueError):
    """The given vectors span a module of rank < 2."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s, next_s = 1, 0
    t, next_t = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        s, next_s = next_s, s - q * next_s
        t, next_t = next_t, t - q * next_t
        g, next_g = next_g, g - q * next_g
    if g < 0:
        return -g, -s, -t
    return g, s, t


def _hnf_int(rows: Iterable[Sequence[int]]) -> tuple[int, int, int]:
    # Row-reduce with unimodular 2x2 steps: the pivot row keeps a nonzero
    # first entry, everything eliminated below it only contributes to c.
    p0 = p1 = 0
    c = 0
    for r0, r1 in rows:
        if r0 == 0:
            c = gcd(c, r1)
        elif p0 == 0:
            c = gcd(c, p1)
            p0, p1 = r0, r1
        else:
            g, s, t = xgcd(p0, r0)
            c = gcd(c, (r0 // g) * p1 - (p0 // g) * r1)
            p0, p1 = g, s * p1 + t * r1
    if p0 == 0 or c == 0:
        raise RankDeficient("vectors span a module of rank < 2")
    if p0 < 0:
        p0, p1 = -p0, -p1
    return p0, p1 % c, c


@dataclass(frozen=True, slots=True)
class Lattice2:
    a: int
    b: int
    c: int
    scale: Rat

    @property
    def basis(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (0, self.c))

    @classmethod
    def from_int_rows(cls, rows: Iterable[Sequence[int]], scale: Rational = 1) -> Lattice2:
        """Canonical form of ``scale * span_Z(rows)`` for integer rows."""
        a, b, c = _hnf_int(rows)
        g = gcd(gcd(a, b), c)
        scale = Rat(scale)
        if scale <= 0:
            raise ValueError("scale must be positive")
        if g != 1:
            a, b, c = a // g, b // g, c // g
            scale *= g
        return cls(a, b, c, scale)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[Rational]]) -> Lattice2:
        """Canonical form of the Z-span of rational vectors."""
        rows = [(Rat(x), Rat(y)) for x, y in rows]
        den = 1
        for x, y in rows:
            den = lcm(den, x.denominator, y.denominator)
        ints = [(int(x * den), int(y * den)) for x, y in rows]
        return cls.from_int_rows(ints, Rat(1, den))

    def vectors(self) -> tuple[tuple[Rat, Rat], tuple[Rat, Rat]]:
        s = self.scale
        return ((s * self.a, s * self.b), (Rat(0), s * self.c))

    def index(self) -> Rat:
        """Covolume, i.e. the index relative to Z^2 (rational in general)."""
        return self.scale * self.scale * self.a * self.c

    def scaled(self, q: Rational) -> Lattice2:
        q = Rat(q)
        if q == 0:
            raise RankDeficient("scaling by zero")
        return Lattice2(self.a, self.b, self.c, self.scale * abs(q))

    def dual(self) -> Lattice2:
        """``{y : <x, y> in Z for all x in self}``."""
        a, b, c = self.a, self.b, self.c
        return Lattice2.from_int_rows(((c, 0), (-b, a)), 1 / (self.scale * a * c))

    def __add__(self, other: Lattice2) -> Lattice2:
        s, t = self.scale, other.scale
        den = lcm(s.denominator, t.denominator)
        ms = s.numerator * (den // s.denominator)
        mt = t.numerator * (den // t.denominator)
        rows = (
            (ms * self.a, ms * self.b),
            (0, ms * self.c),
            (mt * other.a, mt * other.b),
            (0, mt * other.c),
        )
        return Lattice2.from_int_rows(rows, Rat(1, den))

    def __and__(self, other: Lattice2) -> Lattice2:
        return lattice_intersect(self, other)

    def __contains__(self, v: Sequence[Rational]) -> bool:
        return lattice_member(v, self)

    def __le__(self, other: Lattice2) -> bool:
        """Submodule test."""
        e1, e2 = self.vectors()
        return lattice_member(e1, other) and lattice_member(e2, other)

    def __ge__(self, other: Lattice2) -> bool:
        return other <= self


def hnf(rows: Iterable[Sequence[Rational]]) -> Lattice2:
    """Canonical lattice spanned by ``rows``; raises RankDeficient below rank 2."""
    return Lattice2.from_rows(rows)


def lattice_intersect(a: Lattice2, b: Lattice2) -> Lattice2:
    # (A ∩ B)^* = A^* + B^*
    if a == b:
        return a
    return (a.dual() + b.dual()).dual()


def lattice_member(v: Sequence[Rational], lat: Lattice2) -> bool:
    x = Rat(v[0]) / lat.scale
    y = Rat(v[1]) / lat.scale
    if x.denominator != 1 or y.denominator != 1:
        return False
    k, r = divmod(x.numerator, lat.a)
    if r:
        return False
    return (y.numerator - k * lat.b) % lat.c == 0
