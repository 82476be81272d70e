"""Relative ideals of numerical semigroups.

This is the additive residuation analogue of fractional-ideal arithmetic:
the semigroup ``S`` plays the ring, ``Z`` the quotient field, Minkowski sum
the product, union the ideal sum and ``I - J = {z : z + J ⊆ I}`` the colon.
It matches monomial ideals of the power-series ring ``k[[S]]``; verdicts on
this backend are statements about the residuation system, not about rings.

An ideal ``I`` (bounded below, ``I + S ⊆ I``) is stored as its minimum and
the finite set of "holes" above the minimum.  Since ``min I + S ⊆ I``, every
integer ``>= min I + conductor`` lies in ``I``, so holes stay below that.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd
from typing import Callable, Iterable, Iterator

from .errors import InternalInconsistency, MixedSemigroups, ZeroElement

__all__ = [
    "NumSemigroup",
    "SGIdeal",
    "sg_colon",
    "sg_intersect",
    "sg_sum",
    "sg_union_gen",
    "sg_v",
]


def _members_upto_conductor(gens: tuple[int, ...]) -> tuple[int, frozenset[int]]:
    m = min(gens)
    member = [True]
    run = 1 if m == 1 else 0
    n = 0
    while run < m:
        n += 1
        ok = any(n - g >= 0 and member[n - g] for g in gens)
        member.append(ok)
        run = run + 1 if ok else 0
    conductor = n - m + 1
    gaps = frozenset(k for k in range(conductor) if not member[k])
    return conductor, gaps


@dataclass(frozen=True)
class NumSemigroup:
    """Numerical semigroup; ``generators`` is reduced to the minimal system."""

    generators: tuple[int, ...]
    conductor: int = field(init=False, compare=False)
    gaps: frozenset[int] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        gens = tuple(sorted(set(int(g) for g in self.generators)))
        if not gens or gens[0] <= 0:
            raise ValueError("generators must be positive integers")
        g = 0
        for x in gens:
            g = gcd(g, x)
        if g != 1:
            raise ValueError(f"generators must have gcd 1; got gcd {g}")
        conductor, gaps = _members_upto_conductor(gens)
        minimal = tuple(
            x
            for x in gens
            if not any(y < x and (x - y) not in gaps for y in range(1, x) if y not in gaps)
        )
        object.__setattr__(self, "generators", minimal)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "gaps", gaps)

    def __str__(self) -> str:
        return "<" + ",".join(map(str, self.generators)) + ">"

    def __contains__(self, n: int) -> bool:
        return n >= 0 and n not in self.gaps

    @property
    def frobenius(self) -> int:
        return self.conductor - 1

    @property
    def multiplicity(self) -> int:
        return self.generators[0]

    @property
    def genus(self) -> int:
        return len(self.gaps)

    # -- element arithmetic ("multiplication" is addition) -----------------
    def mul(self, x: int, y: int) -> int:
        return x + y

    def inv(self, x: int) -> int:
        return -x

    def contains_element(self, x: int) -> bool:
        return x in self

    def format_element(self, x: int) -> str:
        return str(x)

    def height_key(self, x: int) -> tuple:
        return (abs(x), x)

    # -- ideals ------------------------------------------------------------
    @cached_property
    def _one(self) -> SGIdeal:
        return SGIdeal._trusted(self, 0, self.gaps)

    def one(self) -> SGIdeal:
        """S itself."""
        return self._one

    def principal(self, n: int) -> SGIdeal:
        return SGIdeal._trusted(self, n, frozenset(n + g for g in self.gaps))

    def ideal(self, gens: Iterable[int]) -> SGIdeal:
        """``∪ (g + S)``, the ideal generated by ``gens``."""
        gens = list(gens)
        if not gens:
            raise ZeroElement("empty generator list")
        lo = min(gens)
        return _build(self, lo, lo + self.conductor, lambda z: any((z - g) in self for g in gens))

    @cached_property
    def maximal_ideal(self) -> SGIdeal:
        """``M = S \\ {0}``."""
        return self.ideal(self.generators)

    def elements(self, height: int) -> list[int]:
        """Elements of S up to ``height`` (0 plays the role of the unit)."""
        return [n for n in range(height + 1) if n in self]

    def special_ideals(self) -> list[tuple[int, int]]:
        return []

    def offset0_ideals(self) -> list[SGIdeal]:
        """Every ideal with minimum 0; all ideals are translates of these."""
        return list(_offset0_ideals(self))

    def random_ideal(self, rng: random.Random, height: int = 10) -> SGIdeal:
        gaps = sorted(self.gaps)
        chosen = {x for x in gaps if rng.random() < 0.4}
        base = self.ideal([0, *chosen])
        return base.shift(rng.randint(-height, height))

    def random_element(self, rng: random.Random, height: int = 10) -> int:
        return rng.choice(self.elements(max(height, self.conductor)))

    def theory_oracle(self) -> bool | None:
        # only the trivial semigroup N is settled without a sweep
        return True if self.conductor == 0 else None

    def describe(self) -> dict:
        return {"kind": "numerical-semigroup", "generators": list(self.generators)}


@lru_cache(maxsize=None)
def _offset0_ideals(sg: NumSemigroup) -> tuple[SGIdeal, ...]:
    gaps = sorted(sg.gaps, reverse=True)
    gens = sg.generators
    out: list[SGIdeal] = []

    # decide gaps from the top: x may join only if every gap above it reachable
    # by one generator has joined already
    def rec(i: int, chosen: frozenset[int]) -> None:
        if i == len(gaps):
            out.append(SGIdeal._trusted(sg, 0, sg.gaps - chosen))
            return
        x = gaps[i]
        rec(i + 1, chosen)
        if all((x + g) in chosen or (x + g) not in sg.gaps for g in gens):
            rec(i + 1, chosen | {x})

    rec(0, frozenset())
    out.sort(key=lambda I: sorted(I.holes))
    return tuple(out)


def _build(sg: NumSemigroup, lo: int, hi: int, member: Callable[[int], bool]) -> SGIdeal:
    # members of [lo, hi) decided by ``member``; everything >= hi belongs
    offset = hi
    for z in range(lo, hi):
        if member(z):
            offset = z
            break
    top = min(hi, offset + sg.conductor)
    holes = frozenset(z for z in range(offset + 1, top) if not member(z))
    return SGIdeal._trusted(sg, offset, holes)


@dataclass(frozen=True)
class SGIdeal:
    """Relative ideal ``I ⊆ Z`` of a numerical semigroup."""

    semigroup: NumSemigroup
    offset: int
    holes: frozenset[int]

    def __post_init__(self) -> None:
        sg = self.semigroup
        object.__setattr__(self, "holes", frozenset(self.holes))
        top = self.offset + sg.conductor
        if any(h <= self.offset or h >= top for h in self.holes):
            raise ValueError("holes must lie strictly between offset and offset + conductor")
        for z in self.window():
            for g in sg.generators:
                if (z + g) in self.holes:
                    raise ValueError(f"not an ideal: {z} in I but {z + g} missing")

    @classmethod
    def _trusted(cls, sg: NumSemigroup, offset: int, holes: frozenset[int]) -> SGIdeal:
        obj = object.__new__(cls)
        object.__setattr__(obj, "semigroup", sg)
        object.__setattr__(obj, "offset", offset)
        object.__setattr__(obj, "holes", holes)
        return obj

    def __repr__(self) -> str:
        return f"SGIdeal({self.semigroup}, offset={self.offset}, holes={sorted(self.holes)})"

    @property
    def domain(self) -> NumSemigroup:
        return self.semigroup

    def __contains__(self, z: int) -> bool:
        return z >= self.offset and z not in self.holes

    def contains_element(self, z: int) -> bool:
        return z in self

    def window(self) -> list[int]:
        """Members in ``[offset, offset + conductor)``."""
        return [z for z in range(self.offset, self.offset + self.semigroup.conductor) if z not in self.holes]

    def shift(self, n: int) -> SGIdeal:
        return SGIdeal._trusted(self.semigroup, self.offset + n, frozenset(h + n for h in self.holes))

    def _check(self, other: SGIdeal) -> None:
        if self.semigroup != other.semigroup:
            raise MixedSemigroups(f"{self.semigroup} vs {other.semigroup}")

    def __mul__(self, other: SGIdeal) -> SGIdeal:
        return sg_sum(self, other)

    def __add__(self, other: SGIdeal) -> SGIdeal:
        self._check(other)
        lo = min(self.offset, other.offset)
        return _build(self.semigroup, lo, lo + self.semigroup.conductor, lambda z: z in self or z in other)

    def __and__(self, other: SGIdeal) -> SGIdeal:
        return sg_intersect(self, other)

    def colon(self, other: SGIdeal) -> SGIdeal:
        return sg_colon(self, other)

    def inverse(self) -> SGIdeal:
        return sg_colon(self.semigroup.one(), self)

    def v(self) -> SGIdeal:
        return sg_v(self)

    def t(self) -> SGIdeal:
        """t-closure, equal to the v-closure since every ideal is finitely generated.

        Guarded: each single-generator subideal's v-closure must stay inside.
        """
        result = self.v()
        for g in self.generators():
            if not self.semigroup.principal(g).v() <= result:
                raise InternalInconsistency(f"t-closure guard failed for {self!r}")
        return result

    def __le__(self, other: SGIdeal) -> bool:
        self._check(other)
        return self.offset >= other.offset and all(z in other for z in self.window())

    def __ge__(self, other: SGIdeal) -> bool:
        return other <= self

    def generators(self) -> list[int]:
        """Minimal generators: members not in ``I + (S minus 0)``."""
        sg = self.semigroup
        hi = self.offset + sg.conductor + sg.multiplicity
        return [
            z
            for z in range(self.offset, hi)
            if z in self and not any((z - g) in self for g in sg.generators)
        ]

    def elements(self, height: int | None = None) -> list[int]:
        """Members up to ``offset + height``; the default reaches every minimal generator."""
        if height is None:
            height = self.semigroup.conductor + self.semigroup.multiplicity
        return [z for z in range(self.offset, self.offset + height + 1) if z in self]

    def render(self) -> str:
        gens = ", ".join(map(str, self.generators()))
        return f"({gens}) + S"


def sg_sum(i: SGIdeal, j: SGIdeal) -> SGIdeal:
    """Minkowski sum ``I + J``, the ideal product."""
    i._check(j)
    sg = i.semigroup
    lo = i.offset + j.offset
    hi = lo + sg.conductor
    members = {x + y for x in i.window() for y in j.window() if x + y < hi}
    return _build(sg, lo, hi, members.__contains__)


def sg_colon(i: SGIdeal, j: SGIdeal) -> SGIdeal:
    """``I - J = {z : z + J ⊆ I}``."""
    i._check(j)
    sg = i.semigroup
    # J is generated by its window, and z + min J in I forces z >= min I - min J
    jw = j.window()
    lo = i.offset - j.offset
    return _build(sg, lo, lo + sg.conductor, lambda z: all((z + y) in i for y in jw))


def sg_intersect(i: SGIdeal, j: SGIdeal) -> SGIdeal:
    i._check(j)
    lo = max(i.offset, j.offset)
    return _build(i.semigroup, lo, lo + i.semigroup.conductor, lambda z: z in i and z in j)


def sg_v(i: SGIdeal) -> SGIdeal:
    return i.inverse().inverse()


def sg_union_gen(sg: NumSemigroup, a: int, b: int) -> SGIdeal:
    """The two-generated ideal ``(a + S) ∪ (b + S)``."""
    return sg.ideal([a, b])
