"""Brute-force reference computations.

Nothing here touches the Hermite/dual machinery used by the backends except
to hand back a canonical object for comparison: membership is decided by an
exact Cramer solve against arbitrary bases, and colons and intersections by
testing the defining condition on every point of a finite box that provably
contains a basis of the answer.
"""
from __future__ import annotations

from math import lcm
from typing import Sequence

from .lattice import Lattice2, Rat
from .numsg import NumSemigroup, SGIdeal
from .quadratic import FracIdealQ, QuadOrder

MAX_RADIUS = 400


class OracleTooLarge(ValueError):
    pass


def solve_member(v: Sequence, e1: Sequence, e2: Sequence) -> bool:
    """Whether ``v`` is an integer combination of the independent ``e1, e2``."""
    det = Rat(e1[0]) * e2[1] - Rat(e1[1]) * e2[0]
    if det == 0:
        raise ValueError("dependent basis")
    k1 = (Rat(v[0]) * e2[1] - Rat(v[1]) * e2[0]) / det
    k2 = (Rat(e1[0]) * v[1] - Rat(e1[1]) * v[0]) / det
    return k1.denominator == 1 and k2.denominator == 1


def member_by_enumeration(v: Sequence, lat: Lattice2, radius: int) -> bool:
    e1, e2 = lat.vectors()
    v = (Rat(v[0]), Rat(v[1]))
    return any(
        (k1 * e1[0] + k2 * e2[0], k1 * e1[1] + k2 * e2[1]) == v
        for k1 in range(-radius, radius + 1)
        for k2 in range(-radius, radius + 1)
    )


def box_points(lat: Lattice2, radius: int) -> set[tuple[int, int]]:
    """Integer points of ``[-radius, radius]^2`` lying in ``lat``."""
    e1, e2 = lat.vectors()
    return {
        (x, y)
        for x in range(-radius, radius + 1)
        for y in range(-radius, radius + 1)
        if solve_member((x, y), e1, e2)
    }


# -- quadratic backend ----------------------------------------------------------


def _denominator(vectors) -> int:
    den = 1
    for x, y in vectors:
        den = lcm(den, Rat(x).denominator, Rat(y).denominator)
    return den


def _rational_generator(ideal: FracIdealQ) -> Rat:
    """Positive generator of ``ideal ∩ Q`` from an arbitrary basis."""
    (p0, p1), (q0, q1) = ideal.basis()
    # k1*p1 + k2*q1 == 0 with coprime integers k1, k2
    r = Rat(p1) / q1 if q1 != 0 else None
    if r is None:
        return abs(Rat(q0)) if p1 != 0 else abs(Rat(p0))
    k1, k2 = r.denominator, -r.numerator
    return abs(k1 * Rat(p0) + k2 * Rat(q0))


def _span(order: QuadOrder, points: list[tuple[int, int]], den: int) -> FracIdealQ:
    lat = Lattice2.from_int_rows(points, Rat(1, den))
    return FracIdealQ(order, lat)


def _check_radius(radius: int, limit: int) -> None:
    if radius > limit:
        raise OracleTooLarge(f"box radius {radius} exceeds {limit}")


def brute_colon(a: FracIdealQ, b: FracIdealQ, limit: int = MAX_RADIUS) -> FracIdealQ:
    """``(a : b)`` by testing ``x*b ⊆ a`` on a box of candidates."""
    order = a.order
    a1, a2 = a.basis()
    bgens = b.basis()
    q = _rational_generator(b)
    # x*q in a, so den(a) * num(q) clears every coordinate of x
    den = _denominator((a1, a2)) * q.numerator
    # q_a * den(b) * f * D lies in the colon, fixing the box size
    t = _rational_generator(a) * _denominator(bgens) * order.f
    radius = int(den * t * order.f)
    _check_radius(radius, limit)
    points = []
    for u in range(0, radius + 1):
        for w in range(-radius, radius + 1):
            x = (Rat(u, den), Rat(w, den))
            if all(solve_member(order.mul(x, g), a1, a2) for g in bgens):
                points.append((u, w))
    return _span(order, points, den)


def brute_intersect(a: FracIdealQ, b: FracIdealQ, limit: int = MAX_RADIUS) -> FracIdealQ:
    order = a.order
    a1, a2 = a.basis()
    b1, b2 = b.basis()
    den = lcm(_denominator((a1, a2)), _denominator((b1, b2)))
    # num(q_a) * num(q_b) lies in both ideals, hence so does that multiple of D
    n = _rational_generator(a).numerator * _rational_generator(b).numerator
    radius = den * n * order.f
    _check_radius(radius, limit)
    points = []
    for u in range(0, radius + 1):
        for w in range(-radius, radius + 1):
            x = (Rat(u, den), Rat(w, den))
            if solve_member(x, a1, a2) and solve_member(x, b1, b2):
                points.append((u, w))
    return _span(order, points, den)


def brute_inverse(a: FracIdealQ, limit: int = MAX_RADIUS) -> FracIdealQ:
    return brute_colon(a.order.one(), a, limit)


def brute_v(a: FracIdealQ, limit: int = MAX_RADIUS) -> FracIdealQ:
    return brute_inverse(brute_inverse(a, limit), limit)


# -- semigroup backend ------------------------------------------------------------
# Ideals become explicit finite sets on a window [lo, hi]; everything is
# recomputed from the definitions by membership tests against the window.


def naive_window(i: SGIdeal, lo: int, hi: int) -> frozenset[int]:
    return frozenset(z for z in range(lo, hi + 1) if z in i)


def naive_colon(i: SGIdeal, j: SGIdeal, lo: int, hi: int, reach: int) -> frozenset[int]:
    """``{z in [lo, hi] : z + y in I for every y in J below min J + reach}``."""
    js = [y for y in range(j.offset, j.offset + reach + 1) if y in j]
    return frozenset(z for z in range(lo, hi + 1) if all((z + y) in i for y in js))


def naive_sum(i: SGIdeal, j: SGIdeal, lo: int, hi: int) -> frozenset[int]:
    xs = [x for x in range(i.offset, hi + 1) if x in i]
    ys = [y for y in range(j.offset, hi + 1) if y in j]
    return frozenset(z for z in (x + y for x in xs for y in ys) if lo <= z <= hi)


def sg_from_window(sg: NumSemigroup, members: frozenset[int], hi: int) -> SGIdeal:
    """Ideal whose members up to ``hi`` are ``members`` (all above ``hi`` belong)."""
    offset = min(members) if members else hi + 1
    holes = frozenset(z for z in range(offset + 1, hi + 1) if z not in members)
    return SGIdeal(sg, offset, holes)


def naive_inverse(i: SGIdeal) -> SGIdeal:
    sg = i.semigroup
    c = sg.conductor
    lo, hi = -i.offset - 2 * c - 2, -i.offset + 3 * c + 2
    members = naive_colon(sg.one(), i, lo, hi, reach=3 * c + 2)
    return sg_from_window(sg, members, hi)


def naive_self_colon(i: SGIdeal) -> SGIdeal:
    sg = i.semigroup
    c = sg.conductor
    lo, hi = -2 * c - 2, 3 * c + 2
    members = naive_colon(i, i, lo, hi, reach=3 * c + 2)
    return sg_from_window(sg, members, hi)


# -- witness rechecks ----------------------------------------------------------------


def recheck_self_colon_of_inverse(ideal) -> tuple[object, bool]:
    """Independently compute ``(A^-1 : A^-1)`` and whether it differs from D."""
    if isinstance(ideal, SGIdeal):
        inv = naive_inverse(ideal)
        ring = naive_self_colon(inv)
        return ring, ring != ideal.semigroup.one()
    inv = brute_inverse(ideal)
    ring = brute_colon(inv, inv)
    return ring, ring != ideal.order.one()


def recheck_self_colon(ideal) -> tuple[object, bool]:
    """Independently compute ``(A : A)`` and whether it differs from D."""
    if isinstance(ideal, SGIdeal):
        ring = naive_self_colon(ideal)
        return ring, ring != ideal.semigroup.one()
    ring = brute_colon(ideal, ideal)
    return ring, ring != ideal.order.one()


def recheck_pair(domain, a, b) -> tuple[object, bool]:
    """``((a) ∩ (b)) : ((a) ∩ (b))`` recomputed by brute force."""
    if isinstance(domain, NumSemigroup):
        pa, pb = domain.principal(a), domain.principal(b)
        c = domain.conductor
        lo = max(a, b)
        members = frozenset(z for z in range(lo, lo + c + 1) if z in pa and z in pb)
        return recheck_self_colon(sg_from_window(domain, members, lo + c))
    inter = brute_intersect(domain.principal(a), domain.principal(b))
    return recheck_self_colon(inter)
