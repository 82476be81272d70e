"""Built-in invariant and oracle-agreement suites.

Each check walks its candidates in a fixed order (small heights first) and
stops at the first failure, so a reported counterexample is the minimal one
in that order.  ``FAULTS`` holds deliberately broken kernels used to confirm
the harness notices arithmetic errors.
"""
from __future__ import annotations

import contextlib
import random
import time
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Callable, Iterator
from unittest import mock

from . import classify as C
from . import numsg, oracle, quadratic
from .classify import Status
from .errors import FracIdealError
from .expr import generator_expr
from .lattice import Lattice2, lattice_intersect
from .numsg import NumSemigroup
from .quadratic import QuadOrder


@dataclass(frozen=True)
class Failure:
    suite: str
    check: str
    witness: str

    def __str__(self) -> str:
        return f"[{self.suite}] {self.check}: {self.witness}"


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: int
    failures: tuple[Failure, ...]
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class Options:
    bound: int = 8
    samples: int = 1000
    seed: int = 0


QUAD_ORDERS = ((-1, 1), (-3, 1), (-3, 2), (-5, 1), (-5, 2), (2, 1), (5, 1), (5, 2))


def _quad_orders() -> list[QuadOrder]:
    return [QuadOrder(d, f) for d, f in QUAD_ORDERS]


def _semigroups(max_conductor: int) -> list[NumSemigroup]:
    seen: dict[tuple, NumSemigroup] = {}
    for a in range(2, 8):
        for b in range(a + 1, 12):
            for gens in ((a, b), (a, b, b + 1)):
                try:
                    sg = NumSemigroup(gens)
                except ValueError:
                    continue
                if sg.conductor <= max_conductor:
                    seen.setdefault(sg.generators, sg)
    return [seen[k] for k in sorted(seen)]


def _small_ideals(order: QuadOrder, height: int) -> Iterator[tuple[str, object]]:
    for _key, a, b in C.candidate_pairs(order, height):
        yield C.fmt_pair(order, a, b), C.two_generated(order, a, b)


# -- suites ---------------------------------------------------------------------
# A suite yields (check name, label, passed) triples; the runner keeps the
# first failure per check.


def suite_lattice(opts: Options):
    rng = random.Random(opts.seed)
    radius = 12
    for _ in range(opts.samples // 4):
        rows = [(rng.randint(-6, 6), rng.randint(-6, 6)) for _ in range(3)]
        rows2 = [(rng.randint(-6, 6), rng.randint(-6, 6)) for _ in range(2)]
        try:
            la, lb = Lattice2.from_int_rows(rows), Lattice2.from_int_rows(rows2)
        except ValueError:
            continue
        label = f"{rows} / {rows2}"
        pa = oracle.box_points(la, radius)
        pb = oracle.box_points(lb, radius)
        yield "membership", label, all((x, y) in la for x, y in pa)
        inter = lattice_intersect(la, lb)
        yield "intersection", label, oracle.box_points(inter, radius) == pa & pb
        yield "dual-involution", label, la.dual().dual() == la


def suite_quadratic_oracle(opts: Options):
    # box oracles are quadratic in the radius; keep both small by default
    height = max(1, opts.bound // 6)
    limit = 10 * opts.bound
    for order in _quad_orders():
        one = order.one()
        for label, ideal in _small_ideals(order, height):
            name = f"{order}: {label}"
            try:
                yield "colon-vs-box", name, ideal.inverse() == oracle.brute_inverse(ideal, limit)
                yield "self-colon-vs-box", name, ideal.colon(ideal) == oracle.brute_colon(ideal, ideal, limit)
                yield "intersect-vs-box", name, (ideal & one) == oracle.brute_intersect(ideal, one, limit)
            except oracle.OracleTooLarge:
                continue


def suite_v_invertibility_differential(opts: Options):
    rng = random.Random(opts.seed)
    for order in _quad_orders():
        for k in range(opts.samples // len(QUAD_ORDERS) + 1):
            ideal = order.random_ideal(rng)
            label = f"{order}: {generator_expr(order, ideal)}"
            yield "v-invertible-routes", label, C.is_v_invertible(ideal) == C.v_invertible_direct(ideal)
            yield "t-equals-v", label, ideal.t() == ideal.v()
    for sg in _semigroups(max_conductor=opts.bound):
        for ideal in sg.offset0_ideals():
            label = f"{sg}: {generator_expr(sg, ideal)}"
            yield "v-invertible-routes", label, C.is_v_invertible(ideal) == C.v_invertible_direct(ideal)


def suite_pair_agreement(opts: Options):
    height = max(1, opts.bound // 2)
    for order in [QuadOrder(-1), QuadOrder(-3, 2), QuadOrder(-5), QuadOrder(-5, 2)]:
        for _key, a, b in C.candidate_pairs(order, height):
            label = f"{order}: {C.fmt_pair(order, a, b)}"
            try:
                C.vdomain_pair_check(order, a, b)
                yield "pair-routes", label, True
            except FracIdealError:
                yield "pair-routes", label, False


def suite_semigroup(opts: Options):
    for sg in _semigroups(max_conductor=opts.bound):
        one = sg.one()
        ideals = sg.offset0_ideals()
        for ideal in ideals:
            label = f"{sg}: {generator_expr(sg, ideal)}"
            yield "inverse-vs-naive", label, ideal.inverse() == oracle.naive_inverse(ideal)
            yield "self-colon-vs-naive", label, ideal.colon(ideal) == oracle.naive_self_colon(ideal)
            yield "inverse-residuation", label, ideal * ideal.inverse() <= one
        hi = 3 * sg.conductor + 3
        for i, j in combinations_with_replacement(ideals[:12], 2):
            label = f"{sg}: {generator_expr(sg, i)}, {generator_expr(sg, j)}"
            prod = i * j
            yield "sum-vs-naive", label, oracle.naive_window(prod, 0, hi) == oracle.naive_sum(i, j, 0, hi)
            # (I : J) is the largest K with K + J inside I
            yield "colon-adjunction", label, (i.colon(j) * j) <= i and i.colon(j) >= i.colon(prod.colon(i))


def suite_classify(opts: Options):
    bound = max(2, min(opts.bound, 8))
    samples = max(4, opts.samples // 10)
    z3 = QuadOrder(-3, 2)
    r = C.classify_domain(z3, bound, samples, opts.seed)
    vd = r.verdicts["v_domain"]
    yield "Z[sqrt-3] v-domain refuted", str(z3), vd.status is Status.REFUTED
    if vd.witness is not None:
        key = vd.witness.order_key
        yield "Z[sqrt-3] witness height", str(vd.witness.elements), key[0] <= 2
        ring = vd.witness.lhs
        yield "Z[sqrt-3] ring is maximal order", generator_expr(z3, ring), ring == z3.maximal
    for domain in (QuadOrder(-1), NumSemigroup((2, 3)), NumSemigroup((3, 5, 7))):
        rep = C.classify_domain(domain, bound, samples, opts.seed)
        yield "implications", str(domain), not rep.check_consistency()
        expect = domain.theory_oracle()
        if expect is not None:
            yield "oracle-agreement", str(domain), rep.verdicts["krull"].holds == expect


SUITES: dict[str, Callable[[Options], Iterator]] = {
    "lattice": suite_lattice,
    "quadratic-oracle": suite_quadratic_oracle,
    "v-invertibility-differential": suite_v_invertibility_differential,
    "pair-agreement": suite_pair_agreement,
    "semigroup": suite_semigroup,
    "classify": suite_classify,
}


def run_suite(name: str, opts: Options) -> SuiteResult:
    start = time.perf_counter()
    first: dict[str, Failure] = {}
    checks = 0
    try:
        for check, label, passed in SUITES[name](opts):
            checks += 1
            if not passed and check not in first:
                first[check] = Failure(name, check, label)
    except FracIdealError as exc:
        first["exception"] = Failure(name, type(exc).__name__, str(exc))
    return SuiteResult(name, checks, tuple(first.values()), time.perf_counter() - start)


# -- fault injection --------------------------------------------------------------


def _bad_colon(order, la, lb):
    good = _REAL_COLON(order, la, lb)
    # shrink the answer to a sublattice whenever the divisor has a skew basis
    if lb.b != 0:
        return Lattice2(good.a, good.b, 2 * good.c, good.scale)
    return good


def _bad_sum(i, j):
    good = _REAL_SUM(i, j)
    if i.holes and j.holes:
        return good.shift(1)
    return good


_REAL_COLON = quadratic._colon_unit
_REAL_SUM = numsg.sg_sum

FAULTS = {
    "colon": lambda: mock.patch.object(quadratic, "_colon_unit", _bad_colon),
    "semigroup-sum": lambda: mock.patch.object(numsg, "sg_sum", _bad_sum),
}


def clear_caches() -> None:
    # memoized results computed with (or without) a fault must not leak across
    for fn in (quadratic._colon_unit, quadratic._mul_unit, quadratic._intersect_rel, quadratic._principal,
               C.candidate_pairs, C.ratio_classes, C._pair_condition_unit, C._finite_type_unit, C._self_colon_unit):
        fn.cache_clear()


@contextlib.contextmanager
def injected(fault: str | None):
    if fault is None:
        yield
        return
    clear_caches()
    try:
        with FAULTS[fault]():
            yield
    finally:
        clear_caches()


def run(opts: Options, suites: list[str] | None = None, fault: str | None = None) -> list[SuiteResult]:
    names = suites or list(SUITES)
    with injected(fault):
        return [run_suite(n, opts) for n in names]
