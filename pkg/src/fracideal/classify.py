"""Star-operation-free classifiers and the differential harness.

Every predicate here is phrased with colons, inverses and intersections only.
Backends are duck-typed: a *domain* offers ``one``, ``principal``, ``ideal``,
``elements``, element ``mul``/``inv``, ``height_key``, ``special_ideals``,
``random_ideal`` and ``theory_oracle``; its ideals offer ``*``, ``+``, ``&``,
``colon``, ``inverse``, ``v``, ``t``, ``<=`` and ``generators``.

Universally quantified properties get a three-valued :class:`Verdict`.
``Holds`` is only issued when a theory oracle settles the question (maximal
quadratic orders, the trivial semigroup) or the search was exhaustive.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache, reduce
from math import gcd
from typing import Any, Iterable, Sequence

from . import oracle
from .errors import InternalInconsistency, NotFound, OracleMismatch, UnsupportedBackend
from .lattice import Lattice2, Rat
from .numsg import NumSemigroup, SGIdeal
from .quadratic import PrimeAbove, QuadOrder, essential_at

DEFAULT_BOUND = 8
RECHECK_BOUND = 20
DEFAULT_SAMPLES = 100


class Status(str, Enum):
    HOLDS = "Holds"
    REFUTED = "Refuted"
    UNDETERMINED = "Undetermined"


_PREFERENCE = {Status.REFUTED: 0, Status.HOLDS: 1, Status.UNDETERMINED: 2}


@dataclass(frozen=True)
class WitnessReport:
    """What failed: ``lhs != rhs`` for the given elements or ideal."""

    kind: str
    elements: tuple
    lhs: Any
    rhs: Any
    order_key: tuple = ()
    ideal: Any = None
    note: str = ""
    recheck: str = ""

    def reproduces(self) -> bool:
        return self.lhs != self.rhs


@dataclass(frozen=True)
class Verdict:
    status: Status
    bound: dict
    witness: WitnessReport | None = None
    basis: str = "search"
    details: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.status is Status.REFUTED and self.witness is None:
            raise ValueError("a refutation needs a witness")

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def refuted(self) -> bool:
        return self.status is Status.REFUTED


def merge_verdicts(*verdicts: Verdict) -> Verdict:
    """Associative merge: Refuted beats Holds beats Undetermined.

    Among refutations the witness minimal in the candidate order wins, so
    splitting a sweep into chunks gives the same answer as one pass.
    """

    def pick(x: Verdict, y: Verdict) -> Verdict:
        px, py = _PREFERENCE[x.status], _PREFERENCE[y.status]
        if px != py:
            return x if px < py else y
        if x.status is Status.REFUTED and y.witness.order_key < x.witness.order_key:
            return y
        return x

    return reduce(pick, verdicts)


def is_ring(domain) -> bool:
    return isinstance(domain, QuadOrder)


# -- candidate enumeration -------------------------------------------------------


def pair_bound(domain, bound: int) -> int:
    # a semigroup pair (a, b) matters only through b - a; reaching 2*conductor
    # covers every difference, so the two-generated sweep is exhaustive
    if isinstance(domain, NumSemigroup):
        return max(bound, 2 * domain.conductor)
    return bound


@lru_cache(maxsize=64)
def candidate_pairs(domain, bound: int) -> tuple[tuple, ...]:
    """Unordered pairs of nonzero elements of height <= bound, in search order.

    The order is lexicographic on (max height, key(a), key(b)); the pair
    conditions are symmetric so only ``key(a) <= key(b)`` is listed.
    """
    elems = domain.elements(pair_bound(domain, bound))
    keyed = sorted((domain.height_key(x), x) for x in elems)
    pairs = []
    for i, (ka, a) in enumerate(keyed):
        for kb, b in keyed[i:]:
            pairs.append(((max(ka[0], kb[0]), ka, kb), a, b))
    pairs.sort(key=lambda p: p[0])
    return tuple(pairs)


def special_pairs(domain) -> list[tuple]:
    big = (float("inf"),)
    return [((big, domain.height_key(a), domain.height_key(b)), a, b) for a, b in domain.special_ideals()]


def two_generated(domain, a, b):
    return domain.principal(a) + domain.principal(b)


def fmt_pair(domain, a, b) -> str:
    return f"({domain.format_element(a)}, {domain.format_element(b)})"


# -- per-ideal predicates ------------------------------------------------------------


def is_v_invertible(ideal) -> bool:
    """``(A^-1 : A^-1) == D``."""
    inv = ideal.inverse()
    return inv.colon(inv) == ideal.domain.one()


def v_invertible_direct(ideal) -> bool:
    """``(A A^-1)^v == D``, straight from the definition."""
    return (ideal * ideal.inverse()).v() == ideal.domain.one()


def t_invertible_direct(ideal) -> bool:
    """``(A A^-1)^t == D``."""
    return (ideal * ideal.inverse()).t() == ideal.domain.one()


@dataclass(frozen=True)
class PairCheck:
    a: Any
    b: Any
    direct: bool
    inverse_colon: bool
    v_colon: bool
    two_generated: bool
    intersection: bool
    colon_ring: Any

    @property
    def holds(self) -> bool:
        return self.intersection


def vdomain_pair_check(domain, a, b) -> PairCheck:
    """Evaluate the per-pair v-domain conditions along separate routes.

    * direct: ``(F F^-1)^v = D`` for ``F = (a, b)``
    * inverse_colon: ``(F^-1 : F^-1) = D`` with ``F^-1 = (D : F)``
    * v_colon: ``(F^v : F^v) = D``
    * two_generated: the same colon with ``F^-1`` built as ``(1/a) ∩ (1/b)``
    * intersection: ``((a) ∩ (b) : (a) ∩ (b)) = D``

    All five must agree; a disagreement is an arithmetic bug.
    """
    one = domain.one()
    f = two_generated(domain, a, b)
    finv = f.inverse()
    ring = finv.colon(finv)
    fv = finv.inverse()
    alt = domain.principal(domain.inv(a)) & domain.principal(domain.inv(b))
    inter = domain.principal(a) & domain.principal(b)
    check = PairCheck(
        a=a,
        b=b,
        direct=(f * finv).v() == one,
        inverse_colon=ring == one,
        v_colon=fv.colon(fv) == one,
        two_generated=alt.colon(alt) == one,
        intersection=inter.colon(inter) == one,
        colon_ring=ring,
    )
    values = {check.direct, check.inverse_colon, check.v_colon, check.two_generated, check.intersection}
    if len(values) != 1:
        raise InternalInconsistency(f"pair conditions disagree for {fmt_pair(domain, a, b)}: {check}")
    return check


def _ratio_class(domain, a, b):
    """Canonical ratio for the pair, up to everything the pair checks ignore.

    ``(a, b)`` is ``a * (1, c)`` with ``c = b/a``; swapping the pair gives
    ``1/c`` and, in a ring, ``(1, -c)`` is the same ideal as ``(1, c)``.
    Conjugation maps the order onto itself, so ``c`` and its conjugate give
    the same answers too.
    """
    if not is_ring(domain):
        c = b - a
        return min(c, -c)
    c = domain.mul(b, domain.inv(a))
    ci = domain.mul(a, domain.inv(b))
    reps = []
    for x in (c, ci):
        y = domain.conj(x)
        reps += [x, (-x[0], -x[1]), y, (-y[0], -y[1])]
    return min(reps)


@lru_cache(maxsize=64)
def ratio_classes(domain, bound: int) -> tuple[tuple, ...]:
    """Candidate pairs up to everything the pair checks ignore, each at its first pair.

    Every pair condition depends only on ``F = (a, b) = a * (1, c)`` up to
    scaling (and, in a ring, conjugation).  In a ring ``(1, c) = (1, c + k)``
    for ``k`` in D as well, so pairs are grouped by the scale-free Hermite
    form of ``F``.  Entries are ``(c, key, a, b)`` in first-occurrence order,
    which keeps the first failing entry the minimal failing pair.
    """
    first: dict = {}
    if not is_ring(domain):
        for key, a, b in candidate_pairs(domain, bound):
            first.setdefault(_ratio_class(domain, a, b), (key, a, b))
        return tuple((cls, *kab) for cls, kab in first.items())
    t, n = domain._tn
    seen: set = set()
    for key, a, b in candidate_pairs(domain, bound):
        r = _int_ratio_class(t, n, int(a[0]), int(a[1]), int(b[0]), int(b[1]))
        if r in seen:
            continue
        seen.add(r)
        shape = _pair_shape(domain, *r)
        if shape not in first:
            first[shape] = (r, key, a, b)
    return tuple(((Rat(p, m), Rat(q, m)), key, a, b) for (p, q, m), key, a, b in first.values())


def _pair_shape(domain: QuadOrder, p: int, q: int, m: int) -> tuple:
    """Scale-free HNF of ``(m, p + q*omega)``, minimized over conjugation."""
    t, n = domain._tn
    f = domain.f
    shapes = []
    for x0, x1 in ((p, q), (p + t * q, -q)):
        # generators times the Z-basis {1, f*omega} of D
        rows = ((m, 0), (0, f * m), (x0, x1), (n * f * x1, f * x0 + t * f * x1))
        lat = Lattice2.from_int_rows(rows)
        shapes.append((lat.a, lat.b, lat.c))
    return min(shapes)


def _ratio_triple(t, n, x0, x1, y0, y1) -> tuple[int, int, int]:
    # y / x = y * conj(x) / N(x) as a reduced (p, q, m) with m > 0
    c0 = x0 + t * x1
    p = y0 * c0 - n * y1 * x1
    q = y1 * c0 - y0 * x1 - t * y1 * x1
    m = x0 * c0 - n * x1 * x1
    g = gcd(p, q, m)
    if m < 0:
        g = -g
    return p // g, q // g, m // g


def _int_ratio_class(t, n, a0, a1, b0, b1) -> tuple[int, int, int]:
    """Integer form of _ratio_class for integral a, b: ``(p, q, m)`` for ``(p + q*omega)/m``."""
    best = None
    for p, q, m in (_ratio_triple(t, n, a0, a1, b0, b1), _ratio_triple(t, n, b0, b1, a0, a1)):
        cp = p + t * q
        rep = min((p, q, m), (-p, -q, m), (cp, -q, m), (-cp, q, m))
        if best is None or rep < best:
            best = rep
    return best


def _pair_condition(domain, a, b) -> tuple[bool, Any]:
    # the self-colon of (a) ∩ (b) only depends on the ratio class of the pair
    return _pair_condition_unit(domain, _ratio_class(domain, a, b))


@lru_cache(maxsize=1 << 16)
def _pair_condition_unit(domain, c) -> tuple[bool, Any]:
    inter = domain.one() & domain.principal(c)
    ring = inter.colon(inter)
    return ring == domain.one(), ring


# -- searches ------------------------------------------------------------------


def _bound_info(domain, bound: int, **extra) -> dict:
    info = {"pair_height": pair_bound(domain, bound)}
    info.update(extra)
    return info


def _pair_witness(domain, kind, key, a, b, ring, recheck=True) -> WitnessReport:
    pa, pb = domain.format_element(a), domain.format_element(b)
    expr = f"(({pa}) ∩ ({pb})) : (({pa}) ∩ ({pb}))"
    if recheck:
        check = vdomain_pair_check(domain, a, b)
        if check.holds or check.colon_ring != ring:
            raise InternalInconsistency(f"witness {fmt_pair(domain, a, b)} does not recheck")
    return WitnessReport(kind, (a, b), ring, domain.one(), key, note="((a) ∩ (b) : (a) ∩ (b)) != D", recheck=expr)


def _ideal_witness(domain, kind, key, ideal, lhs, expr, note) -> WitnessReport:
    return WitnessReport(kind, tuple(ideal.generators()), lhs, domain.one(), key, ideal=ideal, note=note, recheck=expr)


def _ideal_expr(domain, ideal) -> str:
    return "(" + ", ".join(domain.format_element(g) for g in ideal.generators()) + ")"


def _sweep_offset0(domain: NumSemigroup, predicate, kind: str, make_lhs, note: str, expr_fmt: str):
    for idx, ideal in enumerate(domain.offset0_ideals()):
        if not predicate(ideal):
            key = ((float("inf"),), idx)
            expr = expr_fmt.format(i=_ideal_expr(domain, ideal))
            return _ideal_witness(domain, kind, key, ideal, make_lhs(ideal), expr, note)
    return None


def vdomain_search(domain, bound: int = DEFAULT_BOUND) -> Verdict:
    """Search pairs for ``((a) ∩ (b) : (a) ∩ (b)) != D``."""
    info = _bound_info(domain, bound)
    oracle_says = domain.theory_oracle()
    witness = None
    # classes are listed at their first pair, so the first failure is the minimal pair
    for cls, key, a, b in _class_candidates(domain, bound):
        ok, ring = _pair_condition_unit(domain, cls)
        if not ok:
            witness = _pair_witness(domain, "v-domain", key, a, b, ring)
            break
    if witness is None and isinstance(domain, NumSemigroup):
        witness = _sweep_offset0(
            domain,
            is_v_invertible,
            "v-domain",
            lambda i: i.inverse().colon(i.inverse()),
            "(A^-1 : A^-1) != D",
            "{i}^-1 : {i}^-1",
        )
        info["all_ideals"] = True
    if oracle_says is True and witness is not None:
        raise OracleMismatch(f"{domain}: oracle says v-domain but {witness.elements} fails")
    if witness is not None:
        return Verdict(Status.REFUTED, info, witness)
    if oracle_says is False:
        raise OracleMismatch(f"{domain}: oracle rules out v-domain yet no witness found")
    if oracle_says is True:
        return Verdict(Status.HOLDS, info, basis="oracle")
    if isinstance(domain, NumSemigroup):
        return Verdict(Status.HOLDS, info, basis="exhaustive")
    return Verdict(Status.UNDETERMINED, info)


@dataclass(frozen=True)
class FiniteTypeWitness:
    """``(a, b)^v = ∩ y_i D`` and ``((a) ∩ (b))^-1 = ∩ z_j D``."""

    a: Any
    b: Any
    generators: tuple  # of (a) ∩ (b)
    ys: tuple
    zs: tuple
    strict: bool  # generators lie inside (a) ∩ (b)


def _intersect_principals(domain, xs: Iterable):
    return reduce(lambda x, y: x & y, (domain.principal(x) for x in xs))


def v_finite_type_witness(domain, a, b, bound: int = RECHECK_BOUND) -> FiniteTypeWitness:
    """Build ``y_i = ab / g_i`` from generators ``g_i`` of ``(a) ∩ (b)``.

    Both equalities are verified before returning.  ``bound`` caps the number
    of generators; in the Noetherian backends it is never reached.  Every
    object involved scales with ``a``, so the work is done once per ratio
    ``b/a`` on the pair ``(1, b/a)`` and rescaled.
    """
    c = domain.mul(b, domain.inv(a))
    gens, strict = _finite_type_unit(domain, c)
    if len(gens) > bound:
        raise NotFound(f"(a) ∩ (b) needs more than {bound} generators")
    gens = tuple(domain.mul(a, g) for g in gens)
    ab = domain.mul(a, b)
    ys = tuple(domain.mul(ab, domain.inv(g)) for g in gens)
    zs = tuple(domain.inv(g) for g in gens)
    return FiniteTypeWitness(a, b, gens, ys, zs, strict)


@lru_cache(maxsize=1 << 16)
def _finite_type_unit(domain, c) -> tuple[tuple, bool]:
    one_elem = domain.mul(c, domain.inv(c))
    pa, pb = domain.one(), domain.principal(c)
    inter = pa & pb
    if inter == pa:
        gens = [one_elem]
    elif inter == pb:
        gens = [c]
    else:
        # a Z-basis generates as a D-module too
        gens = list(inter.basis()) if is_ring(domain) else inter.generators()
    zint = _intersect_principals(domain, (domain.inv(g) for g in gens))
    strict = all(inter.contains_element(g) for g in gens)
    # with every g_i inside (a) ∩ (b), its inverse lies in ∩ z_j D; the
    # product test gives the other inclusion without a second colon
    if not strict or not (zint * inter) <= domain.one():
        raise InternalInconsistency(f"((a)∩(b))^-1 != ∩ z_j D for {fmt_pair(domain, one_elem, c)}")
    # ∩ (c / g_i) D = c * ∩ (1 / g_i) D exactly
    yint = zint.times_element(c) if is_ring(domain) else zint.shift(c)
    if (pa + pb).v() != yint:
        raise InternalInconsistency(f"(a,b)^v != ∩ y_i D for {fmt_pair(domain, one_elem, c)}")
    return tuple(gens), strict


def finite_type_generators(ideal) -> list:
    """Generators ``g_i`` with ``ideal^v == (g_1, ..., g_n)^v``, verified."""
    gens = ideal.generators()
    if ideal.domain.ideal(gens).v() != ideal.v():
        raise InternalInconsistency(f"{ideal!r} is not the v-closure of its generators")
    return gens


def is_t_invertible(ideal) -> bool:
    """v-invertible with inverse a v-ideal of finite type."""
    if not is_v_invertible(ideal):
        return False
    finite_type_generators(ideal.inverse())
    return True


def pvmd_check(domain, bound: int = DEFAULT_BOUND, vdomain: Verdict | None = None) -> tuple[Verdict, Verdict]:
    """Return ``(pvmd, v_fc)`` verdicts.

    PvMD = for all pairs, ``((a) ∩ (b))^-1`` is a finite intersection of
    principal fractional ideals and ``((a) ∩ (b) : (a) ∩ (b)) = D``.
    """
    if vdomain is None:
        vdomain = vdomain_search(domain, bound)
    info = _bound_info(domain, bound)
    fc_witness = None
    checked = strict = 0
    for cls, key, a, b in _class_candidates(domain, bound):
        try:
            gens, is_strict = _finite_type_unit(domain, cls)
            if len(gens) > RECHECK_BOUND:
                raise NotFound(f"(a) ∩ (b) needs more than {RECHECK_BOUND} generators")
            checked += 1
            strict += is_strict
        except NotFound as exc:
            fc_witness = WitnessReport("v-FC", (a, b), None, None, key, note=str(exc))
            break
    if fc_witness is not None:
        v_fc = Verdict(Status.REFUTED, info, fc_witness)
    else:
        # every ideal in these backends is finitely generated
        v_fc = Verdict(Status.HOLDS, info, basis="oracle", details={"pair_shapes": checked, "strict_witnesses": strict})
    if vdomain.refuted:
        pvmd = Verdict(Status.REFUTED, info, vdomain.witness, details={"failed_conjunct": "v-domain"})
    elif v_fc.refuted:
        pvmd = Verdict(Status.REFUTED, info, fc_witness, details={"failed_conjunct": "v-FC"})
    elif vdomain.holds:
        pvmd = Verdict(Status.HOLDS, info, basis=vdomain.basis)
    else:
        pvmd = Verdict(Status.UNDETERMINED, info)
    return pvmd, v_fc


def _class_candidates(domain, bound: int):
    """Ratio classes in pair order, then the special pairs."""
    yield from ratio_classes(domain, bound)
    for key, a, b in special_pairs(domain):
        yield _ratio_class(domain, a, b), key, a, b


@lru_cache(maxsize=1 << 16)
def _self_colon_unit(domain, c) -> bool:
    f = domain.one() + domain.principal(c)
    return f.colon(f) == domain.one()


def cic_search(domain, bound: int = DEFAULT_BOUND) -> Verdict:
    """Search fractional ideals A with ``(A^-1 : A^-1) != D``.

    For ``A = (a, b)`` the ring ``(A^-1 : A^-1)`` is the self-colon of
    ``(a) ∩ (b)``, so the two-generated sweep shares the pair cache.
    """
    info = _bound_info(domain, bound)
    oracle_says = domain.theory_oracle()
    witness = None
    for cls, key, a, b in _class_candidates(domain, bound):
        if not _pair_condition_unit(domain, cls)[0]:
            ideal = two_generated(domain, a, b)
            inv = ideal.inverse()
            expr = f"{fmt_pair(domain, a, b)}^-1 : {fmt_pair(domain, a, b)}^-1"
            witness = WitnessReport("CIC", (a, b), inv.colon(inv), domain.one(), key, ideal=ideal,
                                    note="(A^-1 : A^-1) != D", recheck=expr)
            break
    if witness is None and isinstance(domain, NumSemigroup):
        witness = _sweep_offset0(
            domain,
            is_v_invertible,
            "CIC",
            lambda i: i.inverse().colon(i.inverse()),
            "(A^-1 : A^-1) != D",
            "{i}^-1 : {i}^-1",
        )
        info["all_ideals"] = True
    if oracle_says is True and witness is not None:
        raise OracleMismatch(f"{domain}: oracle says CIC but a witness exists")
    if witness is not None:
        return Verdict(Status.REFUTED, info, witness)
    if oracle_says is False:
        raise OracleMismatch(f"{domain}: oracle rules out CIC yet no witness found")
    if oracle_says is True:
        return Verdict(Status.HOLDS, info, basis="oracle")
    return Verdict(Status.HOLDS, info, basis="exhaustive")


@dataclass(frozen=True)
class MoriWitness:
    elements: tuple
    strict: bool  # every y_i lies in A


def mori_witness(ideal, n_max: int = 4, height: int | None = None) -> MoriWitness:
    """Elements ``y_1..y_n`` of A with ``A^-1 = ∩ y_i^-1 D``.

    Singletons and pairs are tried exhaustively in height order; longer
    lists are grown greedily.  The result is verified before returning.
    """
    domain = ideal.domain
    target = ideal.inverse()
    cands = ideal.elements() if height is None else ideal.elements(height)
    recips = [domain.principal(domain.inv(y)) for y in cands]
    for y, r in zip(cands, recips):
        if r == target:
            return _mori_result(ideal, target, (y,))
    if n_max >= 2:
        for i, (y, r) in enumerate(zip(cands, recips)):
            for z, s in zip(cands[i + 1 :], recips[i + 1 :]):
                if r & s == target:
                    return _mori_result(ideal, target, (y, z))
    chosen: list = []
    current = None
    while len(chosen) < n_max:
        best = None
        for y, r in zip(cands, recips):
            nxt = r if current is None else current & r
            if current is None or nxt != current:
                best = (y, nxt)
                break
        if best is None:
            break
        chosen.append(best[0])
        current = best[1]
        if current == target:
            return _mori_result(ideal, target, tuple(chosen))
    raise NotFound(f"no witness with n <= {n_max} among elements of height <= {height}")


def _mori_result(ideal, target, ys: tuple) -> MoriWitness:
    domain = ideal.domain
    if _intersect_principals(domain, (domain.inv(y) for y in ys)) != target:
        raise InternalInconsistency("Mori witness failed verification")
    return MoriWitness(ys, all(ideal.contains_element(y) for y in ys))


def sample_ideals(domain, samples: int, seed: int) -> list:
    """Special ideals first, then seeded random ones."""
    out = [two_generated(domain, a, b) for a, b in domain.special_ideals()]
    if isinstance(domain, NumSemigroup) and domain.conductor:
        out.append(domain.maximal_ideal)
    rng = random.Random(seed)
    out.extend(domain.random_ideal(rng) for _ in range(samples))
    return out


def krull_check(
    domain,
    bound: int = DEFAULT_BOUND,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    vdomain: Verdict | None = None,
) -> tuple[Verdict, Verdict]:
    """Return ``(krull, mori)``: Krull = Mori and v-domain."""
    if vdomain is None:
        vdomain = vdomain_search(domain, bound)
    ideals = sample_ideals(domain, samples, seed)
    info = {"samples": len(ideals), "seed": seed}
    two_element = strict = 0
    mori = None
    for idx, ideal in enumerate(ideals):
        try:
            w = mori_witness(ideal, n_max=max(4, len(ideal.generators())))
        except NotFound as exc:
            lhs = ideal.inverse()
            mori = Verdict(Status.REFUTED, info, WitnessReport("Mori", tuple(ideal.generators()), lhs, None,
                                                              ((float("inf"),), idx), ideal=ideal, note=str(exc)))
            break
        two_element += len(w.elements) <= 2
        strict += w.strict
    if mori is None:
        # Noetherian / finitely generated ideals: Mori by theory, witnesses found
        mori = Verdict(Status.HOLDS, info, basis="oracle", details={"two_element_witnesses": two_element, "strict_witnesses": strict})
    if vdomain.refuted:
        krull = Verdict(Status.REFUTED, vdomain.bound, vdomain.witness, details={"failed_conjunct": "v-domain"})
    elif mori.refuted:
        krull = Verdict(Status.REFUTED, info, mori.witness, details={"failed_conjunct": "Mori"})
    elif vdomain.holds:
        krull = Verdict(Status.HOLDS, vdomain.bound, basis=vdomain.basis,
                        details={"two_element_witnesses": two_element, "samples": len(ideals)})
    else:
        krull = Verdict(Status.UNDETERMINED, vdomain.bound)
    return krull, mori


def t_invertibility_sweep(domain, samples: int = DEFAULT_SAMPLES, seed: int = 0) -> Verdict:
    """Whether every sampled ideal is t-invertible (both routes must agree)."""
    ideals = sample_ideals(domain, samples, seed)
    info = {"samples": len(ideals), "seed": seed}
    for idx, ideal in enumerate(ideals):
        crit = is_t_invertible(ideal)
        if crit != t_invertible_direct(ideal):
            raise InternalInconsistency(f"t-invertibility routes disagree on {ideal!r}")
        if not crit:
            inv = ideal.inverse()
            lhs = (ideal * inv).t()
            expr = f"({_ideal_expr(domain, ideal)} * {_ideal_expr(domain, ideal)}^-1)^t"
            w = _ideal_witness(domain, "t-invertible", ((float("inf"),), idx), ideal, lhs, expr, "(A A^-1)^t != D")
            return Verdict(Status.REFUTED, info, w)
    return Verdict(Status.HOLDS, info, basis="sample")


def integrally_closed_sampling(domain, bound: int = DEFAULT_BOUND) -> Verdict:
    """``(F : F) = D`` for two-generated F; the maximality oracle must agree."""
    info = _bound_info(domain, bound)
    oracle_says = domain.theory_oracle()
    witness = None
    for cls, key, a, b in _class_candidates(domain, bound):
        if not _self_colon_unit(domain, cls):
            ideal = two_generated(domain, a, b)
            ring = ideal.colon(ideal)
            expr = f"{fmt_pair(domain, a, b)} : {fmt_pair(domain, a, b)}"
            witness = WitnessReport("integrally-closed", (a, b), ring, domain.one(), key, ideal=ideal,
                                    note="(F : F) != D", recheck=expr)
            break
    if witness is None and isinstance(domain, NumSemigroup):
        witness = _sweep_offset0(domain, lambda i: i.colon(i) == domain.one(), "integrally-closed",
                                 lambda i: i.colon(i), "(F : F) != D", "{i} : {i}")
        info["all_ideals"] = True
    if (oracle_says is True and witness is not None) or (oracle_says is False and witness is None):
        raise OracleMismatch(f"{domain}: integral-closure sweep disagrees with the maximality oracle")
    if witness is not None:
        return Verdict(Status.REFUTED, info, witness)
    return Verdict(Status.HOLDS, info, basis="oracle" if oracle_says else "exhaustive")


def default_primes(domain: QuadOrder) -> list[int]:
    ps = [2, 3, 5, 7]
    n, p = domain.f, 2
    while n > 1:
        if n % p == 0:
            if p not in ps:
                ps.append(p)
            n //= p
        else:
            p += 1
    return sorted(ps)


def essential_report(domain, primes: Sequence[int] | None = None) -> tuple[list[PrimeAbove], Verdict]:
    """Whether each prime above the listed rational primes is essential."""
    if not isinstance(domain, QuadOrder):
        raise UnsupportedBackend("essential primes are only defined for quadratic orders")
    primes = default_primes(domain) if primes is None else list(primes)
    found: list[PrimeAbove] = []
    for p in primes:
        found.extend(essential_at(domain, p))
    info = {"primes": list(primes)}
    for idx, pa in enumerate(found):
        if not pa.essential:
            # a prime over the conductor is not invertible, so (P : P) = P^-1 != D
            w = WitnessReport("essential", (pa.p,), pa.ideal.colon(pa.ideal), domain.one(), ((pa.p,), idx),
                              ideal=pa.ideal, note=f"localization at {pa.label} is not a valuation ring",
                              recheck=f"{pa.label} : {pa.label}")
            return found, Verdict(Status.REFUTED, info, w)
    return found, Verdict(Status.HOLDS, info, basis="sample")


# -- aggregated report --------------------------------------------------------------

PROPERTY_ORDER = (
    "v_domain",
    "v_fc",
    "pvmd",
    "cic",
    "mori",
    "krull",
    "integrally_closed",
    "t_invertible_sample",
    "essential",
)


@dataclass
class DomainReport:
    domain: Any
    verdicts: dict[str, Verdict]
    oracle: dict
    bound: int
    samples: int
    seed: int
    primes: list[PrimeAbove] = field(default_factory=list)
    rechecked: dict[str, bool] = field(default_factory=dict)

    @property
    def system(self) -> str:
        return "ring" if is_ring(self.domain) else "residuation-system"

    def check_consistency(self) -> list[str]:
        """Implications between verdicts that must never be violated."""
        v = self.verdicts
        problems = []

        def holds(name):
            return name in v and v[name].holds

        def refuted(name):
            return name in v and v[name].refuted

        if holds("cic") and not holds("v_domain"):
            problems.append("CIC holds but v-domain does not")
        if refuted("v_domain") and not refuted("cic"):
            problems.append("v-domain refuted but CIC not refuted")
        if holds("krull") != (holds("mori") and holds("v_domain")):
            problems.append("Krull != Mori and v-domain (Holds)")
        if refuted("krull") != (refuted("mori") or refuted("v_domain")):
            problems.append("Krull != Mori and v-domain (Refuted)")
        if holds("pvmd") and not holds("v_domain"):
            problems.append("PvMD holds but v-domain does not")
        if holds("pvmd") and not holds("v_fc"):
            problems.append("PvMD holds but v-FC does not")
        if refuted("v_domain") and not refuted("pvmd"):
            problems.append("v-domain refuted but PvMD not refuted")
        if holds("krull") and not (holds("pvmd") and holds("cic")):
            problems.append("Krull holds but PvMD or CIC does not")
        if holds("integrally_closed") and not holds("pvmd"):
            problems.append("integrally closed (and FC) but not PvMD")
        if holds("pvmd") and "essential" in v and not holds("essential"):
            problems.append("PvMD holds but a sampled prime is not essential")
        if "t_invertible_sample" in v and holds("krull") != holds("t_invertible_sample"):
            problems.append("Krull does not match t-invertibility of the sampled ideals")
        return problems


def _recheck(domain, verdict: Verdict) -> bool:
    w = verdict.witness
    if w.kind == "v-domain" and w.ideal is None:
        # ((a) ∩ (b)) = ab (a, b)^-1, so its self-colon is that of (a, b)^-1
        ring, differs = oracle.recheck_self_colon_of_inverse(two_generated(domain, *w.elements))
    elif w.kind in ("v-domain", "CIC"):
        ring, differs = oracle.recheck_self_colon_of_inverse(w.ideal)
    elif w.kind in ("integrally-closed", "essential"):
        ring, differs = oracle.recheck_self_colon(w.ideal)
    else:
        return w.reproduces()
    return differs and ring == w.lhs


def classify_domain(
    domain,
    bound: int = DEFAULT_BOUND,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    primes: Sequence[int] | None = None,
    recheck: bool = True,
) -> DomainReport:
    vd = vdomain_search(domain, bound)
    pvmd, vfc = pvmd_check(domain, bound, vdomain=vd)
    cic = cic_search(domain, bound)
    krull, mori = krull_check(domain, bound, samples, seed, vdomain=vd)
    verdicts = {
        "v_domain": vd,
        "v_fc": vfc,
        "pvmd": pvmd,
        "cic": cic,
        "mori": mori,
        "krull": krull,
        "integrally_closed": integrally_closed_sampling(domain, bound),
        "t_invertible_sample": t_invertibility_sweep(domain, samples, seed),
    }
    found: list[PrimeAbove] = []
    if is_ring(domain):
        found, verdicts["essential"] = essential_report(domain, primes)
        oracle_info = {"maximal_order": domain.theory_oracle()}
    else:
        oracle_info = {"trivial_semigroup": domain.conductor == 0}
    report = DomainReport(domain, verdicts, oracle_info, bound, samples, seed, found)
    problems = report.check_consistency()
    if problems:
        raise InternalInconsistency(f"{domain}: " + "; ".join(problems))
    if recheck:
        for name, verdict in verdicts.items():
            if verdict.refuted:
                ok = _recheck(domain, verdict)
                if not ok:
                    raise OracleMismatch(f"{domain}: {name} witness fails the brute-force recheck")
                report.rechecked[name] = ok
    return report
