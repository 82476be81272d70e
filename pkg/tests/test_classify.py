import pytest

from fracideal import classify as C
from fracideal.classify import Status, Verdict, WitnessReport, merge_verdicts
from fracideal.errors import InternalInconsistency, NotFound, UnsupportedBackend
from fracideal.numsg import NumSemigroup
from fracideal.quadratic import QuadOrder, principal


@pytest.fixture(scope="module")
def z3():
    return QuadOrder(-3, 2)


@pytest.fixture(scope="module")
def zi():
    return QuadOrder(-1)


@pytest.fixture(scope="module")
def s23():
    return NumSemigroup((2, 3))


def refuted(key):
    return Verdict(Status.REFUTED, {}, WitnessReport("x", (), 0, 1, key))


def test_refuted_needs_witness():
    with pytest.raises(ValueError):
        Verdict(Status.REFUTED, {})


def test_merge_prefers_refutation_and_minimal_witness():
    h, u = Verdict(Status.HOLDS, {}), Verdict(Status.UNDETERMINED, {})
    r1, r2 = refuted((1,)), refuted((2,))
    assert merge_verdicts(h, u) is h
    assert merge_verdicts(u, r2, h, r1) is r1
    items = [h, r2, u, r1, h]
    left = merge_verdicts(merge_verdicts(*items[:2]), merge_verdicts(*items[2:]))
    assert left is merge_verdicts(*items)


def test_pair_check_routes_agree(z3, zi):
    bad = C.vdomain_pair_check(z3, z3.element(2), z3.element(1, 1))
    assert not bad.holds and bad.colon_ring == z3.maximal
    good = C.vdomain_pair_check(z3, z3.element(2), z3.element(1, 2))
    assert good.holds and good.direct and good.two_generated
    assert C.vdomain_pair_check(zi, zi.element(3), zi.element(0, 1)).holds


def test_vdomain_witness_z_sqrt_minus_3(z3):
    v = C.vdomain_search(z3, 2)
    assert v.refuted
    a, b = v.witness.elements
    assert C.two_generated(z3, a, b) == z3.ideal([z3.element(2), z3.element(1, 1)])
    assert v.witness.lhs == z3.maximal
    assert v.witness.order_key[0] <= 2


def test_vdomain_holds_for_maximal(zi):
    v = C.vdomain_search(zi, 4)
    assert v.holds and v.basis == "oracle"


def test_semigroup_witness_is_maximal_ideal(s23):
    v = C.vdomain_search(s23)
    assert v.refuted and v.witness.elements == (2, 3)
    assert C.two_generated(s23, 2, 3) == s23.maximal_ideal
    assert C.vdomain_search(NumSemigroup((1,))).holds


def test_v_finite_type_witness(z3, zi):
    x = zi.element(1, 1)
    w = C.v_finite_type_witness(zi, x, zi.mul(x, zi.element(3)))
    assert len(w.ys) == 1 and w.strict
    a, b = z3.element(2), z3.element(1, 1)
    w = C.v_finite_type_witness(z3, a, b)
    pa, pb = principal(z3, a), principal(z3, b)
    assert C._intersect_principals(z3, w.ys) == (pa + pb).v()
    assert C._intersect_principals(z3, w.zs) == (pa & pb).inverse()


def test_t_invertibility(z3, zi):
    p = z3.ideal([z3.element(2), z3.element(1, 1)])
    assert not C.is_t_invertible(p)
    assert C.is_t_invertible(z3.one())
    for a in C.sample_ideals(zi, 20, 1):
        assert C.is_t_invertible(a)


def test_mori_witness_examples(z3, zi):
    w = C.mori_witness(principal(zi, zi.element(2, 1)))
    assert len(w.elements) == 1
    a = zi.ideal([zi.element(3), zi.element(1, 1)])
    w = C.mori_witness(a)
    assert len(w.elements) <= 2 and w.strict
    p = z3.ideal([z3.element(2), z3.element(1, 1)])
    w = C.mori_witness(p)
    assert C._intersect_principals(z3, (z3.inv(y) for y in w.elements)) == p.inverse()


def test_mori_witness_not_found_with_tiny_budget(z3):
    p = z3.ideal([z3.element(2), z3.element(1, 1)])
    with pytest.raises(NotFound):
        C.mori_witness(p, n_max=1, height=0)


def test_pvmd_and_vfc(z3, zi, s23):
    pvmd, vfc = C.pvmd_check(zi, 3)
    assert pvmd.holds and vfc.holds
    pvmd, vfc = C.pvmd_check(z3, 2)
    assert pvmd.refuted and vfc.holds
    assert pvmd.details["failed_conjunct"] == "v-domain"
    assert C.pvmd_check(s23)[0].refuted


def test_cic_and_integral_closure(z3, zi, s23):
    assert C.cic_search(zi, 3).holds
    v = C.cic_search(z3, 2)
    assert v.refuted and v.witness.lhs == z3.maximal
    ic = C.integrally_closed_sampling(z3, 2)
    assert ic.refuted and ic.witness.ideal.colon(ic.witness.ideal) == z3.maximal
    assert C.cic_search(s23).witness.ideal == s23.maximal_ideal
    assert C.integrally_closed_sampling(NumSemigroup((1,))).holds


def test_krull(z3, zi):
    krull, mori = C.krull_check(zi, 3, samples=10)
    assert krull.holds and mori.holds
    assert mori.details["two_element_witnesses"] == krull.details["samples"]
    krull, mori = C.krull_check(z3, 2, samples=10)
    assert krull.refuted and mori.holds


def test_essential_report(z3, zi, s23):
    found, v = C.essential_report(z3)
    assert v.refuted and v.witness.ideal == z3.ideal([z3.element(2), z3.element(1, 1)])
    assert v.witness.lhs == v.witness.ideal.inverse() != z3.one()
    _, v = C.essential_report(zi, [2, 3, 5])
    assert v.holds
    with pytest.raises(UnsupportedBackend):
        C.essential_report(s23)
    assert 3 in C.default_primes(QuadOrder(-1, 3))


def test_classify_reports_are_consistent(z3, zi, s23):
    for dom, bound in ((z3, 2), (zi, 3), (s23, 8), (QuadOrder(2, 1), 2)):
        rep = C.classify_domain(dom, bound, samples=10)
        assert rep.check_consistency() == []
        assert all(rep.rechecked.values())
    rep = C.classify_domain(zi, 3, samples=10)
    assert rep.verdicts["krull"].holds and rep.system == "ring"
    assert C.classify_domain(s23, 8, samples=5).system == "residuation-system"


def test_consistency_catches_violations(zi):
    rep = C.classify_domain(zi, 2, samples=5)
    bad = dict(rep.verdicts)
    bad["cic"] = Verdict(Status.HOLDS, {})
    bad["v_domain"] = refuted((0,))
    rep.verdicts = bad
    problems = rep.check_consistency()
    assert "CIC holds but v-domain does not" in problems
    assert any("Krull" in p for p in problems)


def test_classify_raises_on_inconsistency(monkeypatch, zi):
    monkeypatch.setattr(C, "cic_search", lambda domain, bound: refuted((0,)))
    with pytest.raises(InternalInconsistency):
        C.classify_domain(zi, 2, samples=3)


def test_candidate_pairs_order(zi):
    pairs = C.candidate_pairs(zi, 2)
    keys = [k for k, _, _ in pairs]
    assert keys == sorted(keys)
    assert all(k[0] <= 2 for k in keys)


@pytest.mark.parametrize("d,f", [(-3, 2), (-5, 2), (5, 2), (2, 3), (-1, 1), (-7, 4)])
def test_shape_grouping_matches_every_pair(d, f):
    # each pair must get the same answer as the representative of its group
    order = QuadOrder(d, f)
    t, n = order._tn
    reps = {}
    for cls, _key, a, b in C.ratio_classes(order, 3):
        reps[C._pair_shape(order, *C._int_ratio_class(t, n, *map(int, a), *map(int, b)))] = cls
    for _key, a, b in C.candidate_pairs(order, 3):
        shape = C._pair_shape(order, *C._int_ratio_class(t, n, *map(int, a), *map(int, b)))
        cls = reps[shape]
        direct = C.vdomain_pair_check(order, a, b)
        assert C._pair_condition_unit(order, cls)[0] == direct.holds
        f_ = C.two_generated(order, a, b)
        assert C._self_colon_unit(order, cls) == (f_.colon(f_) == order.one())
