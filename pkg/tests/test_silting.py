import pytest
from hypothesis import given, settings as hsettings, strategies as st

from siltmod import repmod as rm
from siltmod import silting as si
from siltmod import torsion as to


def basic(ind, *names):
    return to.basic_module(ind, [ind.index(n) for n in names])


def test_dsigma_membership_a2(ind2):
    sigma = rm.min_presentation(ind2["S1"])
    assert si.d_class(sigma, ind2).names == ["S1", "P1"]
    assert si.d_class(si.sigma_tilde(ind2["S1"]), ind2).names == ["S1"]


def test_sigma_tilde_adds_missing_vertices(ind2):
    s = si.sigma_tilde(ind2["S2"])
    assert s.p0 == ("2",)
    assert s.p_minus1 == ("1",)
    assert s.cokernel().dim_vector() == ind2["S2"].dim_vector()


def test_negative_controls(ind2):
    s1, s2 = ind2["S1"], ind2["S2"]
    assert si.is_partial_silting(s1).verdict
    assert not si.is_silting_wrt(s1, rm.min_presentation(s1), ind2).verdict
    assert si.is_silting(s2, ind2).verdict
    assert not si.is_silting_wrt(s2, rm.min_presentation(s2), ind2).verdict
    assert si.is_silting_wrt(s2, si.sigma_tilde(s2), ind2).verdict


def test_partial_silting_not_rigid(ind3):
    # tau(S1) = S2
    t = basic(ind3, "S1", "S2")
    assert not si.is_tau_rigid(t)
    assert not si.is_partial_silting(t).verdict


def test_presentation_mismatch(ind2):
    with pytest.raises(si.PresentationMismatch):
        si.is_silting_wrt(ind2["S1"], rm.min_presentation(ind2["S2"]), ind2)


def test_tilting_a2(ind2):
    tilting = set()
    for cl in to.enumerate_silting_classes(ind2.algebra, ind2):
        if si.is_tilting(cl.module, ind2).verdict:
            tilting.add(cl.module.name)
    assert tilting == {"S2+P1", "S1+P1"}


def test_quasitilting_a2(ind2):
    for cl in to.enumerate_silting_classes(ind2.algebra, ind2):
        assert si.is_quasitilting(cl.module, ind2).verdict
    assert not si.is_quasitilting(basic(ind2, "S1", "S2"), ind2).verdict


def test_equivalent_silting(ind2):
    a = rm.regular_module(ind2.algebra)
    assert si.equivalent_silting(a, basic(ind2, "S2", "P1"), ind2)
    assert not si.equivalent_silting(a, basic(ind2, "S1", "P1"), ind2)
    with pytest.raises(si.NotSilting):
        si.equivalent_silting(a, basic(ind2, "S1", "S2"), ind2)


def test_left_approximation_regular(ind2):
    a = rm.regular_module(ind2.algebra)
    ap = si.left_approximation(a, si.sigma_tilde(a), ind2)
    assert sorted(ap.components) == ["P1", "S2"]
    assert ap.t1.is_zero()
    assert ap.phi.is_injective()


def test_left_approximation_s1_p1(ind2):
    t = basic(ind2, "S1", "P1")
    ap = si.left_approximation(t, si.sigma_tilde(t), ind2)
    assert ap.components == ["P1", "P1"]
    assert ap.certificate["t1"] == {"S1": 1}
    with pytest.raises(si.NotSilting):
        si.left_approximation(ind2["S1"], rm.min_presentation(ind2["S1"]), ind2)


def test_bongartz_pins(ind2, ind3):
    c = si.bongartz_complete(ind2["S1"], rm.min_presentation(ind2["S1"]), ind2)
    assert c.complement.dim_vector() == (3, 2)
    assert ind2.decompose(c.complement).as_dict() == {"S1": 1, "P1": 2}
    assert c.certificate["gen"] == ["S1", "P1"]
    t = basic(ind3, "S2", "P1")
    c = si.bongartz_complete(t, rm.min_presentation(t), ind3)
    assert set(ind3.decompose(c.complement).support()) <= {ind3.index(n) for n in ("S2", "P2", "P1")}
    assert sorted(c.certificate["gen"]) == sorted(["S1", "S2", "M12", "P2", "P1"])


def test_bongartz_rejects(ind3):
    t = basic(ind3, "S1", "S2")
    with pytest.raises(si.NotPartialSilting):
        si.bongartz_complete(t, rm.min_presentation(t), ind3)


@hsettings(max_examples=25, deadline=None)
@given(st.sampled_from(["A2", "A3", "N3"]), st.data())
def test_routes_agree_on_random_candidates(catalogs, name, data):
    ind = catalogs[name]
    subset = data.draw(st.sets(st.integers(0, len(ind) - 1), max_size=3))
    t = to.basic_module(ind, sorted(subset))
    # each predicate raises VerdictDisagreement if its routes disagree
    s = si.is_silting(t, ind)
    si.is_quasitilting(t, ind)
    if t.dim:
        assert si.is_partial_silting(t).verdict == si.is_tau_rigid(t)
    if s.verdict:
        assert to.gen_class(t, ind) == si.d_class(si.sigma_tilde(t), ind)


@hsettings(max_examples=25, deadline=None)
@given(st.sampled_from(["A2", "A3", "N3"]), st.data())
def test_dclass_of_sum_is_intersection(catalogs, name, data):
    ind = catalogs[name]
    i = data.draw(st.integers(0, len(ind) - 1))
    j = data.draw(st.integers(0, len(ind) - 1))
    si_, sj = rm.min_presentation(ind[i]), rm.min_presentation(ind[j])
    both = si.d_class(si_.direct_sum(sj), ind)
    assert both.members == si.d_class(si_, ind).members & si.d_class(sj, ind).members
