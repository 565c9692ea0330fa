import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siltmod import repmod as rm
from siltmod.repmod import Module


def interval(a, dims):
    """Thin module over a linearly oriented A_n with identity arrow maps inside the support."""
    maps = {}
    for arr in a.quiver.arrows:
        maps[arr.name] = [[1]] if dims[arr.source] and dims[arr.target] else None
    return Module(a, dims, maps)


def test_projectives_injectives_simples(a2, a3):
    assert rm.projective(a2, "1").dim_vector() == (1, 1)
    p2 = rm.projective(a2, "2")
    assert p2.dim_vector() == (0, 1) and rm.find_isomorphism(p2, rm.simple(a2, "2")) is not None
    i1 = rm.injective(a2, "1")
    assert i1.dim_vector() == (1, 0) and rm.find_isomorphism(i1, rm.simple(a2, "1")) is not None
    assert rm.injective(a3, "3").dim_vector() == (1, 1, 1)


def test_relations_checked(n3):
    with pytest.raises(rm.ModuleError):
        Module(n3, {"1": 1, "2": 1, "3": 1}, {"a1": [[1]], "a2": [[1]]})


def test_hom_examples(a2):
    p1, s1, s2 = rm.projective(a2, "1"), rm.simple(a2, "1"), rm.simple(a2, "2")
    assert rm.hom_dim(p1, s2) == 0
    assert rm.hom_dim(p1, p1) == 1
    for m in (p1, s1, s2):
        assert rm.hom_dim(m, rm.direct_sum(m, m)) == 2 * rm.hom_dim(m, m)


def test_kernel_image_cokernel(a2):
    p1 = rm.projective(a2, "1")
    k, _ = rm.kernel(rm.identity_map(p1))
    assert k.is_zero()
    zero = rm.zero_module(a2)
    c, _ = rm.cokernel(rm.zero_map(zero, p1))
    assert c.dims == p1.dims
    sigma = rm.min_presentation(rm.simple(a2, "1"))
    assert sigma.cokernel().dim_vector() == (1, 0)


def test_top_radical(a2, a3):
    p1 = rm.projective(a2, "1")
    assert rm.top(p1).dim_vector() == (1, 0)
    for v in a3.vertices:
        assert rm.radical(rm.simple(a3, v))[0].is_zero()
    m = rm.direct_sum(p1, rm.simple(a2, "2"))
    assert rm.top(m).dim_vector() == (1, 1)


def test_projective_covers(a2, a3):
    cov = rm.projective_cover(rm.simple(a2, "1"))
    assert cov.vertices == ("1",)
    for v in a3.vertices:
        c = rm.projective_cover(rm.projective(a3, v))
        assert c.vertices == (v,) and c.map.is_isomorphism()
    m12 = interval(a3, {"1": 1, "2": 1, "3": 0})
    assert rm.projective_cover(m12).vertices == ("1",)


def test_minimal_presentations(a2, a3):
    s = rm.min_presentation(rm.simple(a2, "1"))
    assert (s.p_minus1, s.p0) == (("2",), ("1",))
    for v in a3.vertices:
        p = rm.min_presentation(rm.projective(a3, v))
        assert (p.p_minus1, p.p0) == ((), (v,))
    s2 = rm.min_presentation(rm.simple(a3, "2"))
    assert (s2.p_minus1, s2.p0) == (("3",), ("2",))


def test_ext_examples(a2, a3):
    for v in a3.vertices:
        for w in a3.vertices:
            assert rm.ext1_dim(rm.projective(a3, v), rm.simple(a3, w)) == 0
    assert rm.ext1_dim(rm.simple(a2, "1"), rm.simple(a2, "2")) == 1
    m12 = interval(a3, {"1": 1, "2": 1, "3": 0})
    assert rm.ext1_dim(m12, rm.projective(a3, "2")) == 1


def test_middle_terms(a2, a3):
    s1, s2 = rm.simple(a2, "1"), rm.simple(a2, "2")
    ext = rm.ext1(s1, s2)
    e = rm.middle_term(s1, s2, ext.cocycles[0], ext)
    assert rm.find_isomorphism(e, rm.projective(a2, "1")) is not None
    split = rm.middle_term(s1, s2, rm.zero_map(ext.syzygy_inclusion.source, s2), ext)
    assert rm.find_isomorphism(split, rm.direct_sum(s2, s1)) is not None
    m12, p2 = interval(a3, {"1": 1, "2": 1, "3": 0}), rm.projective(a3, "2")
    ext = rm.ext1(m12, p2)
    assert rm.middle_term(m12, p2, ext.cocycles[0], ext).dim_vector() == (1, 2, 1)


def test_tau(a2, a3):
    for v in a3.vertices:
        assert rm.tau(rm.projective(a3, v)).is_zero()
    t = rm.tau(rm.simple(a2, "1"))
    assert t.algebra is a2 and rm.find_isomorphism(t, rm.simple(a2, "2")) is not None
    t = rm.tau(rm.simple(a3, "2"))
    assert rm.find_isomorphism(t, rm.simple(a3, "3")) is not None


def test_tau_on_nakayama(n3):
    for i, j in (("1", "2"), ("2", "3"), ("3", "1")):
        assert rm.find_isomorphism(rm.tau(rm.simple(n3, i)), rm.simple(n3, j)) is not None


def test_dual_is_involution(a3):
    m = interval(a3, {"1": 1, "2": 1, "3": 0})
    dd = rm.dual(rm.dual(m))
    assert dd.algebra is a3 and rm.find_isomorphism(dd, m) is not None


def test_traces(a2):
    p1, s1, s2 = rm.projective(a2, "1"), rm.simple(a2, "1"), rm.simple(a2, "2")
    assert rm.trace(p1, p1)[0].dims == p1.dims
    assert rm.trace(s1, p1)[0].is_zero()
    both = rm.direct_sum(s2, s1)
    assert rm.trace(p1, both)[0].dim_vector() == (1, 0)
    # P2 = S2 is needed for the S2 summand: Hom(P1, S2) = 0
    assert rm.trace(rm.regular_module(a2), both)[0].dims == both.dims


def test_annihilators(a2):
    assert rm.is_faithful(rm.regular_module(a2))
    s2 = rm.simple(a2, "2")
    ann = rm.annihilator(s2)
    span = {a2.basis[int(np.flatnonzero(r)[0])].label() for r in ann}
    assert span == {"e1", "a"} and not rm.is_faithful(s2)
    assert rm.is_sincere(rm.projective(a2, "1")) and not rm.is_sincere(rm.simple(a2, "1"))


@pytest.mark.parametrize("name", ["a2", "a3", "n3"])
def test_min_presentation_exact(name, request):
    a = request.getfixturevalue(name)
    for v in a.vertices:
        for m in (rm.simple(a, v), rm.injective(a, v)):
            sigma = rm.min_presentation(m)
            assert rm.find_isomorphism(sigma.cokernel(), m) is not None
            assert rm.is_minimal_epi(rm.projective_cover(m).map)


def test_fitting_split(a3):
    m = rm.direct_sum(rm.projective(a3, "1"), rm.simple(a3, "2"), rm.simple(a3, "3"))
    parts = rm.split_fitting(m)
    assert sorted(p.dim_vector() for p in parts) == [(0, 0, 1), (0, 1, 0), (1, 1, 1)]


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 10006), min_size=1, max_size=4))
def test_random_homs_are_homomorphisms(coeffs):
    from siltmod import algebra as al

    a = al.path_algebra_a(3)
    m = rm.direct_sum(rm.projective(a, "1"), rm.projective(a, "2"))
    n = rm.direct_sum(rm.projective(a, "2"), rm.simple(a, "2"))
    hs = rm.hom_basis(m, n)
    f = rm.combine(hs.basis, (coeffs * hs.dim)[: hs.dim])
    assert f.is_homomorphism()
    assert np.array_equal(hs.coordinates(f), np.array((coeffs * hs.dim)[: hs.dim]) % a.p)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["1", "2", "3"]), st.sampled_from(["1", "2", "3"]), st.sampled_from(["1", "2", "3"]))
def test_hom_bilinearity(u, v, w):
    from siltmod import algebra as al

    a = al.path_algebra_a(3)
    m, m2, n = rm.projective(a, u), rm.simple(a, v), rm.injective(a, w)
    assert rm.hom_dim(rm.direct_sum(m, m2), n) == rm.hom_dim(m, n) + rm.hom_dim(m2, n)


def test_nonzero_cocycles_give_nonsplit_extensions(catalogs):
    for ind in catalogs.values():
        for m in ind.modules:
            for n in ind.modules:
                ext = rm.ext1(m, n)
                split = rm.direct_sum(n, m)
                for c in ext.cocycles:
                    e = rm.middle_term(m, n, c, ext)
                    assert rm.find_isomorphism(e, split) is None
