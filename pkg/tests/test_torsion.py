import pytest
from hypothesis import given, settings as hsettings, strategies as st

from siltmod import repmod as rm
from siltmod import silting as si
from siltmod import torsion as to


def sub(ind, *names):
    return to.IndSubset.of(ind, [ind.index(n) for n in names])


def test_indsubset_basics(ind2):
    s = sub(ind2, "S1", "P1")
    assert s.names == ["S1", "P1"]
    assert ind2.index("S2") in s.complement()
    assert sub(ind2, "S1") <= s
    assert len(to.IndSubset.everything(ind2)) == 3


def test_gen_and_perp(ind2):
    p1 = ind2["P1"]
    assert to.gen_class(p1, ind2) == sub(ind2, "S1", "P1")
    assert to.perp_class(p1, ind2) == sub(ind2, "S2")
    assert to.ext_perp_class(ind2["S1"], ind2) == sub(ind2, "S1", "P1")


def test_torsion_pair_certifies(ind2):
    cert = to.is_torsion_pair(sub(ind2, "S1", "P1"), sub(ind2, "S2"))
    assert cert.filtrations["P1"] == {"trace": ["P1"], "quotient": []}


def test_torsion_pair_failures(ind2):
    with pytest.raises(to.OrthogonalityFailure):
        to.is_torsion_pair(sub(ind2, "P1"), sub(ind2, "S1"))
    with pytest.raises(to.FiltrationFailure):
        to.is_torsion_pair(sub(ind2, "S1"), sub(ind2))
    # {P1} is not closed under quotients: S1 is a quotient of P1
    with pytest.raises(to.ClosureFailure):
        to._check_closure(sub(ind2, "P1"))


def test_torsion_classes_a2(ind2):
    from itertools import combinations

    found = [
        tuple(sorted(c))
        for k in range(4)
        for c in combinations(range(3), k)
        if to.is_torsion_class(to.IndSubset.of(ind2, c))
    ]
    assert len(found) == 5


_CLASSES = {}


def classes_of(ind):
    if id(ind) not in _CLASSES:
        _CLASSES[id(ind)] = to.enumerate_silting_classes(ind.algebra, ind, approximate=False)
    return _CLASSES[id(ind)]


def test_ext_projectives_are_summands(catalogs):
    for ind in catalogs.values():
        for cl in classes_of(ind):
            assert to.ext_projectives(cl.torsion_class) == cl.summands


def test_submodule_closure(ind2):
    assert to.in_submodule_closure(ind2["S2"], sub(ind2, "P1"))
    assert not to.in_submodule_closure(ind2["S1"], sub(ind2, "S2"))
    assert to.in_submodule_closure(rm.zero_module(ind2.algebra), sub(ind2))


def test_hrs_report(ind2):
    rep = to.hrs_report(to.basic_module(ind2, [ind2.index("S1"), ind2.index("P1")]), ind2)
    assert rep.verdict
    cert = rep.routes[0].certificate
    assert cert["aisle"]["degree_0"] == ["S1", "P1"]
    assert cert["coaisle"]["degree_0"] == ["S2"]
    with pytest.raises(si.NotSilting):
        to.hrs_report(to.basic_module(ind2, [0, 1]), ind2)


@hsettings(max_examples=20, deadline=None)
@given(st.sampled_from(["A2", "A3", "N3"]), st.data())
def test_silting_gen_is_torsion_class(catalogs, name, data):
    ind = catalogs[name]
    classes = classes_of(ind)
    cl = data.draw(st.sampled_from(classes))
    to.is_torsion_pair(cl.torsion_class, to.perp_class(cl.module, ind))
    assert si.d_class(si.sigma_tilde(cl.module), ind) == cl.torsion_class
