import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from siltmod import algebra as al
from siltmod.algebra import Quiver, Relation, build_algebra


def labels(a):
    return [b.label() for b in a.basis]


def test_a2_a3_bases():
    a2 = build_algebra(Quiver.from_lists("12", [("a", "1", "2")]), [], 3)
    assert a2.dim == 3 and sorted(labels(a2)) == ["a", "e1", "e2"]
    a3 = build_algebra(Quiver.from_lists("123", [("a", "1", "2"), ("b", "2", "3")]), [], 4)
    assert sorted(labels(a3)) == ["a", "a*b", "b", "e1", "e2", "e3"]


def test_nakayama_dimension(n3):
    assert n3.dim == 6
    assert all(len(b) <= 1 for b in n3.basis)


def test_opposites(a2, a3, n3):
    op = a2.opposite()
    assert op.dim == 3
    arrow = op.quiver.arrow("a")
    assert (arrow.source, arrow.target) == ("2", "1")
    twice = a3.opposite().opposite()
    assert twice.dim == a3.dim and np.array_equal(twice.mult, a3.mult)
    nop = n3.opposite()
    assert nop.dim == 6 and not nop.quiver.is_acyclic()


def test_products(a2, a3, n3):
    e1, alpha = a2.element([(1, "e1")]), a2.element([(1, "a")])
    assert np.array_equal(a2.multiply(e1, alpha), alpha)
    assert np.array_equal(a3.multiply(a3.element([(1, "a")]), a3.element([(1, "b")])), a3.element([(1, "a*b")]))
    arrows = [n3.element([(1, f"a{i}")]) for i in (1, 2, 3)]
    for x, y in itertools.product(arrows, arrows):
        assert not n3.multiply(x, y).any()


@pytest.mark.parametrize("name", ["a2", "a3", "n3"])
def test_associativity_and_unit(name, request):
    a = request.getfixturevalue(name)
    m = a.mult
    left = np.einsum("ijk,klm->ijlm", m, m) % a.p
    right = np.einsum("jlk,ikm->ijlm", m, m) % a.p
    assert np.array_equal(left, right)
    unit = a.unit()
    for i in range(a.dim):
        x = np.eye(a.dim, dtype=np.int64)[i]
        assert np.array_equal(a.multiply(unit, x), x) and np.array_equal(a.multiply(x, unit), x)


@pytest.mark.parametrize("name", ["a2", "a3", "n3"])
def test_dimension_from_projectives(name, request):
    a = request.getfixturevalue(name)
    assert a.dim == sum(len(a.starting_at(v)) for v in a.vertices)
    assert a.dim == sum(len(a.ending_at(v)) for v in a.vertices)


def test_commutative_square_relation():
    q = Quiver.from_lists("1234", [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")])
    a = build_algebra(q, [Relation.of((1, "ab"), (-1, "cd"))], 3)
    assert a.dim == 4 + 4 + 1
    ab, cd = a.multiply(a.element([(1, "a")]), a.element([(1, "b")])), a.multiply(
        a.element([(1, "c")]), a.element([(1, "d")])
    )
    assert np.array_equal(ab, cd)


def test_inadmissible_relations():
    q = Quiver.from_lists("12", [("a", "1", "2")])
    with pytest.raises(al.NotAdmissible):
        build_algebra(q, [Relation.of((1, "a"))], 3)
    q3 = Quiver.from_lists("123", [("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")])
    with pytest.raises(al.NotAdmissible):
        build_algebra(q3, [Relation.of((1, "ab"), (1, "b"))], 3)


def test_cap_too_small():
    q = Quiver.from_lists("123", [("a", "1", "2"), ("b", "2", "3")])
    with pytest.raises(al.CapTooSmall):
        build_algebra(q, [], 2)


def test_bad_quivers():
    with pytest.raises(al.AlgebraError):
        Quiver.from_lists("11", [])
    with pytest.raises(al.AlgebraError):
        Quiver.from_lists("12", [("a", "1", "3")])


@given(st.integers(1, 4), st.integers(2, 3))
def test_nakayama_family_dimension(n, loewy):
    a = al.cyclic_nakayama(n, loewy)
    assert a.dim == n * loewy
