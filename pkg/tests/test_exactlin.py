import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from siltmod import exactlin as el

P = 10007


def matrices(max_rows=6, max_cols=6, values=st.integers(0, P - 1)):
    shapes = st.tuples(st.integers(0, max_rows), st.integers(0, max_cols))
    return shapes.flatmap(lambda s: arrays(np.int64, s, elements=values))


# small entries make rank deficiency likely
low_rank = matrices(values=st.integers(0, 2))


def test_rref_examples():
    r, piv = el.rref(el.identity(2))
    assert np.array_equal(r, el.identity(2)) and piv == [0, 1]
    r, piv = el.rref(el.zeros(3, 3))
    assert not r.any() and piv == []
    r, piv = el.rref(np.array([[1, 2], [2, 4]]))
    assert r.tolist() == [[1, 2], [0, 0]] and piv == [0]


def test_kernel_examples():
    assert el.kernel_basis(el.identity(3)) == []
    assert len(el.kernel_basis(el.zeros(2, 4))) == 4
    (v,) = el.kernel_basis(np.array([[1, 2], [2, 4]]))
    assert v.tolist() == [P - 2, 1]


def test_solve_examples():
    b = np.array([3, 4])
    assert el.solve(el.identity(2), b).tolist() == [3, 4]
    with pytest.raises(el.NoSolution):
        el.solve(el.zeros(2, 2), np.array([1, 0]))
    m = np.array([[1, 2], [2, 4]])
    x = el.solve(m, np.array([1, 2]))
    assert el.matmul(m, x).tolist() == [1, 2]
    with pytest.raises(el.NoSolution):
        el.solve(m, np.array([1, 0]))


def test_surjectivity_examples():
    assert el.is_surjective(el.identity(4))
    assert not el.is_surjective(el.zeros(1, 0))
    assert el.is_surjective(el.zeros(0, 3))
    assert not el.is_surjective(np.array([[1, 2], [2, 4]]))


def test_modulus_checks():
    assert el.check_modulus(10007) == 10007
    for bad in (10006, 7, 1 << 26):
        with pytest.raises(ValueError):
            el.check_modulus(bad)


@given(low_rank)
def test_rank_nullity(m):
    assert el.rank(m) + len(el.kernel_basis(m)) == m.shape[1]


@given(low_rank)
def test_kernel_vectors_vanish(m):
    for v in el.kernel_basis(m):
        assert not el.matmul(m, v).any()


@given(matrices())
def test_rref_idempotent(m):
    r, piv = el.rref(m)
    r2, piv2 = el.rref(r)
    assert np.array_equal(r, r2) and piv == piv2


@given(low_rank, st.data())
def test_solve_consistent_rhs(m, data):
    x0 = data.draw(arrays(np.int64, m.shape[1], elements=st.integers(0, P - 1)))
    b = el.matmul(m, x0.reshape(-1, 1))[:, 0] if m.shape[0] else np.zeros(0, dtype=np.int64)
    x = el.solve(m, b)
    assert np.array_equal(el.matmul(m, x.reshape(-1, 1))[:, 0] if m.shape[0] else b, b)


@settings(max_examples=50)
@given(st.integers(1, 5), st.data())
def test_inverse_roundtrip(n, data):
    m = data.draw(arrays(np.int64, (n, n), elements=st.integers(0, P - 1)))
    if el.rank(m) < n:
        with pytest.raises(ZeroDivisionError):
            el.inverse(m)
        return
    assert np.array_equal(el.matmul(m, el.inverse(m)), el.identity(n))


@given(low_rank)
def test_extend_to_basis_completes(m):
    n = m.shape[1]
    rows = el.row_basis(m)
    comp = el.extend_to_basis(rows, n)
    assert rows.shape[0] + comp.shape[0] == n
    assert el.rank(np.vstack([rows, comp])) == n


def test_nilpotent_and_stable_power():
    shift = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert el.is_nilpotent(shift)
    assert not el.is_nilpotent(el.identity(2))
    assert not el.stable_power(shift).any()
