"""Dense exact linear algebra over a prime field F_p.

Matrices are numpy int64 arrays holding residues in [0, p).  A matrix of shape
(rows, cols) acts on column vectors, so ``m @ x`` maps F_p^cols to F_p^rows.
Zero-row and zero-column matrices are legal and behave as zero maps.
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT_P, DIMENSION_CAP

# keeps (p-1)^2 * inner dimension inside int64
MAX_P = 1 << 25


class NoSolution(ArithmeticError):
    """The right-hand side is not in the image of the matrix."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_modulus(p: int) -> int:
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if p <= 2 * DIMENSION_CAP or p >= MAX_P:
        raise ValueError(f"modulus {p} outside supported range ({2 * DIMENSION_CAP}, {MAX_P})")
    return p


def as_matrix(m, p: int = DEFAULT_P, shape: tuple[int, int] | None = None) -> np.ndarray:
    a = np.array(m, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    return a % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int = DEFAULT_P) -> np.ndarray:
    return (a @ b) % p


def inv_scalar(x: int, p: int = DEFAULT_P) -> int:
    x = int(x) % p
    if x == 0:
        raise ZeroDivisionError("zero has no inverse")
    return pow(x, p - 2, p)


def rref(m: np.ndarray, p: int = DEFAULT_P) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = np.array(m, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = a[r] * inv_scalar(a[r, c], p) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray, p: int = DEFAULT_P) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def nullspace(m: np.ndarray, p: int = DEFAULT_P) -> np.ndarray:
    """Basis of {x : m x = 0} as the columns of a (cols x k) matrix."""
    m = np.asarray(m, dtype=np.int64)
    rows, cols = m.shape
    if rows == 0:
        return identity(cols)
    r, pivots = rref(m, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    out = zeros(cols, len(free))
    for j, f in enumerate(free):
        out[f, j] = 1
        for i, pc in enumerate(pivots):
            out[pc, j] = (-r[i, f]) % p
    return out


def kernel_basis(m: np.ndarray, p: int = DEFAULT_P) -> list[np.ndarray]:
    ns = nullspace(m, p)
    return [ns[:, j].copy() for j in range(ns.shape[1])]


def row_basis(m: np.ndarray, p: int = DEFAULT_P) -> np.ndarray:
    """Echelon basis of the row space, shape (rank x cols)."""
    m = np.asarray(m, dtype=np.int64)
    if m.shape[0] == 0:
        return zeros(0, m.shape[1])
    r, pivots = rref(m, p)
    return r[: len(pivots)].copy()


def solve_matrix(a: np.ndarray, b: np.ndarray, p: int = DEFAULT_P) -> np.ndarray:
    """Some X with a @ X = b (mod p); raises NoSolution otherwise."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    rows, cols = a.shape
    if b.shape[0] != rows:
        raise ValueError(f"rhs has {b.shape[0]} rows, matrix has {rows}")
    k = b.shape[1]
    if rows == 0:
        return zeros(cols, k)
    r, pivots = rref(np.hstack([a, b]), p)
    npiv = [c for c in pivots if c < cols]
    if len(npiv) != len(pivots):
        raise NoSolution("right-hand side is not in the image")
    x = zeros(cols, k)
    for i, pc in enumerate(npiv):
        x[pc] = r[i, cols:]
    return x


def solve(m: np.ndarray, b, p: int = DEFAULT_P) -> np.ndarray:
    """Some x with m @ x = b; raises NoSolution if b is not in the image."""
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    return solve_matrix(m, b, p)[:, 0]


def is_surjective(m: np.ndarray, p: int = DEFAULT_P) -> bool:
    m = np.asarray(m)
    return rank(m, p) == m.shape[0]


def is_injective(m: np.ndarray, p: int = DEFAULT_P) -> bool:
    m = np.asarray(m)
    return rank(m, p) == m.shape[1]


def inverse(m: np.ndarray, p: int = DEFAULT_P) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[0]
    if m.shape != (n, n) or rank(m, p) != n:
        raise ZeroDivisionError("matrix is not invertible")
    return solve_matrix(m, identity(n), p)


def extend_to_basis(rows: np.ndarray, n: int, p: int = DEFAULT_P) -> np.ndarray:
    """Standard basis vectors completing the row space of ``rows`` to F_p^n."""
    rows = np.asarray(rows, dtype=np.int64)
    rows = zeros(0, n) if rows.size == 0 else rows.reshape(-1, n)
    pivots = set(rref(rows, p)[1]) if rows.shape[0] else set()
    comp = [c for c in range(n) if c not in pivots]
    out = zeros(len(comp), n)
    for i, c in enumerate(comp):
        out[i, c] = 1
    return out


def is_nilpotent(m: np.ndarray, p: int = DEFAULT_P) -> bool:
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[0]
    if n == 0:
        return True
    power = m.copy()
    k = 1
    while k < n:
        power = matmul(power, power, p)
        k *= 2
    return not power.any()


def stable_power(m: np.ndarray, p: int = DEFAULT_P) -> np.ndarray:
    """m^k for some k >= size, where image and kernel have stabilised (Fitting)."""
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[0]
    power = m.copy() if n else m
    k = 1
    while k < n:
        power = matmul(power, power, p)
        k *= 2
    return power
