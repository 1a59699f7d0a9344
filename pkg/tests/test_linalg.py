from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg

from parabern.linalg import LinalgError, jacobi_eigh, ldl_exact, reduce_generalized, tridiag_ql, unit_lower_inverse


def _spd(n, seed):
    rng = np.random.default_rng(seed)
    m = rng.integers(-5, 6, size=(n, n))
    return [[Fraction(int(v)) for v in row] for row in (m @ m.T + n * np.eye(n, dtype=int))]


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_ldl_exact(n):
    B = _spd(n, n)
    L, D = ldl_exact(B)
    for i in range(n):
        assert L[i][i] == 1 and all(L[i][j] == 0 for j in range(i + 1, n))
        for j in range(n):
            assert sum(L[i][k] * D[k] * L[j][k] for k in range(n)) == B[i][j]
    Li = unit_lower_inverse(L)
    for i in range(n):
        for j in range(n):
            assert sum(Li[i][k] * L[k][j] for k in range(n)) == (1 if i == j else 0)


def test_ldl_rejects_indefinite():
    with pytest.raises(LinalgError):
        ldl_exact([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(1)]])


@pytest.mark.parametrize("seed", range(6))
def test_jacobi_eigh_vs_scipy(seed):
    rng = np.random.default_rng(seed)
    n = 2 + seed * 3
    a = rng.normal(size=(n, n))
    a = a + a.T
    w, v = jacobi_eigh(a)
    assert np.allclose(w, scipy.linalg.eigh(a, eigvals_only=True), atol=1e-10)
    assert np.allclose(v.T @ v, np.eye(n), atol=1e-10)
    assert np.allclose(a @ v, v * w, atol=1e-9)


def test_jacobi_eigh_diagonal_and_scalar():
    w, v = jacobi_eigh(np.diag([3.0, -1.0, 2.0]))
    assert list(w) == [-1.0, 2.0, 3.0]
    w, _ = jacobi_eigh(np.array([[4.0]]))
    assert w[0] == 4.0


@pytest.mark.parametrize("seed", range(4))
def test_generalized_vs_scipy(seed):
    n = 3 + seed
    B = _spd(n, 100 + seed)
    rng = np.random.default_rng(seed)
    m = rng.integers(-4, 5, size=(n, n))
    A = [[Fraction(int(v)) for v in row] for row in (m + m.T)]
    C, _, _ = reduce_generalized(A, B)
    w, _ = jacobi_eigh(C)
    ref = scipy.linalg.eigh(np.array(A, float), np.array(B, float), eigvals_only=True)
    assert np.allclose(w, ref, atol=1e-9)


@pytest.mark.parametrize("n", [1, 2, 7, 30])
def test_tridiag_ql_vs_scipy(n):
    rng = np.random.default_rng(n)
    diag, off = rng.normal(size=n), rng.normal(size=n - 1)
    w, z = tridiag_ql(diag, off)
    ref_w, ref_v = scipy.linalg.eigh_tridiagonal(diag, off)
    assert np.allclose(w, ref_w, atol=1e-11)
    assert np.allclose(np.abs(z), np.abs(ref_v[0]), atol=1e-9)
