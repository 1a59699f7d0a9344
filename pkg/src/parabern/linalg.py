"""Small dense linear algebra: exact LDLᵀ and in-repo symmetric eigensolvers.

The eigensolvers are deliberately self-contained: the cyclic Jacobi method
for the Rayleigh blocks and implicit-shift QL for symmetric tridiagonal
matrices (Golub–Welsch).  numpy is used for storage and vector arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np


class LinalgError(ArithmeticError):
    pass


def ldl_exact(B: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """B = L D Lᵀ with unit lower-triangular L, for exactly positive definite B."""
    n = len(B)
    L = [[Fraction(0)] * n for _ in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        s = B[j][j] - sum((L[j][k] ** 2 * D[k] for k in range(j)), Fraction(0))
        if s <= 0:
            raise LinalgError(f"matrix is not positive definite at pivot {j}")
        D[j] = s
        L[j][j] = Fraction(1)
        for i in range(j + 1, n):
            v = B[i][j] - sum((L[i][k] * L[j][k] * D[k] for k in range(j)), Fraction(0))
            L[i][j] = v / s
    return L, D


def unit_lower_inverse(L: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(L)
    inv = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        inv[i][i] = Fraction(1)
        for j in range(i):
            inv[i][j] = -sum((L[i][k] * inv[k][j] for k in range(j, i)), Fraction(0))
    return inv


def reduce_generalized(A, B) -> tuple[np.ndarray, list[list[Fraction]], list[Fraction]]:
    """Return C with eig(C) = eig(A, B), plus (L⁻¹, D) for back-transformation.

    C = D^{-1/2} L^{-1} A L^{-T} D^{-1/2}; the inner product is exact and
    only the final scaling is done in floating point.
    """
    L, D = ldl_exact(B)
    Li = unit_lower_inverse(L)
    n = len(A)
    tmp = [[sum((Li[i][k] * A[k][j] for k in range(i + 1)), Fraction(0)) for j in range(n)] for i in range(n)]
    M = [[sum((tmp[i][k] * Li[j][k] for k in range(j + 1)), Fraction(0)) for j in range(n)] for i in range(n)]
    sq = [math.sqrt(float(x)) for x in D]
    C = np.array([[float(M[i][j]) / (sq[i] * sq[j]) for j in range(n)] for i in range(n)])
    return (C + C.T) / 2, Li, D


def jacobi_eigh(A: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigen-decomposition of a symmetric matrix.

    Returns ascending eigenvalues and the matching orthonormal eigenvectors
    as columns.  Iterates until the off-diagonal Frobenius norm is below
    ``tol`` times the matrix norm.
    """
    a = np.array(A, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n <= 1:
        return np.diag(a).copy(), v
    scale = max(np.linalg.norm(a), 1e-300)
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * apq)
                if abs(theta) > 1e150:
                    t = 1 / (2 * theta)
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise LinalgError("Jacobi eigen-iteration did not converge")
    w = np.diag(a).copy()
    order = np.argsort(w)
    return w[order], v[:, order]


def tridiag_ql(diag: Sequence[float], off: Sequence[float], max_iter: int = 60) -> tuple[list[float], list[float]]:
    """Implicit-shift QL on a symmetric tridiagonal matrix.

    ``off[i]`` couples rows i and i+1.  Returns ascending eigenvalues and the
    first component of each normalized eigenvector (what Golub–Welsch needs).
    """
    n = len(diag)
    d = [float(x) for x in diag]
    e = [float(x) for x in off] + [0.0]
    z = [1.0] + [0.0] * (n - 1)  # first row of the eigenvector matrix
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= 1e-16 * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > max_iter:
                raise LinalgError("tridiagonal QL did not converge")
            g = (d[l + 1] - d[l]) / (2 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                zf = z[i + 1]
                z[i + 1] = s * z[i] + c * zf
                z[i] = c * z[i] - s * zf
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    order = sorted(range(n), key=lambda k: d[k])
    return [d[k] for k in order], [z[k] for k in order]
