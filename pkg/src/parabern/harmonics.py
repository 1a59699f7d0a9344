"""Real spherical harmonics as homogeneous harmonic polynomials, exactly."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

from .gpoly import GPoly, GPolyError, laplacian_x


def harmonic_dim(d: int, m: int) -> int:
    """dim ℋ_m^d = C(m+d-1, m) - C(m+d-3, m-2)."""
    if m < 0:
        return 0
    if d == 1:
        return 1 if m <= 1 else 0
    lower = comb(m + d - 3, m - 2) if m >= 2 else 0
    return comb(m + d - 1, m) - lower


def homogeneous_monomials(d: int, m: int) -> list[tuple[int, ...]]:
    """Exponent tuples of degree m, lexicographically descending (x1^m first)."""
    out = []
    for combo in combinations_with_replacement(range(d), m):
        alpha = [0] * d
        for i in combo:
            alpha[i] += 1
        out.append(tuple(alpha))
    return sorted(set(out), reverse=True)


def sphere_moment(alpha, d: int) -> Fraction:
    """Normalized ∫_{S^{d-1}} ξ^α dσ.

    Equal to Π_i (1/2)_{α_i/2} / (d/2)_{|α|/2} with Pochhammer symbols,
    and zero when some α_i is odd.
    """
    if len(alpha) != d:
        raise GPolyError(f"multi-index {alpha} does not match dimension {d}")
    if any(a & 1 for a in alpha):
        return Fraction(0)
    return _even_sphere_moment(tuple(a // 2 for a in alpha), d)


@lru_cache(maxsize=None)
def _even_sphere_moment(beta: tuple[int, ...], d: int) -> Fraction:
    num = Fraction(1)
    for b in beta:
        for k in range(b):
            num *= Fraction(2 * k + 1, 2)
    den = Fraction(1)
    for k in range(sum(beta)):
        den *= Fraction(d, 2) + k
    return num / den


def sphere_inner(p: GPoly, q: GPoly, d: int | None = None) -> Fraction:
    """Normalized sphere inner product of two x-only polynomials."""
    d = p.dim if d is None else d
    if p.dim != d or q.dim != d:
        raise GPolyError("dimension mismatch in sphere_inner")
    if not (p.is_x_only() and q.is_x_only()):
        raise GPolyError("sphere_inner expects polynomials in x alone")
    total = Fraction(0)
    for (a, _), ca in p.items():
        for (b, _), cb in q.items():
            s = tuple(x + y for x, y in zip(a, b))
            if any(v & 1 for v in s):
                continue
            total += ca * cb * _even_sphere_moment(tuple(v // 2 for v in s), d)
    return total


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Exact nullspace via reduced row echelon form.

    Pivots are searched from the last column backwards so that every basis
    vector has a single leading free column with coefficient one.
    """
    order = list(range(ncols - 1, -1, -1))
    mat = [r[:] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in order:
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(mat, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class HarmonicBasis:
    d: int
    m: int
    elements: tuple[GPoly, ...]
    norms2: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, ell: int) -> GPoly:
        return self.elements[ell]


@lru_cache(maxsize=None)
def harmonic_basis(d: int, m: int) -> HarmonicBasis:
    """Sphere-orthogonal basis of ℋ_m^d (index ℓ is 0-based)."""
    if d < 2:
        raise GPolyError("harmonic bases need d >= 2")
    if m < 0:
        raise GPolyError("harmonic degree must be nonnegative")
    cols = homogeneous_monomials(d, m)
    if m < 2:
        raw = [GPoly(d, {(a, 0): 1}) for a in cols]
    else:
        targets = {a: i for i, a in enumerate(homogeneous_monomials(d, m - 2))}
        rows = [[Fraction(0)] * len(cols) for _ in targets]
        for c, a in enumerate(cols):
            lap = laplacian_x(GPoly(d, {(a, 0): 1}))
            for (b, _), v in lap.items():
                rows[targets[b]][c] += v
        raw = [GPoly(d, {(cols[i], 0): v for i, v in enumerate(vec) if v}) for vec in _nullspace(rows, len(cols))]
    # Gram–Schmidt without normalization
    ortho: list[GPoly] = []
    norms: list[Fraction] = []
    for p in raw:
        for q, nq in zip(ortho, norms):
            c = sphere_inner(p, q, d)
            if c:
                p = p - q.scale(c / nq)
        ortho.append(p)
        norms.append(sphere_inner(p, p, d))
    if len(ortho) != harmonic_dim(d, m):
        raise GPolyError("harmonic basis dimension mismatch")
    return HarmonicBasis(d, m, tuple(ortho), tuple(norms))


def laplace_beltrami_eigenvalue(d: int, m: int) -> int:
    """m(m+d-2), so that Δ₀Y = -m(m+d-2)Y."""
    return m * (m + d - 2)
