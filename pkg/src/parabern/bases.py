"""Orthogonal bases on the ball, the paraboloids and the parabolic surfaces."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Union

from .classical1d import gegenbauer_or_chebyshev, jacobi1t, laguerre1
from .gpoly import GPoly, as_rational, half, mul_tpow, parabolic_lift
from .harmonics import harmonic_basis, harmonic_dim
from .moments import DomainSpec, Kind
from .surface import SurfaceFun, from_gpoly

Element = Union[GPoly, SurfaceFun]


@dataclass(frozen=True)
class BasisId:
    """Label of a basis element.

    ``index`` is the ball multi-index k (ball and solid kinds) or the 0-based
    harmonic index ℓ (surface kinds).  For the ball, ``m == n``.
    """

    dom: DomainSpec
    n: int
    m: int
    index: Union[tuple[int, ...], int]

    def label(self) -> str:
        idx = ",".join(map(str, self.index)) if isinstance(self.index, tuple) else str(self.index)
        return f"n={self.n} m={self.m} idx=({idx})"


def compositions(n: int, d: int) -> list[tuple[int, ...]]:
    """All k ∈ ℕ₀^d with |k| = n, lexicographically descending."""
    if d == 1:
        return [(n,)]
    out = []
    for first in range(n, -1, -1):
        for rest in compositions(n - first, d - 1):
            out.append((first,) + rest)
    return out


def ball_lambda(mu: Fraction, k: tuple[int, ...], j: int, literal: bool = False) -> Fraction:
    """Gegenbauer parameter of the j-th factor (1-based j).

    The corrected value μ + |k^{j+1}| + (d-j)/2 matches the x_j-marginal of
    the ball weight; ``literal`` gives the (d-j+1)/2 variant.
    """
    d = len(k)
    tail = sum(k[j:])
    return mu + tail + Fraction(d - j + (1 if literal else 0), 2)


@lru_cache(maxsize=None)
def _ball_element(d: int, mu: Fraction, k: tuple[int, ...], literal: bool) -> GPoly:
    out = GPoly.const(d)
    r2 = GPoly.zero(d)  # ‖x_{j-1}‖²
    one = GPoly.const(d)
    for j in range(1, d + 1):
        kj = k[j - 1]
        lam = ball_lambda(mu, k, j, literal)
        coeffs = gegenbauer_or_chebyshev(kj, lam)
        factor = GPoly.zero(d)
        base = one - r2
        xj = GPoly.x(d, j - 1)
        for i, c in enumerate(coeffs):
            if c == 0:
                continue
            # (1-r²)^{k_j/2} (x_j/√(1-r²))^i = x_j^i (1-r²)^{(k_j-i)/2}
            factor = factor + (xj ** i) * (base ** ((kj - i) // 2)) * c
        out = out * factor
        r2 = r2 + xj * xj
    return out


def ball_basis(d: int, mu, n: int, literal: bool = False) -> list[GPoly]:
    """Cartesian Gegenbauer-product basis of V_n on the ball, in composition order."""
    mu = as_rational(mu)
    if mu <= Fraction(-1, 2):
        raise ValueError(f"mu must exceed -1/2, got {mu}")
    return [_ball_element(d, mu, k, literal) for k in compositions(n, d)]


def ball_element(d: int, mu, k, literal: bool = False) -> GPoly:
    return _ball_element(d, as_rational(mu), tuple(k), literal)


def solid_alpha(d: int, mu: Fraction, m: int) -> Fraction:
    return m + mu + Fraction(d - 1, 2)


@lru_cache(maxsize=None)
def _solid(kind: Kind, d: int, gamma: Fraction, mu: Fraction, n: int, m: int, k: tuple[int, ...],
           literal: bool) -> GPoly:
    if sum(k) != m or not 0 <= m <= n:
        raise ValueError(f"invalid solid index n={n} m={m} k={k}")
    lifted = parabolic_lift(_ball_element(d, mu, k, False), m)
    a = solid_alpha(d, mu, m)
    if kind is Kind.SOLID_BOUNDED:
        radial = jacobi1t(n - m, a, gamma, dim=d)
    elif literal:
        # literal form: Laguerre evaluated at 1-2t
        cs = laguerre1(n - m, a)
        radial = GPoly.zero(d)
        u = GPoly.const(d) - GPoly.t(d).scale(2)
        for (_, j2), c in cs.items():
            radial = radial + (u ** (j2 // 2)).scale(c)
    else:
        radial = laguerre1(n - m, a, dim=d)
    return radial * lifted


def solid_jacobi_basis(d: int, gamma, mu, n: int, m: int, k) -> GPoly:
    return _solid(Kind.SOLID_BOUNDED, d, as_rational(gamma), as_rational(mu), n, m, tuple(k), False)


def solid_laguerre_basis(d: int, mu, n: int, m: int, k, literal: bool = False) -> GPoly:
    return _solid(Kind.SOLID_UNBOUNDED, d, Fraction(0), as_rational(mu), n, m, tuple(k), literal)


def surface_param(d: int, m: int, literal: bool = False) -> Fraction:
    """Jacobi/Laguerre parameter m + (d-2)/2; ``literal`` gives m + (d-1)/2."""
    return m + Fraction(d - (1 if literal else 2), 2)


def surface_radial(dom: DomainSpec, n: int, m: int, literal: bool = False) -> GPoly:
    if dom.kind is Kind.SURFACE_BOUNDED:
        p = jacobi1t(n - m, surface_param(dom.d, m, literal), dom.gamma)
    else:
        p = laguerre1(n - m, surface_param(dom.d, m, False))
    return mul_tpow(p, Fraction(m, 2))


def surface_basis(dom: DomainSpec, n: int, m: int, ell: int, literal: bool = False) -> SurfaceFun:
    if not dom.kind.is_surface:
        raise ValueError("surface_basis needs a surface domain")
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    if not 0 <= ell < harmonic_dim(dom.d, m):
        raise ValueError(f"harmonic index {ell} out of range for m={m}, d={dom.d}")
    return SurfaceFun.single(dom.d, m, ell, surface_radial(dom, n, m, literal))


def basis_ids(dom: DomainSpec, n: int) -> list[BasisId]:
    """Labels of the orthogonal basis of V_n in deterministic order."""
    if dom.kind is Kind.BALL:
        return [BasisId(dom, n, n, k) for k in compositions(n, dom.d)]
    if dom.kind.is_solid:
        return [BasisId(dom, n, m, k) for m in range(n + 1) for k in compositions(m, dom.d)]
    return [BasisId(dom, n, m, ell) for m in range(n + 1) for ell in range(harmonic_dim(dom.d, m))]


def basis_element(bid: BasisId, literal: bool = False) -> Element:
    dom = bid.dom
    if dom.kind is Kind.BALL:
        return ball_element(dom.d, dom.mu, bid.index, literal)
    if dom.kind is Kind.SOLID_BOUNDED:
        return solid_jacobi_basis(dom.d, dom.gamma, dom.mu, bid.n, bid.m, bid.index)
    if dom.kind is Kind.SOLID_UNBOUNDED:
        return solid_laguerre_basis(dom.d, dom.mu, bid.n, bid.m, bid.index, literal)
    return surface_basis(dom, bid.n, bid.m, bid.index, literal)


def full_basis(dom: DomainSpec, nmax: int, literal: bool = False) -> list[tuple[BasisId, Element]]:
    """All basis elements of degree ≤ nmax."""
    return [(b, basis_element(b, literal)) for n in range(nmax + 1) for b in basis_ids(dom, n)]


def space_dim(dom: DomainSpec, n: int) -> int:
    """dim V_n: C(n+d-1, n) ball, C(n+d, n) solid, C(n+d,n)-C(n+d-2,n-2) surface."""
    d = dom.d
    if dom.kind is Kind.BALL:
        return comb(n + d - 1, n)
    if dom.kind.is_solid:
        return comb(n + d, n)
    return comb(n + d, n) - (comb(n + d - 2, n - 2) if n >= 2 else 0)


# random test vectors ------------------------------------------------------------

def random_rational(rng: random.Random, bound: int = 10) -> Fraction:
    """Uniform-ish rational in [-bound, bound] with denominator ≤ bound."""
    q = rng.randint(1, bound)
    return Fraction(rng.randint(-bound * q, bound * q), q)


def monomial_keys(d: int, n: int, with_t: bool = True) -> list[tuple[tuple[int, ...], int]]:
    """(α, j2) with |α| + j ≤ n, graded order."""
    out = []
    for deg in range(n + 1):
        for na in range(deg, -1, -1):
            j = deg - na
            if j and not with_t:
                continue
            for alpha in compositions(na, d):
                out.append((alpha, 2 * j))
    return out


def random_element(dom: DomainSpec, n: int, seed: int, coeff_bound: int = 10) -> Element:
    """Deterministic random element of Π_n on the domain (ball: Π_n^d)."""
    rng = random.Random(f"{dom.label()}|{n}|{seed}")
    while True:
        if dom.kind.is_surface:
            f = SurfaceFun.zero(dom.d)
            for deg in range(n + 1):
                for b in basis_ids(dom, deg):
                    c = random_rational(rng, coeff_bound)
                    if c:
                        f = f + basis_element(b).scale(c)
            if f:
                return f
        else:
            keys = monomial_keys(dom.d, n, with_t=dom.kind is not Kind.BALL)
            p = GPoly(dom.d, [(k, random_rational(rng, coeff_bound)) for k in keys])
            if p:
                return p


def surface_restrict(p: GPoly) -> SurfaceFun:
    return from_gpoly(p)


__all__ = [
    "BasisId", "ball_basis", "ball_element", "solid_jacobi_basis", "solid_laguerre_basis",
    "surface_basis", "basis_ids", "basis_element", "full_basis", "space_dim", "random_element",
    "SurfaceFun", "compositions", "monomial_keys", "half",
]
