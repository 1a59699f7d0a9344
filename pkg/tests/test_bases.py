from fractions import Fraction
from math import comb

import pytest

from parabern.bases import (ball_basis, ball_element, basis_ids, full_basis, random_element, solid_jacobi_basis,
                            solid_laguerre_basis, space_dim, surface_basis)
from parabern.classical1d import jacobi1t
from parabern.gpoly import GPoly, mul_tpow
from parabern.moments import Kind, inner
from parabern.surface import SurfaceFun

from .conftest import GAMMAS, MUS, dom

H = Fraction(1, 2)
X1 = GPoly.x(2, 0)


def proportional(p, q):
    """p == c q for some nonzero rational c."""
    (k, c), *_ = q.items()
    a = p.coeff(*k)
    return a != 0 and p == q.scale(a / c)


@pytest.mark.parametrize("mu", MUS)
def test_ball_degree_one(mu):
    # literal Gegenbauer parameters give the constants 2(μ+1) and 2μ+1
    lit = [ball_element(2, mu, k, literal=True) for k in ((1, 0), (0, 1))]
    assert lit[0] == GPoly.x(2, 0).scale(2 * (mu + 1))
    assert lit[1] == GPoly.x(2, 1).scale(2 * mu + 1)
    # corrected parameters shift each by 1/2, so only the normalization changes
    cor = [ball_element(2, mu, k) for k in ((1, 0), (0, 1))]
    assert cor[0] == GPoly.x(2, 0).scale(2 * mu + 1)
    assert cor[1] == GPoly.x(2, 1).scale(2 * mu)


def test_ball_legendre():
    x = GPoly.x(1, 0)
    assert proportional(ball_element(1, H, (2,)), (x * x).scale(3) - 1)
    # the literal Gegenbauer parameter gives a different, non-Legendre polynomial
    assert not proportional(ball_element(1, H, (2,), literal=True), (x * x).scale(3) - 1)


def test_solid_examples():
    for g in GAMMAS:
        for mu in MUS:
            want = GPoly.const(1, mu + 1) - GPoly.t(1).scale(mu + g + 2)
            assert solid_jacobi_basis(1, g, mu, 1, 0, (0,)) == want
    assert proportional(solid_jacobi_basis(1, 0, H, 1, 1, (1,)), GPoly.x(1, 0))
    assert solid_jacobi_basis(2, 1, 2, 0, 0, (0, 0)).degree() == 0


def test_laguerre_examples():
    # L_1^{α}(t) with α = m + μ + (d-1)/2 = 1/2
    assert solid_laguerre_basis(1, H, 1, 0, (0,)) == GPoly.const(1, Fraction(3, 2)) - GPoly.t(1)
    assert proportional(solid_laguerre_basis(1, H, 1, 1, (1,)), GPoly.x(1, 0))
    assert solid_laguerre_basis(2, 1, 0, 0, (0, 0)).degree() == 0


def test_surface_examples():
    for g in GAMMAS:
        D = dom("surface-jacobi", 2, g)
        f = surface_basis(D, 1, 1, 0)
        assert f == SurfaceFun.single(2, 1, 0, GPoly.t(1, H))
        assert f.to_gpoly() == X1
        assert surface_basis(D, 1, 0, 0).parts[(0, 0)] == jacobi1t(1, 0, g)
        assert surface_basis(D, 1, 0, 0, literal=True).parts[(0, 0)] == jacobi1t(1, H, g)
    L = dom("surface-laguerre", 2)
    f = surface_basis(L, 2, 2, 1)
    assert f.parts == {(2, 1): GPoly.t(1)}
    assert f.to_gpoly() == X1 * GPoly.x(2, 1)


def test_random_element_examples():
    D = dom("solid-jacobi", 2)
    assert random_element(D, 0, 3).degree() == 0
    p = random_element(D, 3, 7)
    assert p == random_element(D, 3, 7)
    assert p != random_element(D, 3, 8)
    assert len(p) <= comb(6, 3) and p.degree() <= 3 and p.is_polynomial()
    S = dom("surface-jacobi", 3)
    assert random_element(S, 2, 1) == random_element(S, 2, 1)


def test_argument_errors():
    with pytest.raises(ValueError):
        surface_basis(dom("surface-jacobi", 2), 1, 2, 0)
    with pytest.raises(ValueError):
        surface_basis(dom("surface-jacobi", 2), 2, 2, 5)
    with pytest.raises(ValueError):
        surface_basis(dom("solid-jacobi", 2), 1, 0, 0)


GRID = [(k, d, g, mu) for k in Kind for d in (1, 2, 3) for g in (0, H, 2) for mu in MUS
        if not (k.is_surface and d == 1) and not (k is Kind.BALL and g)
        and not (k.is_surface and mu != H) and not (k.value.endswith("laguerre") and g)]


def _nmax(kind, d):
    return {1: 5, 2: 4, 3: 3}[d] if kind is not Kind.BALL else 5


@pytest.mark.parametrize("kind,d,g,mu", GRID, ids=lambda v: str(getattr(v, "value", v)))
def test_gram_diagonal(kind, d, g, mu):
    D = dom(kind.value, d, g, mu)
    basis = [e for _, e in full_basis(D, _nmax(kind, d))]
    for i, a in enumerate(basis):
        assert inner(D, a, a) > 0
        for b in basis[:i]:
            assert inner(D, a, b) == 0


def _off_diagonal(D, nmax, literal):
    basis = [e for _, e in full_basis(D, nmax, literal)]
    return any(inner(D, a, b) != 0 for i, a in enumerate(basis) for b in basis[:i])


def test_literal_variants_break_orthogonality():
    assert _off_diagonal(dom("ball", 2, 0, 1), 3, True)
    assert _off_diagonal(dom("surface-jacobi", 2, H), 2, True)
    assert _off_diagonal(dom("solid-laguerre", 1, 0, H), 2, True)
    assert not _off_diagonal(dom("surface-laguerre", 2), 3, False)


@pytest.mark.parametrize("kind", list(Kind))
def test_dimension_counts(kind):
    for d in (1, 2, 3, 4):
        if kind.is_surface and d == 1:
            continue
        D = dom(kind.value, d)
        for n in range(7):
            ids = basis_ids(D, n)
            assert len(ids) == space_dim(D, n)
            assert len(set(ids)) == len(ids)
            if kind.is_solid:
                assert len(ids) == comb(n + d, n)
            elif kind.is_surface:
                assert len(ids) == comb(n + d, n) - (comb(n + d - 2, n - 2) if n >= 2 else 0)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_ball_parity(d):
    for n in range(7):
        for p in ball_basis(d, Fraction(1), n):
            assert p.degree() == n
            assert all(sum(a) % 2 == n % 2 for (a, _), _ in p.items())


@pytest.mark.parametrize("kind", ["solid-jacobi", "solid-laguerre"])
def test_solids_are_polynomials(kind):
    for d in (1, 2, 3):
        D = dom(kind, d, H, Fraction(5, 2))
        for bid, p in full_basis(D, 5 if d < 3 else 4):
            assert p.is_polynomial()
            assert p.degree() == bid.n


def test_surface_radials_are_half_shifted():
    D = dom("surface-laguerre", 3)
    for bid, f in full_basis(D, 4):
        (key, g), = f.parts.items()
        assert key == (bid.m, bid.index)
        assert g.min_t2 == bid.m
        assert f.degree() == bid.n
    assert mul_tpow(GPoly.const(1), H) == GPoly.t(1, H)
