from fractions import Fraction

import pytest

from parabern.bases import BasisId, basis_element, basis_ids, full_basis, random_element, solid_laguerre_basis
from parabern.classical1d import jacobi1t
from parabern.gpoly import GPoly
from parabern.moments import Kind
from parabern.operators import (EigenFormula, EigenKind, apply_ball_op, apply_op, apply_solid_jacobi_op,
                                apply_solid_laguerre_op, apply_surface_op, ball_eigenvalue, ball_integral_forms,
                                ball_op_divergence, decomposition_residual, eigen_residual,
                                eigenvalue, integral_ball_identity, integral_R_identity,
                                integral_surface_identity, selfadjoint_gap)
from parabern.surface import SurfaceFun

from .conftest import GAMMAS, MUS, dom

H = Fraction(1, 2)


def test_ball_op_examples():
    for mu in MUS:
        assert apply_ball_op(GPoly.const(2), mu).is_zero()
        x1 = GPoly.x(2, 0)
        assert apply_ball_op(x1, mu) == x1.scale(-(2 * mu + 2))
        assert ball_eigenvalue(2, mu, 1) == 2 * mu + 2
        # the literal eigenvalue n(n+2μ+d) is one too large at n=1
        assert ball_eigenvalue(2, mu, 1, literal=True) == 2 * mu + 3


def test_solid_jacobi_examples():
    assert apply_solid_jacobi_op(GPoly.const(1), 0, H).is_zero()
    p = jacobi1t(1, H, 0)
    assert apply_solid_jacobi_op(p, 0, H) == p.scale(-Fraction(5, 2))
    x1 = GPoly.x(1, 0)
    for g in GAMMAS:
        assert apply_solid_jacobi_op(x1, g, H) == x1.scale(-(g + 1) / 2)


def test_solid_laguerre_examples():
    assert apply_solid_laguerre_op(GPoly.const(1), H).is_zero()
    p = solid_laguerre_basis(1, H, 1, 0, (0,))
    assert (apply_solid_laguerre_op(p, H) + p).is_zero()
    x1 = GPoly.x(1, 0)
    assert apply_solid_laguerre_op(x1, H) == x1.scale(-H)


def test_literal_laguerre_operator_fails():
    p = solid_laguerre_basis(1, H, 1, 0, (0,))
    assert not (apply_solid_laguerre_op(p, H, literal=True) + p).is_zero()


def test_surface_examples():
    for g in GAMMAS:
        D = dom("surface-jacobi", 2, g)
        f = SurfaceFun.single(2, 1, 0, GPoly.t(1, H))
        assert apply_surface_op(f, D) == f.scale(-(g + 1) / 2)
        assert apply_surface_op(SurfaceFun.single(2, 0, 0, GPoly.const(1)), D).is_zero()


def test_eigenvalue_examples():
    assert eigenvalue(EigenFormula(EigenKind.SOLID_JACOBI, 2, Fraction(0), H), 2, 1) == Fraction(9, 2)
    assert eigenvalue(EigenFormula(EigenKind.SOLID_LAGUERRE, 2), 4, 2) == 3
    assert eigenvalue(EigenFormula(EigenKind.SURFACE_LAGUERRE, 3), 4, 2) == 3
    for d in (2, 3):
        for g in GAMMAS:
            F = EigenFormula(EigenKind.SURFACE_JACOBI, d, g)
            for n in range(13):
                assert eigenvalue(F, n, n) == (g + 1) * n / 2
    with pytest.raises(ValueError):
        eigenvalue(EigenFormula(EigenKind.SOLID_LAGUERRE, 2), 2, 3)


FAMILIES = [("ball", d, 0, mu) for d in (1, 2, 3) for mu in MUS]
FAMILIES += [("solid-jacobi", d, g, mu) for d in (1, 2, 3) for g in GAMMAS for mu in MUS]
FAMILIES += [("solid-laguerre", d, 0, mu) for d in (1, 2, 3) for mu in MUS]
FAMILIES += [("surface-jacobi", d, g, H) for d in (2, 3) for g in GAMMAS]
FAMILIES += [("surface-laguerre", d, 0, H) for d in (2, 3)]


def _label(v):
    return str(v)


@pytest.mark.parametrize("kind,d,g,mu", FAMILIES, ids=_label)
def test_eigen_residuals(kind, d, g, mu):
    D = dom(kind, d, g, mu)
    nmax = 8 if d < 3 else 6
    for n in range(nmax + 1):
        for bid in basis_ids(D, n):
            r = eigen_residual(bid)
            assert r.is_zero, bid.label()
            assert r.polynomial


@pytest.mark.parametrize("kind", ["solid-jacobi", "surface-laguerre"])
def test_eigen_residuals_degree8_d3(kind):
    D = dom(kind, 3, H, 1)
    for bid in basis_ids(D, 8)[::7]:
        assert eigen_residual(bid).is_zero


def test_literal_ball_eigenvalue_fails():
    D = dom("ball", 2, 0, 1)
    assert not eigen_residual(basis_ids(D, 2)[0], literal=True).is_zero


def test_perturbed_element_fails():
    for kind in ("ball", "solid-jacobi", "solid-laguerre"):
        D = dom(kind, 2, H, 1)
        bid = basis_ids(D, 3)[1]
        u = basis_element(bid) + 1
        assert not eigen_residual(bid, element=u).is_zero
    S = dom("surface-jacobi", 2, H)
    bid = basis_ids(S, 3)[2]
    u = basis_element(bid) + SurfaceFun.single(2, 0, 0, GPoly.const(1))
    assert not eigen_residual(bid, element=u).is_zero


@pytest.mark.parametrize("kind", ["solid-jacobi", "solid-laguerre", "surface-jacobi", "surface-laguerre"])
def test_decomposition(kind):
    D = dom(kind, 2 if kind.startswith("surface") else 3, H, Fraction(5, 2))
    for seed in range(25):
        assert decomposition_residual(D, random_element(D, 4, seed)).is_zero()


def test_ball_operator_forms_agree():
    for mu in MUS:
        for seed in range(10):
            p = random_element(dom("ball", 3, 0, mu), 4, seed)
            assert apply_ball_op(p, mu) == ball_op_divergence(p, mu)


@pytest.mark.parametrize("kind,d,g,mu", [f for f in FAMILIES if f[1] >= 2][::3], ids=_label)
def test_selfadjoint(kind, d, g, mu):
    D = dom(kind, d, g, mu)
    for seed in range(5):
        f, h = random_element(D, 3, seed), random_element(D, 3, seed + 50)
        assert selfadjoint_gap(D, f, h) == 0


@pytest.mark.parametrize("kind", ["solid-jacobi", "solid-laguerre", "surface-jacobi", "surface-laguerre"])
def test_integration_by_parts(kind):
    D = dom(kind, 2, H, 1)
    for seed in range(6):
        f, h = random_element(D, 3, seed), random_element(D, 3, seed + 9)
        lhs, rhs = integral_R_identity(D, f, h)
        assert lhs == rhs
        if D.kind.is_surface:
            lhs, rhs = integral_surface_identity(D, f, h)
            assert lhs == rhs
        else:
            vals = integral_ball_identity(D, f, h)
            assert len(set(vals.values())) == 1, vals


def test_ball_integral_forms():
    for mu in MUS:
        for seed in range(5):
            D = dom("ball", 3, 0, mu)
            f, h = random_element(D, 4, seed), random_element(D, 4, seed + 20)
            assert len(set(ball_integral_forms(3, mu, f, h).values())) == 1


@pytest.mark.parametrize("kind", [EigenKind.SOLID_JACOBI, EigenKind.SOLID_LAGUERRE, EigenKind.SURFACE_JACOBI,
                                  EigenKind.SURFACE_LAGUERRE])
def test_monotone_in_m(kind):
    for d in (1, 2, 3):
        if kind.value.startswith("Surface") and d == 1:
            continue
        for g in GAMMAS:
            for mu in MUS:
                F = EigenFormula(kind, d, g, mu)
                for n in range(13):
                    top = eigenvalue(F, n, 0)
                    for m in range(n + 1):
                        assert 0 <= eigenvalue(F, n, m) <= top


def test_apply_op_dispatch():
    D = dom("solid-laguerre", 2)
    p = random_element(D, 3, 0)
    assert apply_op(D, p) == apply_solid_laguerre_op(p, D.mu)
    B = dom("ball", 2, 0, 1)
    q = random_element(B, 3, 0)
    assert apply_op(B, q) == apply_ball_op(q, 1)
