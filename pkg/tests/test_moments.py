import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from parabern.bases import full_basis, random_element
from parabern.gpoly import GPoly
from parabern.moments import (DomainError, DomainSpec, GammaMismatch, IntegrabilityError, Kind, MomentKey,
                              WeightShift, _t_part, gamma_ratio, inner, moment)

from .conftest import GAMMAS, MUS, dom, grid_domains

H = Fraction(1, 2)


def test_solid_t_moment():
    assert moment(dom("solid-jacobi", 1, 0, H), MomentKey((0,), Fraction(1))) == Fraction(3, 5)


def test_ball_second_moment():
    assert moment(dom("ball", 1, 0, H), MomentKey((2,))) == Fraction(1, 3)
    for mu in MUS:
        assert moment(dom("ball", 1, 0, mu), MomentKey((2,))) == 1 / (2 * (mu + 1))


@pytest.mark.parametrize("D", grid_domains(), ids=lambda d: d.label())
def test_normalization(D):
    assert moment(D, MomentKey((0,) * D.d)) == 1
    one = GPoly.const(D.d)
    assert inner(D, one, one) == 1


def test_inner_examples():
    D = dom("solid-jacobi", 1, 0, H)
    x1 = GPoly.x(1, 0)
    assert inner(D, x1, GPoly.const(1)) == 0
    j10 = GPoly.from_t_coeffs(1, [Fraction(3, 2), Fraction(-5, 2)])
    assert inner(D, j10, GPoly.const(1)) == 0


def test_gamma_ratio():
    assert gamma_ratio(Fraction(7, 2), Fraction(3, 2)) == Fraction(5, 2) * Fraction(3, 2)
    assert gamma_ratio(Fraction(3, 2), Fraction(7, 2)) == 1 / (Fraction(5, 2) * Fraction(3, 2))
    with pytest.raises(GammaMismatch):
        gamma_ratio(Fraction(1, 3), Fraction(1, 2))


def test_integrability_errors():
    with pytest.raises(IntegrabilityError):
        moment(dom("ball", 1), MomentKey((0,), 0, -1))
    with pytest.raises(IntegrabilityError):
        moment(dom("solid-jacobi", 2), MomentKey((0, 0), Fraction(-3)))
    with pytest.raises(IntegrabilityError):
        inner(dom("solid-laguerre", 2), GPoly.const(2), GPoly.const(2), WeightShift(dgamma=1))
    with pytest.raises(IntegrabilityError):
        inner(dom("surface-jacobi", 2), GPoly.const(2), GPoly.const(2), WeightShift(dmu=1))


def test_domain_validation():
    with pytest.raises(DomainError):
        DomainSpec(Kind.SOLID_BOUNDED, 2, Fraction(-1), H)
    with pytest.raises(DomainError):
        DomainSpec(Kind.BALL, 2, 0, Fraction(-1, 2))
    with pytest.raises(DomainError):
        DomainSpec(Kind.SURFACE_BOUNDED, 1)
    assert DomainSpec(Kind.SOLID_UNBOUNDED, 2, Fraction(3), H) == DomainSpec(Kind.SOLID_UNBOUNDED, 2, 0, H)


@pytest.mark.parametrize("g,mu", [(g, mu) for g in GAMMAS for mu in MUS])
def test_factorization_consistency(g, mu):
    rng = random.Random(f"fact|{g}|{mu}")
    for d in (1, 2, 3):
        D = dom("solid-jacobi", d, g, mu)
        ball = dom("ball", d, 0, mu)
        A0 = Fraction(d, 2) + mu - H
        for _ in range(50 // 3 + 1):
            alpha = tuple(2 * rng.randint(0, 2) for _ in range(d))
            j = rng.randint(0, 3)
            want = moment(ball, MomentKey(alpha)) * _t_part(True, A0 + Fraction(sum(alpha), 2) + j, A0, g, g)
            assert moment(D, MomentKey(alpha, Fraction(j))) == want


@pytest.mark.parametrize("D", grid_domains(d_solid=(1, 2), d_surface=(2,)), ids=lambda d: d.label())
def test_symmetry_and_positivity(D):
    for s in range(4):
        f = random_element(D, 3, s)
        g = random_element(D, 3, s + 100)
        assert inner(D, f, g) == inner(D, g, f)
        assert inner(D, f, f) > 0


@pytest.mark.parametrize("kind", [k.value for k in Kind])
def test_gram_diagonal_degree5(kind):
    d = 2 if kind != "ball" else 3
    D = dom(kind, d, H, 1)
    basis = [e for _, e in full_basis(D, 5 if kind != "surface-jacobi" else 4)]
    for i, a in enumerate(basis):
        for b in basis[:i]:
            assert inner(D, a, b) == 0


def test_shift_equals_explicit_factor():
    D = dom("solid-jacobi", 2, H, 1)
    f = random_element(D, 2, 3)
    one_minus_t = GPoly.const(2) - GPoly.t(2)
    t_minus_r2 = GPoly.t(2) - GPoly.radius2(2)
    assert inner(D, f, f, WeightShift(dgamma=1)) == inner(D, f, f * one_minus_t)
    # (t-‖x‖²) factor raises μ by one, up to the ratio of total masses
    lhs = inner(D, f, f * t_minus_r2)
    rhs = inner(D, f, f, WeightShift(dmu=1))
    assert lhs == rhs
