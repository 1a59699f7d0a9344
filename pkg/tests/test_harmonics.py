from fractions import Fraction

import pytest

from parabern.gpoly import GPoly, angular_diff, angular_pairs, euler_x, laplacian_x
from parabern.harmonics import harmonic_basis, harmonic_dim, sphere_inner, sphere_moment

X1, X2 = GPoly.x(2, 0), GPoly.x(2, 1)


def test_degree_one_plane():
    assert list(harmonic_basis(2, 1).elements) == [X1, X2]


def test_degree_two_plane():
    hb = harmonic_basis(2, 2)
    assert len(hb) == 2
    assert list(hb.elements) == [X1 * X1 - X2 * X2, X1 * X2]


def test_dimension_three_space():
    assert len(harmonic_basis(3, 2)) == 5 == harmonic_dim(3, 2)


def test_sphere_moments():
    assert sphere_moment((2, 0), 2) == Fraction(1, 2)
    assert sphere_moment((2, 0, 0), 3) == Fraction(1, 3)
    assert sphere_moment((2, 2, 0), 3) == Fraction(1, 15)
    assert sphere_moment((1, 2, 0), 3) == 0
    assert sphere_moment((0, 0, 0, 0), 4) == 1


def test_sphere_inner_examples():
    assert sphere_inner(X1, X2, 2) == 0
    assert sphere_inner(X1, X1, 2) == Fraction(1, 2)
    assert sphere_inner(X1 * X1 - X2 * X2, X1 * X2, 2) == 0


@pytest.mark.parametrize("d", [2, 3, 4])
def test_basis_invariants(d):
    for m in range(7 if d < 4 else 5):
        hb = harmonic_basis(d, m)
        assert len(hb) == harmonic_dim(d, m)
        for i, y in enumerate(hb.elements):
            assert laplacian_x(y).is_zero()
            assert euler_x(y) == y.scale(m)
            assert hb.norms2[i] == sphere_inner(y, y, d) > 0
            for z in hb.elements[:i]:
                assert sphere_inner(y, z, d) == 0


@pytest.mark.parametrize("d", [2, 3])
def test_cross_degree_orthogonality(d):
    for m in range(7):
        for k in range(m):
            for y in harmonic_basis(d, m).elements:
                for z in harmonic_basis(d, k).elements:
                    assert sphere_inner(y, z, d) == 0


@pytest.mark.parametrize("d", [2, 3, 4])
def test_angular_eigen_identity(d):
    for m in range(6 if d < 4 else 4):
        for y in harmonic_basis(d, m).elements:
            total = sum(sphere_inner(angular_diff(y, i, j), angular_diff(y, i, j), d) for i, j in angular_pairs(d))
            assert total == m * (m + d - 2) * sphere_inner(y, y, d)
            for i, j in angular_pairs(d):
                img = angular_diff(y, i, j)
                assert laplacian_x(img).is_zero()
                assert img.is_zero() or euler_x(img) == img.scale(m)


def test_plane_matches_complex_powers():
    # Re/Im of (x1 + i x2)^m span ℋ_m^2
    for m in range(1, 7):
        re, im = GPoly.zero(2), GPoly.zero(2)
        from math import comb
        for k in range(m + 1):
            term = GPoly.monomial((m - k, k), 0, comb(m, k))
            if k % 4 == 0:
                re = re + term
            elif k % 4 == 1:
                im = im + term
            elif k % 4 == 2:
                re = re - term
            else:
                im = im - term
        hb = harmonic_basis(2, m)
        for target in (re, im):
            resid = target
            for y, n2 in zip(hb.elements, hb.norms2):
                resid = resid - y.scale(sphere_inner(target, y, 2) / n2)
            assert resid.is_zero()
