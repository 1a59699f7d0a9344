"""Classical one-variable families in exact arithmetic.

All three are produced by their standard three-term recurrences with the
textbook normalizations P_n^{(a,b)}(1) = C(n+a, n), L_n^a(0) = C(n+a, n)
and the usual Gegenbauer generating-function normalization.  Results are
returned as t-only (or single-variable) :class:`GPoly` values.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .gpoly import GPoly, as_rational, diff


class ParameterError(ValueError):
    """A family parameter lies outside its admissible range."""


def _poly(coeffs: list[Fraction], dim: int = 1) -> GPoly:
    return GPoly.from_t_coeffs(dim, coeffs)


def _ux(coeffs: list[Fraction]) -> GPoly:
    # single variable u stored as x1
    return GPoly(1, {((k,), 0): c for k, c in enumerate(coeffs)})


def _axpy(a: list[Fraction], b: list[Fraction], ca, cb) -> list[Fraction]:
    n = max(len(a), len(b))
    return [ca * (a[k] if k < len(a) else 0) + cb * (b[k] if k < len(b) else 0) for k in range(n)]


def _shift(a: list[Fraction]) -> list[Fraction]:
    return [Fraction(0)] + a


@lru_cache(maxsize=None)
def jacobi_coeffs(n: int, a: Fraction, b: Fraction) -> tuple[Fraction, ...]:
    """Coefficients in u of P_n^{(a,b)}(u)."""
    if n < 0:
        raise ParameterError("degree must be nonnegative")
    p0 = [Fraction(1)]
    if n == 0:
        return tuple(p0)
    p1 = [(a - b) / 2, (a + b + 2) / 2]
    for k in range(2, n + 1):
        # 2k(k+a+b)(2k+a+b-2) P_k = (2k+a+b-1)[(2k+a+b)(2k+a+b-2) u + a²-b²] P_{k-1}
        #                           - 2(k+a-1)(k+b-1)(2k+a+b) P_{k-2}
        s = 2 * k + a + b
        c0 = 2 * k * (k + a + b) * (s - 2)
        lin = (s - 1) * s * (s - 2)
        con = (s - 1) * (a * a - b * b)
        back = 2 * (k + a - 1) * (k + b - 1) * s
        if c0 == 0:
            # a+b = -1 at k=1 cannot happen here; remaining zero is k+a+b = 0
            raise ParameterError("degenerate Jacobi recurrence")
        nxt = _axpy(_shift(p1), p1, lin, con)
        nxt = _axpy(nxt, p0, 1, -back)
        p0, p1 = p1, [c / c0 for c in nxt]
    return tuple(p1)


def jacobi1t(n: int, a, b, dim: int = 1) -> GPoly:
    """P_n^{(a,b)}(1 - 2t) as a polynomial in t."""
    a, b = as_rational(a), as_rational(b)
    if a <= -1 or b <= -1:
        raise ParameterError(f"Jacobi parameters must exceed -1, got a={a}, b={b}")
    cu = jacobi_coeffs(n, a, b)
    # substitute u = 1 - 2t via Horner on coefficient lists
    out: list[Fraction] = [Fraction(0)]
    for c in reversed(cu):
        out = _axpy(out, _shift(out), 1, -2)
        out[0] += c
    return _poly(out, dim)


@lru_cache(maxsize=None)
def laguerre_coeffs(n: int, a: Fraction) -> tuple[Fraction, ...]:
    if n < 0:
        raise ParameterError("degree must be nonnegative")
    p0 = [Fraction(1)]
    if n == 0:
        return tuple(p0)
    p1 = [a + 1, Fraction(-1)]
    for k in range(1, n):
        # (k+1) L_{k+1} = (2k+1+a-t) L_k - (k+a) L_{k-1}
        nxt = _axpy(p1, _shift(p1), 2 * k + 1 + a, -1)
        nxt = _axpy(nxt, p0, 1, -(k + a))
        p0, p1 = p1, [c / (k + 1) for c in nxt]
    return tuple(p1)


def laguerre1(n: int, a, dim: int = 1) -> GPoly:
    """L_n^a(t)."""
    a = as_rational(a)
    if a <= -1:
        raise ParameterError(f"Laguerre parameter must exceed -1, got {a}")
    return _poly(list(laguerre_coeffs(n, a)), dim)


@lru_cache(maxsize=None)
def gegenbauer_coeffs(n: int, lam: Fraction) -> tuple[Fraction, ...]:
    if n < 0:
        raise ParameterError("degree must be nonnegative")
    p0 = [Fraction(1)]
    if n == 0:
        return tuple(p0)
    p1 = [Fraction(0), 2 * lam]
    for k in range(1, n):
        # (k+1) C_{k+1} = 2(k+λ) u C_k - (k+2λ-1) C_{k-1}
        nxt = _axpy(_shift(p1), p0, 2 * (k + lam), -(k + 2 * lam - 1))
        p0, p1 = p1, [c / (k + 1) for c in nxt]
    return tuple(p1)


@lru_cache(maxsize=None)
def chebyshev_t_coeffs(n: int) -> tuple[Fraction, ...]:
    p0, p1 = [Fraction(1)], [Fraction(0), Fraction(1)]
    if n == 0:
        return tuple(p0)
    for _ in range(1, n):
        nxt = _axpy(_shift(p1), p0, 2, -1)
        p0, p1 = p1, nxt
    return tuple(p1)


def gegenbauer1(n: int, lam) -> GPoly:
    """C_n^λ(u), with u stored as the single x-variable."""
    lam = as_rational(lam)
    if lam <= Fraction(-1, 2):
        raise ParameterError(f"Gegenbauer parameter must exceed -1/2, got {lam}")
    if lam == 0 and n >= 1:
        raise ParameterError("Gegenbauer parameter 0 is degenerate for n >= 1")
    return _ux(list(gegenbauer_coeffs(n, lam)))


def gegenbauer_or_chebyshev(n: int, lam) -> tuple[Fraction, ...]:
    """Coefficients of C_n^λ, falling back to Chebyshev T_n at λ = 0.

    T_n is the λ → 0 limit of C_n^λ / λ up to a constant, which is all the
    ball basis needs.
    """
    lam = as_rational(lam)
    if lam == 0 and n >= 1:
        return chebyshev_t_coeffs(n)
    if lam <= Fraction(-1, 2):
        raise ParameterError(f"Gegenbauer parameter must exceed -1/2, got {lam}")
    return gegenbauer_coeffs(n, lam)


# ODE residuals -----------------------------------------------------------------

def _t_mul(p: GPoly, coeffs) -> GPoly:
    return p * GPoly.from_t_coeffs(p.dim, list(coeffs))


def jacobi_ode_residual(n: int, a, b) -> GPoly:
    """t(1-t)y'' + (a+1-(a+b+2)t)y' + n(n+a+b+1)y for y = P_n^{(a,b)}(1-2t)."""
    a, b = as_rational(a), as_rational(b)
    y = jacobi1t(n, a, b)
    y1 = diff(y, "t")
    y2 = diff(y1, "t")
    return _t_mul(y2, [0, 1, -1]) + _t_mul(y1, [a + 1, -(a + b + 2)]) + y.scale(n * (n + a + b + 1))


def laguerre_ode_residual(n: int, a) -> GPoly:
    a = as_rational(a)
    y = laguerre1(n, a)
    y1 = diff(y, "t")
    y2 = diff(y1, "t")
    return _t_mul(y2, [0, 1]) + _t_mul(y1, [a + 1, -1]) + y.scale(n)


def gegenbauer_ode_residual(n: int, lam) -> GPoly:
    lam = as_rational(lam)
    y = gegenbauer1(n, lam)
    u = GPoly.x(1, 0)
    y1 = diff(y, 0)
    y2 = diff(y1, 0)
    return (1 - u * u) * y2 - (2 * lam + 1) * u * y1 + y.scale(n * (n + 2 * lam))
