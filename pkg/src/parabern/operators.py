"""Differential operators of the five families, their eigenvalues and identities.

Solid operators act on :class:`GPoly` in (x, t); surface operators act on
:class:`SurfaceFun`.  The operator of each family is built from gpoly
primitives; the self-adjoint ℜ-parts are built independently from the
weighted-divergence form so that decompositions can be checked exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .bases import BasisId, basis_element
from .gpoly import (GPoly, GPolyError, angular_diff, angular_pairs, diff, euler_x, from_ball_coords,
                    laplacian_x, mul_tpow, to_ball_coords)
from .moments import DomainSpec, Kind, WeightShift, _t_part, inner, moment_j2
from .surface import SurfaceFun, angular, ddt, laplace_beltrami, laplace_beltrami_eigen

Element = Union[GPoly, SurfaceFun]
HALF = Fraction(1, 2)


class EigenKind(enum.Enum):
    BALL_SPECTRAL = "BallSpectral"
    SOLID_JACOBI = "SolidJacobi"
    SOLID_LAGUERRE = "SolidLaguerre"
    SURFACE_JACOBI = "SurfaceJacobi"
    SURFACE_LAGUERRE = "SurfaceLaguerre"


EIGEN_OF_KIND = {
    Kind.BALL: EigenKind.BALL_SPECTRAL,
    Kind.SOLID_BOUNDED: EigenKind.SOLID_JACOBI,
    Kind.SOLID_UNBOUNDED: EigenKind.SOLID_LAGUERRE,
    Kind.SURFACE_BOUNDED: EigenKind.SURFACE_JACOBI,
    Kind.SURFACE_UNBOUNDED: EigenKind.SURFACE_LAGUERRE,
}


@dataclass(frozen=True)
class EigenFormula:
    kind: EigenKind
    d: int
    gamma: Fraction = Fraction(0)
    mu: Fraction = Fraction(0)
    literal: bool = False  # ball only: uncorrected n(n+2μ+d)

    @classmethod
    def of(cls, dom: DomainSpec, literal: bool = False) -> "EigenFormula":
        return cls(EIGEN_OF_KIND[dom.kind], dom.d, dom.gamma, dom.mu, literal)


def eigenvalue(formula: EigenFormula, n: int, m: int = 0) -> Fraction:
    """λ for degree n and secondary degree m (ignored for the ball)."""
    if not 0 <= m <= n and formula.kind is not EigenKind.BALL_SPECTRAL:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    d, g, mu = formula.d, formula.gamma, formula.mu
    k = formula.kind
    if k is EigenKind.BALL_SPECTRAL:
        return n * (n + 2 * mu + d - (0 if formula.literal else 1))
    if k is EigenKind.SOLID_JACOBI:
        return n * (n + mu + g + Fraction(d + 1, 2)) - m * (n + mu + (g + d) / 2)
    if k is EigenKind.SURFACE_JACOBI:
        return n * (n + g + Fraction(d, 2)) - m * (n + (g + d - 1) / 2)
    return n - Fraction(m, 2)


def ball_eigenvalue(d: int, mu, n: int, literal: bool = False) -> Fraction:
    return eigenvalue(EigenFormula(EigenKind.BALL_SPECTRAL, d, mu=Fraction(mu), literal=literal), n)


# helpers -------------------------------------------------------------------------

def tpoly(dim: int, coeffs: dict[int, Fraction]) -> GPoly:
    """t-only polynomial ``Σ c t^{k}`` from integer powers."""
    z = (0,) * dim
    return GPoly(dim, {(z, 2 * k): c for k, c in coeffs.items()})


def one_minus_t(dim: int) -> GPoly:
    return tpoly(dim, {0: 1, 1: -1})


def E(p: GPoly) -> GPoly:
    """∂_t + (2t)^{-1}⟨x,∇⟩, the derivative along t ↦ (√t y, t)."""
    return diff(p, "t") + mul_tpow(euler_x(p), -1).scale(HALF)


# ball ------------------------------------------------------------------------------

def apply_ball_op(p: GPoly, mu) -> GPoly:
    """Δ - ⟨x,∇⟩² - (2μ+d-1)⟨x,∇⟩ acting on x (t, if present, is a parameter)."""
    mu = Fraction(mu)
    r = euler_x(p)
    return laplacian_x(p) - euler_x(r) - r.scale(2 * mu + p.dim - 1)


def ball_op_in_y(p: GPoly, mu) -> GPoly:
    """𝔇_B acting on y = x/√t, returned in (x, t)."""
    return from_ball_coords(apply_ball_op(to_ball_coords(p), mu))


def ball_op_divergence(p: GPoly, mu) -> GPoly:
    """W^{-1}Σ∂_i(W^{μ+1}∂_i) + Σ D_{i,j}², the first decomposition, expanded."""
    mu = Fraction(mu)
    d = p.dim
    r2 = GPoly.radius2(d)
    out = GPoly.zero(d)
    for i in range(d):
        di = diff(p, i)
        # ∂_i((1-r²)^{μ+½}∂_i p)/(1-r²)^{μ-½} = (1-r²)∂_ii p - (2μ+1)x_i ∂_i p
        out = out + (1 - r2) * diff(di, i) - GPoly.x(d, i) * di * (2 * mu + 1)
    for i, j in angular_pairs(d):
        out = out + angular_diff(angular_diff(p, i, j), i, j)
    return out


# solid operators -----------------------------------------------------------------

def apply_solid_jacobi_op(p: GPoly, gamma, mu) -> GPoly:
    """t(1-t)∂tt + (1-t)⟨x,∇⟩∂t + ¼(1-t)Δ + (μ+(d+1)/2)(1-t)∂t - ((γ+1)/2)(2t∂t + ⟨x,∇⟩)."""
    gamma, mu = Fraction(gamma), Fraction(mu)
    d = p.dim
    omt = one_minus_t(d)
    pt = diff(p, "t")
    ptt = diff(pt, "t")
    out = omt * (mul_tpow(ptt, 1) + euler_x(pt) + laplacian_x(p).scale(Fraction(1, 4))
                 + pt.scale(mu + Fraction(d + 1, 2)))
    out = out - (mul_tpow(pt, 1).scale(2) + euler_x(p)).scale((gamma + 1) / 2)
    return out


def apply_solid_laguerre_op(p: GPoly, mu, literal: bool = False) -> GPoly:
    """t∂tt + ⟨x,∇⟩∂t + ¼Δ + (μ+(d+1)/2 - t)∂t - ½⟨x,∇⟩.

    ``literal`` drops the (μ+(d+1)/2 - t)∂t term.
    """
    mu = Fraction(mu)
    d = p.dim
    pt = diff(p, "t")
    out = mul_tpow(diff(pt, "t"), 1) + euler_x(pt) + laplacian_x(p).scale(Fraction(1, 4)) - euler_x(p).scale(HALF)
    if not literal:
        out = out + pt.scale(mu + Fraction(d + 1, 2)) - mul_tpow(pt, 1)
    return out


# surface operators -----------------------------------------------------------------

def _radial_surface(g: GPoly, dom: DomainSpec) -> GPoly:
    d = dom.d
    g1 = diff(g, "t")
    g2 = diff(g1, "t")
    if dom.kind is Kind.SURFACE_BOUNDED:
        return (tpoly(1, {1: 1, 2: -1}) * g2
                + tpoly(1, {0: Fraction(d, 2), 1: -(dom.gamma + Fraction(d, 2) + 1)}) * g1)
    return mul_tpow(g2, 1) + tpoly(1, {0: Fraction(d, 2), 1: -1}) * g1


def _surface_angular_factor(dom: DomainSpec) -> GPoly:
    # (1-t)/(4t) bounded, 1/(4t) unbounded; as a dimension-1 t-polynomial
    if dom.kind is Kind.SURFACE_BOUNDED:
        return GPoly(1, {((0,), -2): Fraction(1, 4), ((0,), 0): Fraction(-1, 4)})
    return GPoly(1, {((0,), -2): Fraction(1, 4)})


def apply_surface_op(f: SurfaceFun, dom: DomainSpec, angular_route: str = "eigen") -> SurfaceFun:
    """Radial second-order part plus (1-t)/(4t)Δ₀ (or 1/(4t)Δ₀).

    ``angular_route`` picks Δ₀Y = -m(m+d-2)Y ("eigen") or Σ D_{i,j}² ("dij").
    """
    if not dom.kind.is_surface:
        raise ValueError("apply_surface_op needs a surface domain")
    lb = laplace_beltrami_eigen(f) if angular_route == "eigen" else laplace_beltrami(f)
    return f.map_radial(lambda g, m: _radial_surface(g, dom)) + lb.times_t(_surface_angular_factor(dom))


def apply_op(dom: DomainSpec, f: Element, literal: bool = False) -> Element:
    """The family's operator on ``f``; ``literal`` only affects solid Laguerre."""
    k = dom.kind
    if k is Kind.BALL:
        return apply_ball_op(f, dom.mu)
    if k is Kind.SOLID_BOUNDED:
        return apply_solid_jacobi_op(f, dom.gamma, dom.mu)
    if k is Kind.SOLID_UNBOUNDED:
        return apply_solid_laguerre_op(f, dom.mu, literal)
    return apply_surface_op(f, dom)


# weighted-divergence (ℜ) parts ------------------------------------------------------

@dataclass(frozen=True)
class DivergenceForm:
    """ℜ = W_out^{-1} ∂ (W_in ∂) with W_in/W_out = t^p (1-t)^q.

    W_in = t^a (1-t)^b (t-‖x‖²)^c e^{-e t}; the log-derivatives of the four
    factors along ∂ are a/t, -b/(1-t), c/t and -e.
    """

    p: int
    q: int
    a: Fraction
    b: Fraction
    c: Fraction
    e: int

    def multipliers(self) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
        """(P, Q) as {t-power: coefficient} with ℜ = P ∂² + Q ∂."""
        def tp(pw: int, qw: int, scale) -> dict[int, Fraction]:
            if pw < 0 or qw < 0:
                raise GPolyError("weight ratio cannot absorb the log-derivative")
            out: dict[int, Fraction] = {}
            # t^pw (1-t)^qw expanded
            from math import comb
            for i in range(qw + 1):
                out[pw + i] = out.get(pw + i, 0) + Fraction(scale) * comb(qw, i) * (-1) ** i
            return out

        def add(acc, more):
            for k, v in more.items():
                acc[k] = acc.get(k, 0) + v

        P = tp(self.p, self.q, 1)
        Q: dict[int, Fraction] = {}
        if self.a + self.c:
            add(Q, tp(self.p - 1, self.q, self.a + self.c))
        if self.b:
            add(Q, tp(self.p, self.q - 1, -self.b))
        if self.e:
            add(Q, tp(self.p, self.q, -self.e))
        return P, Q


def divergence_form(dom: DomainSpec) -> DivergenceForm:
    d = dom.d
    k = dom.kind
    if k is Kind.SOLID_BOUNDED:
        return DivergenceForm(1, 1, Fraction(d, 2) + 1, dom.gamma + 1, dom.mu - HALF, 0)
    if k is Kind.SOLID_UNBOUNDED:
        return DivergenceForm(1, 0, Fraction(d, 2) + 1, Fraction(0), dom.mu - HALF, 1)
    if k is Kind.SURFACE_BOUNDED:
        return DivergenceForm(1, 1, Fraction(d, 2), dom.gamma + 1, Fraction(0), 0)
    if k is Kind.SURFACE_UNBOUNDED:
        return DivergenceForm(1, 0, Fraction(d, 2), Fraction(0), Fraction(0), 1)
    raise ValueError("the ball has no parabolic divergence part")


def apply_R(dom: DomainSpec, f: Element) -> Element:
    """The ℜ-part of the family: P·∂(∂f) + Q·∂f with ∂ = E (solids) or d/dt (surfaces)."""
    P, Q = divergence_form(dom).multipliers()
    if dom.kind.is_solid:
        d = dom.d
        ef = E(f)
        return tpoly(d, P) * E(ef) + tpoly(d, Q) * ef
    ef = ddt(f)
    return ddt(ef).times_t(tpoly(1, P)) + ef.times_t(tpoly(1, Q))


def ball_part(dom: DomainSpec, f: Element, angular_route: str = "dij") -> Element:
    """The complementary part: (1-t)/(4t)𝔇_B^{(y)} or (1-t)/(4t)Δ₀ (1/(4t) unbounded)."""
    k = dom.kind
    if k.is_solid:
        d = dom.d
        fac = mul_tpow(one_minus_t(d) if k.bounded else GPoly.const(d), -1).scale(Fraction(1, 4))
        return fac * ball_op_in_y(f, dom.mu)
    lb = laplace_beltrami(f) if angular_route == "dij" else laplace_beltrami_eigen(f)
    return lb.times_t(_surface_angular_factor(dom))


def decomposition_residual(dom: DomainSpec, f: Element) -> Element:
    """𝔇f - (ℜf + ball part f); zero exactly when the decomposition holds."""
    direct = apply_op(dom, f)
    return direct - (apply_R(dom, f) + ball_part(dom, f))


# eigen residuals ----------------------------------------------------------------------

@dataclass
class EigenResidual:
    bid: BasisId
    eigenvalue: Fraction
    residual: Element
    is_zero: bool
    polynomial: bool


def eigen_residual(bid: BasisId, literal: bool = False, element: Element | None = None) -> EigenResidual:
    """apply_op(basis(bid)) + λ·basis(bid); ``literal`` uses the uncorrected operator and eigenvalue."""
    dom = bid.dom
    u = basis_element(bid) if element is None else element
    lam = eigenvalue(EigenFormula.of(dom, literal=literal), bid.n, bid.m)
    res = apply_op(dom, u, literal=literal) + u.scale(lam)
    if isinstance(res, GPoly):
        poly_ok = res.is_polynomial()
    else:
        poly_ok = all(((j2 - m) % 2 == 0 and j2 >= m) for (m, _), g in res.parts.items() for (_, j2) in g._terms)
    return EigenResidual(bid, lam, res, res.is_zero(), poly_ok)


# integral identities -------------------------------------------------------------------

def _one_minus_t_shift(dom: DomainSpec):
    # (1-t) weight absorbed by a γ shift on bounded kinds
    return WeightShift(dgamma=1) if dom.kind.bounded else WeightShift()


def selfadjoint_gap(dom: DomainSpec, f: Element, g: Element, literal: bool = False) -> Fraction:
    """⟨𝔇f, g⟩ - ⟨f, 𝔇g⟩."""
    return inner(dom, apply_op(dom, f, literal), g) - inner(dom, f, apply_op(dom, g, literal))


def integral_R_identity(dom: DomainSpec, f: Element, g: Element) -> tuple[Fraction, Fraction]:
    """(-⟨ℜf, g⟩, ∫ P ∂f ∂g W) for the four parabolic families."""
    lhs = -inner(dom, apply_R(dom, f), g)
    sh = _one_minus_t_shift(dom)
    if dom.kind.is_solid:
        rhs = inner(dom, E(f), mul_tpow(E(g), 1), sh)
    else:
        rhs = inner(dom, ddt(f), ddt(g).times_t(tpoly(1, {1: 1})), sh)
    return lhs, rhs


def integral_surface_identity(dom: DomainSpec, f: SurfaceFun, g: SurfaceFun) -> tuple[Fraction, Fraction]:
    """(-⟨𝔇f, g⟩, radial term + ¼Σ angular terms) on a parabolic surface."""
    lhs = -inner(dom, apply_surface_op(f, dom), g)
    sh = _one_minus_t_shift(dom)
    rhs = inner(dom, ddt(f), ddt(g).times_t(tpoly(1, {1: 1})), sh)
    tinv = GPoly(1, {((0,), -2): Fraction(1)})
    for i, j in angular_pairs(dom.d):
        rhs += inner(dom, angular(f, i, j), angular(g, i, j).times_t(tinv), sh) / 4
    return lhs, rhs


def _y_route_integral(dom: DomainSpec, h: GPoly) -> Fraction:
    """Normalized ∫ h W over the paraboloid computed in (y, t) coordinates.

    With x = √t y the weight becomes W_B^μ(y) t^{d/2+μ-½} times the t-factor,
    so the integral splits into ball moments and 1-D t-moments.
    """
    d = dom.d
    ball = DomainSpec(Kind.BALL, d, mu=dom.mu)
    A0 = Fraction(d, 2) + dom.mu - HALF
    total = Fraction(0)
    for (alpha, j2), c in to_ball_coords(h).items():
        bm = moment_j2(ball, alpha, 0)
        if bm:
            total += c * bm * _t_part(dom.kind.bounded, A0 + Fraction(j2, 2), A0, dom.gamma, dom.gamma)
    return total


def integral_ball_identity(dom: DomainSpec, f: GPoly, g: GPoly) -> dict[str, Fraction]:
    """Three evaluations of -∫ (1-t)/(4t) 𝔇_B^{(y)}f · g W on a paraboloid.

    ``direct``: through the (x, t) moment engine; ``y_route``: in (y, t)
    coordinates; ``gradient``/``radial`` the two Bernstein-form expansions.
    """
    bp = ball_part(dom, f)
    out = {
        "direct": -inner(dom, bp, g),
        "y_route": -_y_route_integral(dom, bp * g),
    }
    d = dom.d
    sg = 1 if dom.kind.bounded else 0
    q = Fraction(1, 4)
    grad = sum((inner(dom, diff(f, i), mul_tpow(diff(g, i), -1), WeightShift(sg, 1)) for i in range(d)), Fraction(0))
    ang = sum((inner(dom, angular_diff(f, i, j), mul_tpow(angular_diff(g, i, j), -1), WeightShift(sg, 0))
               for i, j in angular_pairs(d)), Fraction(0))
    out["gradient"] = q * (grad + ang)
    if d >= 2:
        rad = inner(dom, euler_x(f), mul_tpow(euler_x(g), -1), WeightShift(sg, 1, -1))
        ang2 = sum((inner(dom, angular_diff(f, i, j), angular_diff(g, i, j), WeightShift(sg, 0, -1))
                    for i, j in angular_pairs(d)), Fraction(0))
        out["radial"] = q * (rad + ang2)
    return out


def ball_integral_forms(d: int, mu, f: GPoly, g: GPoly) -> dict[str, Fraction]:
    """-∫𝔇_B f g W_B and its two Bernstein-form expansions on the ball."""
    dom = DomainSpec(Kind.BALL, d, mu=mu)
    out = {"direct": -inner(dom, apply_ball_op(f, mu), g)}
    grad = sum((inner(dom, diff(f, i), diff(g, i), WeightShift(0, 1)) for i in range(d)), Fraction(0))
    ang = sum((inner(dom, angular_diff(f, i, j), angular_diff(g, i, j)) for i, j in angular_pairs(d)), Fraction(0))
    out["gradient"] = grad + ang
    if d >= 2:
        rad = inner(dom, euler_x(f), euler_x(g), WeightShift(0, 1, -1))
        ang2 = sum((inner(dom, angular_diff(f, i, j), angular_diff(g, i, j), WeightShift(0, 0, -1))
                    for i, j in angular_pairs(d)), Fraction(0))
        out["radial"] = rad + ang2
    return out

