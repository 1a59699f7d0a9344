"""Closed-form normalized moments for the five weighted domains.

Every weighted integral in the package reduces to a moment

    ∫ x^α ‖x‖^{2s} t^j W'  /  ∫ W

where W is the unshifted weight of the domain and W' the weight with the
integer parameter shifts of a :class:`WeightShift` applied.  The moments
factor into a sphere moment and Beta (or Gamma) ratios whose arguments
differ by integers, so they are evaluated exactly with Γ(z+1) = zΓ(z).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .gpoly import GPoly, add_packed, as_rational, half, unpack_key
from .harmonics import sphere_moment


class Kind(enum.Enum):
    BALL = "ball"
    SOLID_BOUNDED = "solid-jacobi"
    SOLID_UNBOUNDED = "solid-laguerre"
    SURFACE_BOUNDED = "surface-jacobi"
    SURFACE_UNBOUNDED = "surface-laguerre"

    @property
    def is_surface(self) -> bool:
        return self in (Kind.SURFACE_BOUNDED, Kind.SURFACE_UNBOUNDED)

    @property
    def is_solid(self) -> bool:
        return self in (Kind.SOLID_BOUNDED, Kind.SOLID_UNBOUNDED)

    @property
    def bounded(self) -> bool:
        return self in (Kind.SOLID_BOUNDED, Kind.SURFACE_BOUNDED)

    @property
    def has_mu(self) -> bool:
        return self in (Kind.BALL, Kind.SOLID_BOUNDED, Kind.SOLID_UNBOUNDED)

    @property
    def has_t(self) -> bool:
        return self is not Kind.BALL


class DomainError(ValueError):
    """Invalid domain parameters."""


class IntegrabilityError(ValueError):
    """A requested moment diverges."""


class GammaMismatch(ArithmeticError):
    """Gamma arguments whose difference is not an integer."""


@dataclass(frozen=True)
class DomainSpec:
    kind: Kind
    d: int
    gamma: Fraction = Fraction(0)
    mu: Fraction = Fraction(1, 2)

    def __post_init__(self):
        object.__setattr__(self, "gamma", as_rational(self.gamma))
        object.__setattr__(self, "mu", as_rational(self.mu))
        if not isinstance(self.kind, Kind):
            object.__setattr__(self, "kind", Kind(self.kind))
        if self.d < 1:
            raise DomainError("dimension must be at least 1")
        if self.kind.is_surface and self.d < 2:
            raise DomainError("surface domains need d >= 2")
        if self.kind.bounded and self.gamma <= -1:
            raise DomainError(f"gamma must exceed -1, got {self.gamma}")
        if self.kind.has_mu and self.mu <= Fraction(-1, 2):
            raise DomainError(f"mu must exceed -1/2, got {self.mu}")
        # canonicalize unused parameters so equal domains hash equal
        if not self.kind.bounded:
            object.__setattr__(self, "gamma", Fraction(0))
        if not self.kind.has_mu:
            object.__setattr__(self, "mu", Fraction(0))

    def label(self) -> str:
        parts = [self.kind.value, f"d={self.d}"]
        if self.kind.bounded:
            parts.append(f"gamma={self.gamma}")
        if self.kind.has_mu:
            parts.append(f"mu={self.mu}")
        return " ".join(parts)


@dataclass(frozen=True)
class WeightShift:
    """Integer shifts: (1-t)^{dγ}, (t-‖x‖²)^{dμ} (or (1-‖x‖²)^{dμ}), ‖x‖^{2s}."""

    dgamma: int = 0
    dmu: int = 0
    s: int = 0


NO_SHIFT = WeightShift()


@dataclass(frozen=True)
class MomentKey:
    alpha: tuple[int, ...]
    j: Fraction = Fraction(0)
    s: int = 0

    @property
    def j2(self) -> int:
        return half(self.j)


@lru_cache(maxsize=1 << 16)
def gamma_ratio(a: Fraction, b: Fraction) -> Fraction:
    """Γ(a)/Γ(b) for a - b ∈ ℤ, both arguments positive."""
    k = a - b
    if k.denominator != 1:
        raise GammaMismatch(f"Γ({a})/Γ({b}) has non-integer argument difference")
    if a <= 0 or b <= 0:
        raise IntegrabilityError(f"Γ({a})/Γ({b}) outside the positive half-line")
    k = int(k)
    out = Fraction(1)
    if k >= 0:
        for i in range(k):
            out *= b + i
        return out
    for i in range(-k):
        out *= a + i
    return 1 / out


def _ball_part(alpha, s: int, d: int, mu0: Fraction, mu1: Fraction) -> Fraction:
    # ∫_B y^α ‖y‖^{2s} (1-‖y‖²)^{μ1-½} / ∫_B (1-‖y‖²)^{μ0-½}
    rad = Fraction(sum(alpha) + 2 * s + d, 2)
    if rad <= 0:
        raise IntegrabilityError(f"radial exponent |α|+2s+d = {2 * rad} must be positive")
    if mu1 <= Fraction(-1, 2):
        raise IntegrabilityError(f"shifted mu {mu1} must exceed -1/2")
    sig = sphere_moment(tuple(alpha), d)
    if sig == 0:
        return sig
    half_ = Fraction(1, 2)
    return (sig * gamma_ratio(rad, Fraction(d, 2)) * gamma_ratio(mu1 + half_, mu0 + half_)
            * gamma_ratio(Fraction(d, 2) + mu0 + half_, rad + mu1 + half_))


def _t_part(bounded: bool, A1: Fraction, A0: Fraction, g1: Fraction, g0: Fraction) -> Fraction:
    # ∫ t^{A1}(1-t)^{g1} / ∫ t^{A0}(1-t)^{g0} on [0,1], or with e^{-t} on [0,∞)
    if A1 <= -1:
        raise IntegrabilityError(f"t-exponent {A1} must exceed -1")
    r = gamma_ratio(A1 + 1, A0 + 1)
    if bounded:
        if g1 <= -1:
            raise IntegrabilityError(f"shifted gamma {g1} must exceed -1")
        r *= gamma_ratio(g1 + 1, g0 + 1) * gamma_ratio(A0 + g0 + 2, A1 + g1 + 2)
    return r


def check_shift(dom: DomainSpec, shift: WeightShift) -> None:
    if shift.dgamma and not dom.kind.bounded:
        raise IntegrabilityError(f"{dom.kind.value} has no (1-t) factor to shift")
    if shift.dmu and not dom.kind.has_mu:
        raise IntegrabilityError(f"{dom.kind.value} has no mu parameter to shift")


def moment_j2(dom: DomainSpec, alpha: Sequence[int], j2: int, shift: WeightShift = NO_SHIFT) -> Fraction:
    """Normalized moment with t-exponent j2/2; see module docstring."""
    d = dom.d
    if len(alpha) != d:
        raise IntegrabilityError(f"multi-index {tuple(alpha)} does not match d={d}")
    check_shift(dom, shift)
    s = shift.s
    na = sum(alpha)
    if na + 2 * s + d <= 0:
        raise IntegrabilityError(f"|α|+2s+d = {na + 2 * s + d} must be positive")
    kind = dom.kind
    g0 = dom.gamma
    g1 = g0 + shift.dgamma
    mu0 = dom.mu
    mu1 = mu0 + shift.dmu
    j = Fraction(j2, 2)
    if kind is Kind.BALL:
        if j2:
            raise IntegrabilityError("ball moments carry no t-power")
        return _ball_part(alpha, s, d, mu0, mu1)
    if kind.is_solid:
        A1 = Fraction(na, 2) + s + j + Fraction(d, 2) + mu1 - Fraction(1, 2)
        A0 = Fraction(d, 2) + mu0 - Fraction(1, 2)
        # integrability first, then the odd short-circuit
        if A1 <= -1:
            raise IntegrabilityError(f"t-exponent {A1} must exceed -1")
        if mu1 <= Fraction(-1, 2) or (kind.bounded and g1 <= -1):
            raise IntegrabilityError("shifted parameters out of range")
        if any(a & 1 for a in alpha):
            return Fraction(0)
        return _t_part(kind.bounded, A1, A0, g1, g0) * _ball_part(alpha, s, d, mu0, mu1)
    A1 = Fraction(na, 2) + j + s + Fraction(d, 2) - 1
    A0 = Fraction(d, 2) - 1
    if A1 <= -1:
        raise IntegrabilityError(f"t-exponent {A1} must exceed -1")
    if kind.bounded and g1 <= -1:
        raise IntegrabilityError("shifted gamma out of range")
    if any(a & 1 for a in alpha):
        return Fraction(0)
    return _t_part(kind.bounded, A1, A0, g1, g0) * sphere_moment(tuple(alpha), d)


def moment(dom: DomainSpec, key: MomentKey, shift: WeightShift | None = None) -> Fraction:
    """Normalized moment of ``x^α ‖x‖^{2s} t^j``; ``key.s`` adds to ``shift.s``."""
    shift = shift or NO_SHIFT
    sh = WeightShift(shift.dgamma, shift.dmu, shift.s + key.s)
    return moment_j2(dom, key.alpha, key.j2, sh)


@lru_cache(maxsize=1 << 18)
def _packed_moment(dom: DomainSpec, shift: WeightShift, key: int) -> Fraction:
    alpha, j2 = unpack_key(key, dom.d)
    return moment_j2(dom, alpha, j2, shift)


def integrate(dom: DomainSpec, p: GPoly, shift: WeightShift = NO_SHIFT) -> Fraction:
    """Normalized ∫ p ‖x‖^{2s} W' / ∫ W."""
    if p.dim != dom.d:
        raise DomainError("polynomial dimension does not match domain")
    total = Fraction(0)
    for (alpha, j2), c in p.items():
        total += c * moment_j2(dom, alpha, j2, shift)
    return total


def inner_gpoly(dom: DomainSpec, p: GPoly, q: GPoly, shift: WeightShift = NO_SHIFT) -> Fraction:
    """Exact ⟨p, q⟩ with the shifted weight; terms of different parity never meet."""
    if p.dim != dom.d or q.dim != dom.d:
        raise DomainError("polynomial dimension does not match domain")
    if not p or not q:
        return Fraction(0)
    check_shift(dom, shift)
    dp, gp = p.packed
    dq, gq = q.packed
    acc: dict[int, int] = {}
    for par, lp in gp.items():
        lq = gq.get(par)
        if not lq:
            continue
        for kp, cp in lp:
            for kq, cq in lq:
                k = add_packed(kp, kq)
                acc[k] = acc.get(k, 0) + cp * cq
    den = dp * dq
    total = Fraction(0)
    for k, c in acc.items():
        if c:
            total += c * _packed_moment(dom, shift, k)
    return total / den


def inner(dom: DomainSpec, p, q, shift: WeightShift = NO_SHIFT) -> Fraction:
    """⟨p, q⟩ for GPoly or SurfaceFun arguments."""
    from .surface import SurfaceFun, surface_inner

    if isinstance(p, SurfaceFun) or isinstance(q, SurfaceFun):
        if not dom.kind.is_surface:
            raise DomainError("surface functions need a surface domain")
        return surface_inner(dom, p, q, shift)
    return inner_gpoly(dom, p, q, shift)


def norm2(dom: DomainSpec, p, shift: WeightShift = NO_SHIFT) -> Fraction:
    return inner(dom, p, p, shift)


def moment_cache_info():
    return _packed_moment.cache_info()
