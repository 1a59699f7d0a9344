"""Bernstein functionals: exact terms, certificates, extremals and Rayleigh maxima.

Every theorem is a list of :class:`Component` pieces.  A component is the
bilinear form ``coef · Σ_op ⟨op f, t^e · op g⟩`` under a weight shift, so the
same table drives exact certification (g = f) and the Gram-matrix assembly
used by :func:`rayleigh_max`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence, Union

import numpy as np

from .bases import (basis_element, basis_ids, compositions, random_element, solid_jacobi_basis,
                    solid_laguerre_basis, surface_basis, ball_basis)
from .classical1d import jacobi1t
from .gpoly import GPoly, angular_diff, angular_pairs, diff, euler_x, mul_tpow, subs_t_by_radius2, to_text
from .harmonics import harmonic_basis, harmonic_dim, laplace_beltrami_eigenvalue
from .linalg import LinalgError, jacobi_eigh, reduce_generalized
from .moments import DomainSpec, IntegrabilityError, Kind, WeightShift, inner
from .operators import E, EigenFormula, ball_eigenvalue, eigenvalue
from .surface import SurfaceFun, angular, ddt, from_gpoly

Element = Union[GPoly, SurfaceFun]
Q = Fraction(1, 4)


class TheoremId(enum.Enum):
    Ball22 = "Ball22"
    Ball22EvenOdd = "Ball22EvenOdd"
    Ball23 = "Ball23"
    Ball23EvenOdd = "Ball23EvenOdd"
    SolidJ34 = "SolidJ34"
    SolidJ35 = "SolidJ35"
    SolidJ_T1only = "SolidJ_T1only"
    SolidJ_gradOnly = "SolidJ_gradOnly"
    SolidL39 = "SolidL39"
    SolidL310 = "SolidL310"
    SolidL_T1only = "SolidL_T1only"
    SurfJ45 = "SurfJ45"
    SurfJ_T1only = "SurfJ_T1only"
    SurfL48 = "SurfL48"
    SurfL_T1only = "SurfL_T1only"


class Verdict(enum.Enum):
    STRICTLY_BELOW = "StrictlyBelow"
    EQUALITY = "Equality"
    VIOLATION = "VIOLATION"


class BernsteinError(ValueError):
    pass


# term builders -------------------------------------------------------------------

@dataclass(frozen=True)
class Component:
    name: str
    ops: str          # "E", "grad", "euler", "ang", "ddt"
    tpow: int         # extra t-power on the second factor
    shift: WeightShift
    coef: Fraction = Fraction(1)


def _ops(name: str, d: int, surface: bool) -> list[Callable[[Element], Element]]:
    if name == "E":
        return [E]
    if name == "grad":
        return [lambda f, i=i: diff(f, i) for i in range(d)]
    if name == "euler":
        return [euler_x]
    if name == "ddt":
        return [ddt]
    if name == "ang":
        fn = angular if surface else angular_diff
        return [lambda f, i=i, j=j: fn(f, i, j) for i, j in angular_pairs(d)]
    raise KeyError(name)


def _times_tpow(g: Element, e: int) -> Element:
    if not e:
        return g
    if isinstance(g, SurfaceFun):
        return g.times_t(GPoly(1, {((0,), 2 * e): Fraction(1)}))
    return mul_tpow(g, e)


@dataclass(frozen=True)
class TheoremSpec:
    kinds: tuple[Kind, ...]
    components: tuple[Component, ...]
    min_d: int = 1
    sharp: bool = True  # rayleigh supremum equals the bound
    description: str = ""


def _solid_terms(bounded: bool, variant: str) -> tuple[Component, ...]:
    g = 1 if bounded else 0
    t1 = Component("radial-t", "E", 1, WeightShift(g, 0, 0))
    grad = Component("gradient", "grad", -1, WeightShift(g, 1, 0), Q)
    ang = Component("angular", "ang", -1, WeightShift(g, 0, 0), Q)
    rad = Component("radial-x", "euler", -1, WeightShift(g, 1, -1), Q)
    ang2 = Component("angular-x", "ang", 0, WeightShift(g, 0, -1), Q)
    return {
        "grad": (t1, grad, ang),
        "radial": (t1, rad, ang2),
        "t1": (t1,),
        "gradonly": (grad,),
    }[variant]


def _surface_terms(bounded: bool, variant: str) -> tuple[Component, ...]:
    g = 1 if bounded else 0
    t1 = Component("radial-t", "ddt", 1, WeightShift(g, 0, 0))
    ang = Component("angular", "ang", -1, WeightShift(g, 0, 0), Q)
    return (t1, ang) if variant == "full" else (t1,)


_BALL_GRAD = Component("gradient", "grad", 0, WeightShift(0, 1, 0))
_BALL_ANG = Component("angular", "ang", 0, WeightShift(0, 0, 0))
_BALL_RAD = Component("radial", "euler", 0, WeightShift(0, 1, -1))
_BALL_ANG2 = Component("angular-x", "ang", 0, WeightShift(0, 0, -1))

SB, SU = Kind.SOLID_BOUNDED, Kind.SOLID_UNBOUNDED
FB, FU = Kind.SURFACE_BOUNDED, Kind.SURFACE_UNBOUNDED

THEOREMS: dict[TheoremId, TheoremSpec] = {
    TheoremId.Ball22: TheoremSpec((Kind.BALL,), (_BALL_GRAD, _BALL_ANG), 2,
                                  description="ball: weighted gradient plus angular derivatives"),
    TheoremId.Ball22EvenOdd: TheoremSpec((Kind.BALL,), (_BALL_GRAD,), 2,
                                         description="ball: weighted gradient only, parity-dependent bound"),
    TheoremId.Ball23: TheoremSpec((Kind.BALL,), (_BALL_RAD, _BALL_ANG2), 2,
                                  description="ball: radial derivative plus angular derivatives over |x|"),
    TheoremId.Ball23EvenOdd: TheoremSpec((Kind.BALL,), (_BALL_RAD,), 2, sharp=False,
                                         description="ball: radial derivative only, parity-dependent bound"),
    TheoremId.SolidJ34: TheoremSpec((SB,), _solid_terms(True, "grad"),
                                    description="bounded paraboloid, gradient form"),
    TheoremId.SolidJ35: TheoremSpec((SB,), _solid_terms(True, "radial"),
                                    description="bounded paraboloid, radial form"),
    TheoremId.SolidJ_T1only: TheoremSpec((SB,), _solid_terms(True, "t1"),
                                         description="bounded paraboloid, first term only"),
    TheoremId.SolidJ_gradOnly: TheoremSpec((SB,), _solid_terms(True, "gradonly"), sharp=False,
                                           description="bounded paraboloid, gradient term only (sharpness open)"),
    TheoremId.SolidL39: TheoremSpec((SU,), _solid_terms(False, "grad"),
                                    description="unbounded paraboloid, gradient form"),
    TheoremId.SolidL310: TheoremSpec((SU,), _solid_terms(False, "radial"),
                                     description="unbounded paraboloid, radial form"),
    TheoremId.SolidL_T1only: TheoremSpec((SU,), _solid_terms(False, "t1"),
                                         description="unbounded paraboloid, first term only"),
    TheoremId.SurfJ45: TheoremSpec((FB,), _surface_terms(True, "full"), 2,
                                   description="bounded parabolic surface"),
    TheoremId.SurfJ_T1only: TheoremSpec((FB,), _surface_terms(True, "t1"), 2,
                                        description="bounded parabolic surface, first term only"),
    TheoremId.SurfL48: TheoremSpec((FU,), _surface_terms(False, "full"), 2,
                                   description="unbounded parabolic surface"),
    TheoremId.SurfL_T1only: TheoremSpec((FU,), _surface_terms(False, "t1"), 2,
                                        description="unbounded parabolic surface, first term only"),
}


def theorem_id(name: str | TheoremId) -> TheoremId:
    if isinstance(name, TheoremId):
        return name
    try:
        return TheoremId(name)
    except ValueError:
        raise BernsteinError(f"unknown theorem id {name!r}") from None


def check_domain(th: TheoremId, dom: DomainSpec) -> TheoremSpec:
    spec = THEOREMS[th]
    if dom.kind not in spec.kinds:
        raise BernsteinError(f"{th.value} is stated on {spec.kinds[0].value}, not {dom.kind.value}")
    if dom.d < spec.min_d:
        raise IntegrabilityError(f"{th.value} needs d >= {spec.min_d}")
    return spec


def bound(th: TheoremId, dom: DomainSpec, n: int, literal: bool = False) -> Fraction:
    """The constant on the right-hand side; ``literal`` gives the uncorrected ball values."""
    check_domain(th, dom)
    d, g, mu = dom.d, dom.gamma, dom.mu
    if dom.kind is Kind.BALL:
        lam = ball_eigenvalue(d, mu, n, literal)
        if th in (TheoremId.Ball22EvenOdd, TheoremId.Ball23EvenOdd) and n % 2:
            lam -= d - 1
        return lam
    if dom.kind is SB:
        return n * (n + g + mu + Fraction(d + 1, 2))
    if dom.kind is FB:
        return n * (n + g + Fraction(d, 2))
    return Fraction(n)


def component_value(dom: DomainSpec, comp: Component, f: Element, g: Element | None = None) -> Fraction:
    g = f if g is None else g
    surface = isinstance(f, SurfaceFun)
    total = Fraction(0)
    for op in _ops(comp.ops, dom.d, surface):
        a = op(f)
        b = a if g is f else op(g)
        if not a or not b:
            continue
        total += inner(dom, a, _times_tpow(b, comp.tpow), comp.shift)
    return comp.coef * total


def _coerce(dom: DomainSpec, f: Element) -> Element:
    if dom.kind.is_surface and isinstance(f, GPoly):
        return from_gpoly(f)
    if not dom.kind.is_surface and isinstance(f, SurfaceFun):
        raise BernsteinError("surface function given for a solid domain")
    return f


def element_degree(dom: DomainSpec, f: Element) -> int:
    if isinstance(f, SurfaceFun):
        deg = f.degree()
    else:
        deg = f.degree()
    return int(math.ceil(deg)) if deg >= 0 else 0


def functional_terms(th: TheoremId | str, f: Element, dom: DomainSpec, n: int | None = None) -> list[tuple[str, Fraction]]:
    th = theorem_id(th)
    spec = check_domain(th, dom)
    f = _coerce(dom, f)
    if n is not None and element_degree(dom, f) > n:
        raise BernsteinError(f"element has degree {element_degree(dom, f)} > n = {n}")
    return [(c.name, component_value(dom, c, f)) for c in spec.components]


def bilinear(th: TheoremId, dom: DomainSpec, f: Element, g: Element) -> Fraction:
    spec = check_domain(th, dom)
    return sum((component_value(dom, c, f, g) for c in spec.components), Fraction(0))


@dataclass
class Certificate:
    theorem: TheoremId
    dom: DomainSpec
    n: int
    terms: list[tuple[str, Fraction]]
    lhs: Fraction
    rhs: Fraction
    constant: Fraction
    norm2: Fraction
    verdict: Verdict
    subject: str
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem.value,
            "domain": self.dom.label(),
            "n": self.n,
            "terms": {k: str(v) for k, v in self.terms},
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "constant": str(self.constant),
            "norm2": str(self.norm2),
            "ratio": repr(float(self.lhs / self.norm2)) if self.norm2 else "0.0",
            "verdict": self.verdict.value,
            "subject": self.subject,
            **({"note": self.note} if self.note else {}),
        }


def _verdict(lhs: Fraction, rhs: Fraction) -> Verdict:
    if lhs < rhs:
        return Verdict.STRICTLY_BELOW
    if lhs == rhs:
        return Verdict.EQUALITY
    return Verdict.VIOLATION


def _subject(f: Element) -> str:
    return f.to_text() if isinstance(f, SurfaceFun) else to_text(f)


def certify(th: TheoremId | str, f: Element, dom: DomainSpec, n: int, literal: bool = False) -> Certificate:
    """Exact three-way comparison of Σ terms against bound(th, n)·‖f‖²."""
    th = theorem_id(th)
    f = _coerce(dom, f)
    terms = functional_terms(th, f, dom, n)
    lhs = sum((v for _, v in terms), Fraction(0))
    c = bound(th, dom, n, literal)
    nrm = inner(dom, f, f)
    rhs = c * nrm
    return Certificate(th, dom, n, terms, lhs, rhs, c, nrm, _verdict(lhs, rhs), _subject(f))


def certify_random(th: TheoremId | str, dom: DomainSpec, n: int, seeds: Sequence[int],
                   literal: bool = False) -> list[Certificate]:
    return [certify(th, random_element(dom, n, s), dom, n, literal) for s in seeds]


# extremals ----------------------------------------------------------------------------

def _radial_ball(d: int, p: GPoly) -> GPoly:
    # a t-only 1-D polynomial q(t) ↦ q(‖x‖²) in dimension d
    lifted = GPoly(d, {((0,) * d, j2): c for (_, j2), c in p.items()})
    return subs_t_by_radius2(lifted)


def ball_even_extremal(d: int, mu, n: int) -> GPoly:
    """Rotation-invariant element of V_n (n even) as a polynomial in ‖x‖²."""
    if n % 2:
        raise BernsteinError("even extremal requires even n")
    return _radial_ball(d, jacobi1t(n // 2, Fraction(d - 2, 2), Fraction(mu) - Fraction(1, 2)))


def ball_odd_extremal(d: int, mu, n: int) -> GPoly:
    """x₁·q(‖x‖²) ∈ V_n (n odd), the extremal of the odd gradient-only bound."""
    if n % 2 == 0:
        raise BernsteinError("odd extremal requires odd n")
    q = _radial_ball(d, jacobi1t((n - 1) // 2, Fraction(d, 2), Fraction(mu) - Fraction(1, 2)))
    return q * GPoly.x(d, 0)


def generic_ball_element(d: int, mu, n: int) -> GPoly:
    """Σ (i+1)·basis_i over the ball basis of V_n, a generic member."""
    out = GPoly.zero(d)
    for i, b in enumerate(ball_basis(d, mu, n)):
        out = out + b.scale(i + 1)
    return out


def extremal(th: TheoremId | str, dom: DomainSpec, n: int) -> Element | None:
    """The extremal of the theorem at degree n, or None when none is known."""
    th = theorem_id(th)
    check_domain(th, dom)
    d, mu = dom.d, dom.mu
    if th in (TheoremId.Ball22, TheoremId.Ball23):
        return generic_ball_element(d, mu, n)
    if th is TheoremId.Ball22EvenOdd:
        return ball_even_extremal(d, mu, n) if n % 2 == 0 else ball_odd_extremal(d, mu, n)
    if th is TheoremId.Ball23EvenOdd:
        return ball_even_extremal(d, mu, n) if n % 2 == 0 else None
    if th in (TheoremId.SolidJ34, TheoremId.SolidJ35, TheoremId.SolidJ_T1only, TheoremId.SolidJ_gradOnly):
        return solid_jacobi_basis(d, dom.gamma, mu, n, 0, (0,) * d)
    if dom.kind is SU:
        return solid_laguerre_basis(d, mu, n, 0, (0,) * d)
    return surface_basis(dom, n, 0, 0)


def sharpness_check(th: TheoremId | str, dom: DomainSpec, n: int, literal: bool = False) -> Certificate:
    """Certificate for the extremal; ``note`` says whether Equality is asserted."""
    th = theorem_id(th)
    f = extremal(th, dom, n)
    if f is None:
        raise BernsteinError(f"{th.value} has no known extremal at n={n}")
    cert = certify(th, f, dom, n, literal)
    cert.note = "asserted" if THEOREMS[th].sharp else "recorded"
    return cert


def surface_angular_routes(dom: DomainSpec, f: SurfaceFun) -> tuple[Fraction, Fraction]:
    """Angular term by D_{i,j} expansion and by the aggregate m(m+d-2) identity."""
    comp = [c for c in _surface_terms(dom.kind.bounded, "full") if c.ops == "ang"][0]
    a = component_value(dom, comp, f)
    scaled = f.map_radial(lambda g, m: g.scale(laplace_beltrami_eigenvalue(dom.d, m)))
    b = Q * inner(dom, f, _times_tpow(scaled, -1), comp.shift)
    return a, b


def surface_t1_routes(dom: DomainSpec, f: SurfaceFun) -> tuple[Fraction, Fraction]:
    """First term via d/dt on the separated form and via E on an (x, t) representative."""
    comp = _surface_terms(dom.kind.bounded, "t1")[0]
    a = component_value(dom, comp, f)
    ef = from_gpoly(E(f.to_gpoly()))
    b = inner(dom, ef, _times_tpow(ef, 1), comp.shift)
    return a, b


def parseval_lhs(th: TheoremId, dom: DomainSpec, f: Element, n: int) -> Fraction:
    """Σ λ_{deg,m}·c²·‖e‖² over the orthogonal basis, for the full theorems."""
    if th not in (TheoremId.Ball22, TheoremId.Ball23, TheoremId.SolidJ34, TheoremId.SolidJ35,
                  TheoremId.SolidL39, TheoremId.SolidL310, TheoremId.SurfJ45, TheoremId.SurfL48):
        raise BernsteinError(f"{th.value} is not a full-operator theorem")
    f = _coerce(dom, f)
    form = EigenFormula.of(dom)
    total = Fraction(0)
    for deg in range(n + 1):
        for b in basis_ids(dom, deg):
            e = basis_element(b)
            h = inner(dom, e, e)
            c = inner(dom, f, e) / h
            if c:
                total += eigenvalue(form, deg, b.m) * c * c * h
    return total


# Rayleigh quotient maximization --------------------------------------------------------

@dataclass
class RayleighResult:
    theorem: TheoremId
    dom: DomainSpec
    n: int
    value: float
    bound: Fraction
    argmax: dict[str, float] = field(default_factory=dict)

    @property
    def ratio(self) -> float:
        b = float(self.bound)
        return self.value / b if b else (0.0 if abs(self.value) < 1e-12 else math.inf)

    def to_dict(self) -> dict:
        return {"theorem": self.theorem.value, "domain": self.dom.label(), "n": self.n,
                "value": repr(self.value), "bound": str(self.bound), "ratio": repr(self.ratio),
                "argmax": {k: repr(v) for k, v in self.argmax.items()}}


def _blocks(dom: DomainSpec, nmax: int) -> dict[tuple, list[tuple[int, str, Element]]]:
    """Degree-graded basis of Π_nmax split into blocks the form cannot couple.

    Solids and the ball use monomials grouped by the parity vector of α (the
    weights are reflection invariant and every operator preserves it);
    surfaces use t^{m/2+k} Y_ℓ^m grouped by (m, ℓ).
    """
    d = dom.d
    out: dict[tuple, list] = {}
    if dom.kind.is_surface:
        for m in range(nmax + 1):
            for ell in range(harmonic_dim(d, m)):
                for k in range(nmax - m + 1):
                    g = GPoly(1, {((0,), m + 2 * k): Fraction(1)})
                    out.setdefault((m, ell), []).append((m + k, f"[{m},{ell}] t^{Fraction(m, 2) + k}",
                                                          SurfaceFun.single(d, m, ell, g)))
        return out
    with_t = dom.kind.has_t
    for deg in range(nmax + 1):
        for na in range(deg, -1, -1):
            j = deg - na
            if j and not with_t:
                continue
            for alpha in compositions(na, d):
                p = GPoly.monomial(alpha, j)
                out.setdefault(tuple(a % 2 for a in alpha), []).append((deg, to_text(p), p))
    return out


def _block_matrices(th: TheoremId, dom: DomainSpec, elems: list[Element]):
    n = len(elems)
    A = [[Fraction(0)] * n for _ in range(n)]
    B = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            A[i][j] = A[j][i] = bilinear(th, dom, elems[i], elems[j])
            B[i][j] = B[j][i] = inner(dom, elems[i], elems[j])
    return A, B


def rayleigh_sweep(th: TheoremId | str, dom: DomainSpec, nmax: int, literal: bool = False) -> list[RayleighResult]:
    """max Q(f)/‖f‖² over Π_n for every n ≤ nmax, from a single assembly.

    Each block is assembled once at degree nmax; the degree-n problem is its
    leading principal sub-block because the basis is degree-graded.
    """
    th = theorem_id(th)
    check_domain(th, dom)
    blocks = _blocks(dom, nmax)
    best = [(-math.inf, {}) for _ in range(nmax + 1)]
    for items in blocks.values():
        degs = [x[0] for x in items]
        labels = [x[1] for x in items]
        A, B = _block_matrices(th, dom, [x[2] for x in items])
        for n in range(nmax + 1):
            size = sum(1 for g in degs if g <= n)
            if not size:
                continue
            As = [row[:size] for row in A[:size]]
            Bs = [row[:size] for row in B[:size]]
            try:
                C, Li, D = reduce_generalized(As, Bs)
            except LinalgError as exc:
                raise LinalgError(f"norm Gram matrix of {th.value} block not positive definite: {exc}") from exc
            w, v = jacobi_eigh(C)
            val = float(w[-1])
            if val > best[n][0] + 1e-12 * max(1.0, abs(val)):
                # back to basis coefficients: c = L^{-T} D^{-1/2} v
                y = v[:, -1] / np.sqrt([float(x) for x in D])
                Lf = np.array([[float(x) for x in row] for row in Li])
                c = Lf.T @ y
                k = int(np.argmax(np.abs(c)))
                c = c / c[k]
                best[n] = (val, {labels[i]: float(c[i]) for i in range(size) if abs(c[i]) > 1e-14})
    return [RayleighResult(th, dom, n, best[n][0], bound(th, dom, n, literal), best[n][1])
            for n in range(nmax + 1)]


def rayleigh_max(th: TheoremId | str, dom: DomainSpec, n: int, literal: bool = False) -> RayleighResult:
    return rayleigh_sweep(th, dom, n, literal)[n]


__all__ = [
    "TheoremId", "Verdict", "Certificate", "THEOREMS", "bound", "functional_terms", "certify",
    "certify_random", "sharpness_check", "extremal", "rayleigh_max", "rayleigh_sweep", "RayleighResult",
    "parseval_lhs", "surface_angular_routes", "surface_t1_routes", "ball_even_extremal", "ball_odd_extremal",
    "BernsteinError",
]
