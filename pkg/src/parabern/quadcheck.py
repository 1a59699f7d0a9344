"""Gauss quadrature and floating-point cross-validation of the exact engine.

Rules come from the Golub–Welsch eigenproblem of the recurrence (Jacobi)
matrix, solved with the in-repo tridiagonal QL iteration.  Integrals over a
domain use the tensor rule in (t, ‖y‖², ξ) coordinates.  The sphere rules are
built from one orthant and reflected, so odd monomials vanish exactly.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .bases import random_element
from .gpoly import GPoly
from .linalg import tridiag_ql
from .moments import DomainSpec, IntegrabilityError, Kind, MomentKey, WeightShift, check_shift, inner, moment
from .surface import SurfaceFun

Element = Union[GPoly, SurfaceFun]


@dataclass(frozen=True)
class QuadratureRule:
    kind: str
    params: tuple[float, ...]
    nodes: tuple[float, ...]
    weights: tuple[float, ...]

    def integrate(self, fn) -> float:
        return math.fsum(w * fn(x) for x, w in zip(self.nodes, self.weights))

    def power_sum(self, e: float) -> float:
        return math.fsum(w * x ** e for x, w in zip(self.nodes, self.weights))


def _jacobi_recurrence(N: int, al: float, be: float) -> tuple[list[float], list[float]]:
    # orthonormal Jacobi on [-1, 1] with weight (1-u)^al (1+u)^be
    diag, off = [], []
    s = al + be
    for k in range(N):
        if k == 0:
            diag.append((be - al) / (s + 2))
        else:
            c = 2 * k + s
            diag.append((be * be - al * al) / (c * (c + 2)))
    for k in range(1, N):
        c = 2 * k + s
        if k == 1:
            v = 4 * (1 + al) * (1 + be) / ((2 + s) ** 2 * (3 + s))
        else:
            v = 4 * k * (k + al) * (k + be) * (k + s) / (c * c * (c + 1) * (c - 1))
        off.append(math.sqrt(v))
    return diag, off


@lru_cache(maxsize=256)
def _gauss(kind: str, a: float, b: float, N: int) -> QuadratureRule:
    if N < 1:
        raise ValueError("rule size must be at least 1")
    if kind == "jacobi":
        if a <= -1 or b <= -1:
            raise IntegrabilityError(f"jacobi rule needs a, b > -1, got {a}, {b}")
        # t^a (1-t)^b on [0, 1] is (1-u)^b (1+u)^a at t = (1+u)/2
        diag, off = _jacobi_recurrence(N, b, a)
        u, z = tridiag_ql(diag, off)
        mass = math.exp(math.lgamma(a + 1) + math.lgamma(b + 1) - math.lgamma(a + b + 2))
        nodes = tuple((1 + x) / 2 for x in u)
        return QuadratureRule("jacobi", (a, b), nodes, tuple(mass * w * w for w in z))
    if kind == "laguerre":
        if a <= -1:
            raise IntegrabilityError(f"laguerre rule needs a > -1, got {a}")
        diag = [2 * k + a + 1 for k in range(N)]
        off = [math.sqrt(k * (k + a)) for k in range(1, N)]
        x, z = tridiag_ql(diag, off)
        mass = math.gamma(a + 1)
        return QuadratureRule("laguerre", (a,), tuple(x), tuple(mass * w * w for w in z))
    raise ValueError(f"unknown rule kind {kind!r}")


def gauss_rule(kind: str, N: int, a=0, b=0) -> QuadratureRule:
    """``jacobi``: weight t^a (1-t)^b on [0,1]; ``laguerre``: t^a e^{-t} on [0,∞)."""
    return _gauss(kind, float(a), float(b), int(N))


@lru_cache(maxsize=64)
def sphere_orthant(d: int, N: int) -> tuple[tuple[tuple[float, ...], float], ...]:
    """Positive-orthant nodes with weights; the full rule is all 2^d reflections.

    Total weight over the orthant is 2^{-d}, so the reflected rule has mass 1
    (the sphere measure is normalized).
    """
    if d == 1:
        return (((1.0,), 0.5),)
    if d == 2:
        K = max(1, N)
        h = math.pi / 2 / K
        return tuple(((math.cos((k + 0.5) * h), math.sin((k + 0.5) * h)), 1 / (4 * K)) for k in range(K))
    if d == 3:
        # Gauss–Legendre in z = cos θ (even size, no node at 0) × offset trapezoid in φ
        M = N + (N % 2)
        leg = gauss_rule("jacobi", M, 0, 0)
        K = max(1, N)
        h = math.pi / 2 / K
        out = []
        for tz, wz in zip(leg.nodes, leg.weights):
            z = 2 * tz - 1
            if z <= 0:
                continue
            r = math.sqrt(max(0.0, 1 - z * z))
            for k in range(K):
                ph = (k + 0.5) * h
                # wz is a weight on [0,1] of mass 1; z-density on [-1,1] is 1/2
                out.append(((r * math.cos(ph), r * math.sin(ph), z), wz / (4 * K)))
        return tuple(out)
    raise NotImplementedError("sphere rules are provided for d <= 3")


def sphere_integral(alpha: tuple[int, ...], N: int) -> float:
    """Normalized ∫_S ξ^α dσ by the reflected rule (exact zero for odd α)."""
    d = len(alpha)
    if any(a & 1 for a in alpha):
        # each reflection pair cancels exactly in floating point
        return 0.0
    total = math.fsum(w * math.prod(x ** a for x, a in zip(xi, alpha)) for xi, w in sphere_orthant(d, N))
    return total * 2 ** d


@dataclass(frozen=True)
class Sizes:
    t: int = 32
    radial: int = 32
    sphere: int = 32


def default_sizes(degree: int) -> Sizes:
    n = max(32, 2 * int(math.ceil(degree)))
    return Sizes(n, n, n)


def _t_rule(bounded: bool, e: float, g: float, N: int) -> QuadratureRule:
    return gauss_rule("jacobi", N, e, g) if bounded else gauss_rule("laguerre", N, e)


def numeric_integral(dom: DomainSpec, p: Element, s: int = 0, sizes: Sizes | None = None,
                     shift: WeightShift | None = None) -> float:
    """Normalized ∫ p ‖x‖^{2s} W' / ∫ W by the tensor Gauss rule.

    With x = √t·√u·ξ (u = ‖y‖², ξ on the sphere), each term x^α t^j factors
    into a t-integral, a u-integral and a sphere integral.  The t- and u-
    rules absorb the smallest exponent that occurs, so the remaining powers
    are non-negative integers and the rules are exact for them.
    """
    shift = shift or WeightShift()
    check_shift(dom, shift)
    if isinstance(p, SurfaceFun):
        p = p.to_gpoly()
    if p.dim != dom.d:
        raise IntegrabilityError("polynomial dimension does not match domain")
    sizes = sizes or default_sizes(float(p.degree()) + abs(s))
    s = s + shift.s
    d = dom.d
    kind = dom.kind
    g0, g1 = float(dom.gamma), float(dom.gamma + shift.dgamma)
    mu0, mu1 = float(dom.mu), float(dom.mu + shift.dmu)
    terms = [(alpha, j2, float(c)) for (alpha, j2), c in p.items() if not any(a & 1 for a in alpha)]
    for (alpha, j2), _ in p.items():
        if sum(alpha) + 2 * s + d <= 0:
            raise IntegrabilityError(f"|α|+2s+d = {sum(alpha) + 2 * s + d} must be positive")
    if kind is Kind.BALL and any(j2 for _, j2, _ in terms):
        raise IntegrabilityError("ball integrands carry no t-power")
    if not terms:
        return 0.0

    def texp(alpha, j2):
        base = sum(alpha) / 2 + s + j2 / 2
        return base + (d / 2 + mu1 - 0.5 if kind.is_solid else d / 2 - 1)

    def uexp(alpha):
        return (sum(alpha) + 2 * s + d) / 2 - 1

    total = 0.0
    sph = {alpha: sphere_integral(alpha, sizes.sphere) for alpha, _, _ in terms}
    if kind.has_t:
        tex = {(a, j2): texp(a, j2) for a, j2, _ in terms}
        e_t = min(tex.values())
        if e_t <= -1:
            raise IntegrabilityError(f"t-exponent {e_t} must exceed -1")
        trule = _t_rule(kind.bounded, e_t, g1, sizes.t)
        tpow = {k: trule.power_sum(v - e_t) for k, v in tex.items()}
        # normalizer: the unshifted weight with the same structure
        A0 = d / 2 + mu0 - 0.5 if kind.is_solid else d / 2 - 1
        tnorm = _t_rule(kind.bounded, A0, g0, sizes.t).power_sum(0.0)
    if kind is Kind.BALL or kind.is_solid:
        uex = {a: uexp(a) for a, _, _ in terms}
        e_u = min(uex.values())
        urule = gauss_rule("jacobi", sizes.radial, e_u, mu1 - 0.5)
        upow = {a: urule.power_sum(v - e_u) for a, v in uex.items()}
        unorm = gauss_rule("jacobi", sizes.radial, d / 2 - 1, mu0 - 0.5).power_sum(0.0)
    for alpha, j2, c in terms:
        v = c * sph[alpha]
        if kind.has_t:
            v *= tpow[(alpha, j2)] / tnorm
        if kind is Kind.BALL or kind.is_solid:
            v *= upow[alpha] / unorm
        total += v
    return total


def near_boundary(dom: DomainSpec, key: MomentKey, margin: float = 0.05) -> bool:
    """True when the key's t- or radial exponent is within ``margin`` of -1."""
    d = dom.d
    na = sum(key.alpha)
    u = (na + 2 * key.s + d) / 2 - 1
    if dom.kind is Kind.BALL:
        return u < -1 + margin
    if dom.kind.is_solid:
        te = na / 2 + key.s + float(key.j) + d / 2 + float(dom.mu) - 0.5
        return te < -1 + margin or u < -1 + margin or float(dom.mu) - 0.5 < -1 + margin
    te = na / 2 + key.s + float(key.j) + d / 2 - 1
    return te < -1 + margin or (dom.kind.bounded and float(dom.gamma) < -1 + margin)


def tolerance(dom: DomainSpec) -> float:
    return 1e-8 if dom.kind in (Kind.SOLID_UNBOUNDED, Kind.SURFACE_UNBOUNDED) else 1e-10


@dataclass
class CrossRow:
    label: str
    exact: Fraction
    numeric: float
    rel: float
    flagged: bool = False

    def to_dict(self) -> dict:
        return {"item": self.label, "exact": str(self.exact), "numeric": repr(self.numeric),
                "rel_error": repr(self.rel), "flagged": self.flagged}


@dataclass
class CrossReport:
    dom: DomainSpec
    tol: float
    rows: list[CrossRow] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def max_rel(self) -> float:
        return max((r.rel for r in self.rows if not r.flagged), default=0.0)

    @property
    def passed(self) -> bool:
        return all(r.rel < self.tol for r in self.rows if not r.flagged)


def rel_error(numeric: float, exact: Fraction, eps: float = 1e-30) -> float:
    return abs(numeric - float(exact)) / max(abs(float(exact)), eps)


def random_key(dom: DomainSpec, rng: random.Random) -> MomentKey:
    d = dom.d
    while True:
        alpha = tuple(rng.randint(0, 4) for _ in range(d))
        j = Fraction(rng.randint(0, 3)) if dom.kind.has_t else Fraction(0)
        s = rng.choice([0, 0, 0, -1]) if d >= 2 else 0
        if sum(alpha) + 2 * s + d > 0:
            return MomentKey(alpha, j, s)


def crosscheck(dom: DomainSpec, trials: int = 100, seed: int = 0, polys: int = 10) -> CrossReport:
    """Compare moment() with numeric_integral on random keys and random polynomials."""
    rng = random.Random(f"crosscheck|{dom.label()}|{seed}")
    rep = CrossReport(dom, tolerance(dom))
    for _ in range(trials):
        key = random_key(dom, rng)
        ex = moment(dom, key)
        mono = GPoly(dom.d, {(key.alpha, key.j2): Fraction(1)})
        num = numeric_integral(dom, mono, key.s)
        flagged = near_boundary(dom, key)
        label = f"x^{key.alpha} t^{key.j} |x|^{2 * key.s}"
        if flagged:
            rep.warnings.append(f"slow convergence near integrability boundary: {label}")
        rep.rows.append(CrossRow(label, ex, num, rel_error(num, ex), flagged))
    for i in range(polys):
        f = random_element(dom, 3, seed * 1000 + i)
        ex = inner(dom, f, f)
        num = numeric_integral(dom, _square(f))
        rep.rows.append(CrossRow(f"norm2 of random element #{i}", ex, num, rel_error(num, ex)))
    return rep


def _square(f: Element) -> GPoly:
    g = f.to_gpoly() if isinstance(f, SurfaceFun) else f
    return g * g


def numeric_term(dom: DomainSpec, a: Element, b: Element, shift: WeightShift) -> float:
    """Numeric ⟨a, b⟩ under a shift, for the certificate cross-check."""
    ga = a.to_gpoly() if isinstance(a, SurfaceFun) else a
    gb = b.to_gpoly() if isinstance(b, SurfaceFun) else b
    return numeric_integral(dom, ga * gb, shift=shift)


def numeric_certificate(th, dom: DomainSpec, f: Element) -> tuple[dict[str, float], float]:
    """Floating evaluation of every functional term and of ‖f‖² by quadrature."""
    from .bernstein import THEOREMS, _ops, _times_tpow, theorem_id, _coerce

    th = theorem_id(th)
    f = _coerce(dom, f)
    surface = isinstance(f, SurfaceFun)
    out: dict[str, float] = {}
    for comp in THEOREMS[th].components:
        acc = 0.0
        for op in _ops(comp.ops, dom.d, surface):
            a = op(f)
            if a:
                acc += numeric_term(dom, a, _times_tpow(a, comp.tpow), comp.shift)
        out[comp.name] = float(comp.coef) * acc
    return out, numeric_term(dom, f, f, WeightShift())
