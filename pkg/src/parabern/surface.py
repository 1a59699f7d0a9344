"""Functions on the parabolic surface ‖x‖² = t in separated form.

A :class:`SurfaceFun` stores ``f(√t ξ, t) = Σ g_{m,ℓ}(t) Y_ℓ^m(ξ)``, one
radial t-polynomial (half-integer powers allowed) per harmonic index.  The
harmonics come from :func:`harmonics.harmonic_basis`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .gpoly import GPoly, GPolyError, angular_diff, angular_pairs, diff, mul_tpow
from .harmonics import harmonic_basis, sphere_inner, laplace_beltrami_eigenvalue

Index = tuple[int, int]


def _lift_t(g: GPoly, d: int) -> GPoly:
    # t-only polynomial in dimension 1 -> same polynomial in dimension d
    z = (0,) * d
    return GPoly(d, {(z, j2): c for (_, j2), c in g.items()})


def t_only(coeffs: Mapping[int, Fraction]) -> GPoly:
    """Radial polynomial ``Σ c t^{j2/2}`` from a ``{j2: c}`` map."""
    return GPoly(1, {((0,), j2): c for j2, c in coeffs.items()})


class SurfaceFun:
    """Immutable separated-form surface function."""

    __slots__ = ("d", "parts")

    def __init__(self, d: int, parts: Mapping[Index, GPoly] | Iterable[tuple[Index, GPoly]] = ()):
        if d < 2:
            raise GPolyError("surface functions need d >= 2")
        items = parts.items() if isinstance(parts, Mapping) else parts
        acc: dict[Index, GPoly] = {}
        for (m, ell), g in items:
            if g.dim != 1 or not g.is_t_only():
                raise GPolyError("radial parts must be t-only polynomials of dimension 1")
            if not 0 <= ell < len(harmonic_basis(d, m)):
                raise GPolyError(f"harmonic index ({m}, {ell}) out of range for d={d}")
            key = (m, ell)
            acc[key] = acc[key] + g if key in acc else g
        self.d = d
        self.parts = {k: v for k, v in sorted(acc.items()) if v}

    @classmethod
    def zero(cls, d: int) -> "SurfaceFun":
        return cls(d)

    @classmethod
    def single(cls, d: int, m: int, ell: int, radial: GPoly) -> "SurfaceFun":
        return cls(d, {(m, ell): radial})

    def __add__(self, other: "SurfaceFun") -> "SurfaceFun":
        self._check(other)
        return SurfaceFun(self.d, list(self.parts.items()) + list(other.parts.items()))

    def __neg__(self) -> "SurfaceFun":
        return SurfaceFun(self.d, {k: -v for k, v in self.parts.items()})

    def __sub__(self, other: "SurfaceFun") -> "SurfaceFun":
        return self + (-other)

    def scale(self, c) -> "SurfaceFun":
        return SurfaceFun(self.d, {k: v.scale(c) for k, v in self.parts.items()})

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def map_radial(self, fn) -> "SurfaceFun":
        """Apply ``fn(g, m)`` to each radial part."""
        return SurfaceFun(self.d, {k: fn(g, k[0]) for k, g in self.parts.items()})

    def times_t(self, h: GPoly) -> "SurfaceFun":
        """Multiply by a t-only polynomial ``h`` (dimension 1)."""
        return self.map_radial(lambda g, m: g * h)

    def _check(self, other) -> None:
        if not isinstance(other, SurfaceFun) or other.d != self.d:
            raise GPolyError("surface dimension mismatch")

    def __eq__(self, other) -> bool:
        return isinstance(other, SurfaceFun) and self.d == other.d and self.parts == other.parts

    def __hash__(self) -> int:
        return hash((self.d, tuple(self.parts.items())))

    def __bool__(self) -> bool:
        return bool(self.parts)

    def is_zero(self) -> bool:
        return not self.parts

    def degree(self) -> Fraction:
        """Degree as a polynomial on the surface (t counted once)."""
        if not self.parts:
            return Fraction(-1)
        # g = t^{m/2} P(t) has surface degree deg P + m
        return max(g.degree() + Fraction(m, 2) for (m, _), g in self.parts.items())

    def __repr__(self) -> str:
        inner = ", ".join(f"({m},{ell}): {g}" for (m, ell), g in self.parts.items())
        return f"SurfaceFun(d={self.d}, {{{inner}}})"

    def to_gpoly(self) -> GPoly:
        """``Σ g(t) t^{-m/2} Y(x)``, a representative in (x, t)."""
        out = GPoly.zero(self.d)
        for (m, ell), g in self.parts.items():
            y = harmonic_basis(self.d, m)[ell]
            out = out + _lift_t(mul_tpow(g, Fraction(-m, 2)), self.d) * y
        return out

    def to_text(self) -> str:
        from .gpoly import to_text

        if not self.parts:
            return "0"
        return " ; ".join(f"[{m},{ell}] {to_text(g)}" for (m, ell), g in self.parts.items())


@lru_cache(maxsize=None)
def _harmonic_gram(d: int, m1: int, l1: int, m2: int, l2: int) -> Fraction:
    return sphere_inner(harmonic_basis(d, m1)[l1], harmonic_basis(d, m2)[l2], d)


def expand_in_harmonics(p: GPoly, d: int, degrees: Iterable[int]) -> dict[Index, Fraction]:
    """Coefficients of the restriction of x-only ``p`` on the sphere in ℋ_m, m in ``degrees``."""
    out: dict[Index, Fraction] = {}
    for m in degrees:
        hb = harmonic_basis(d, m)
        for ell, (y, n2) in enumerate(zip(hb.elements, hb.norms2)):
            c = sphere_inner(p, y, d) / n2
            if c:
                out[(m, ell)] = c
    return out


@lru_cache(maxsize=None)
def _monomial_expansion(alpha: tuple[int, ...]) -> tuple[tuple[Index, Fraction], ...]:
    d = len(alpha)
    k = sum(alpha)
    coeffs = expand_in_harmonics(GPoly(d, {(alpha, 0): 1}), d, range(k % 2, k + 1, 2))
    return tuple(coeffs.items())


def from_gpoly(p: GPoly) -> SurfaceFun:
    """Restriction of ``p(x, t)`` to the surface, in separated form."""
    d = p.dim
    acc: dict[Index, dict[int, Fraction]] = {}
    for (alpha, j2), c in p.items():
        k = sum(alpha)
        e2 = k + j2
        for idx, v in _monomial_expansion(alpha):
            slot = acc.setdefault(idx, {})
            slot[e2] = slot.get(e2, 0) + c * v
    return SurfaceFun(d, {idx: t_only(cs) for idx, cs in acc.items()})


@lru_cache(maxsize=None)
def _angular_image(d: int, m: int, ell: int, i: int, j: int) -> tuple[tuple[int, Fraction], ...]:
    # D_{i,j} Y_ℓ^m expanded in the same ℋ_m basis; exact reconstruction asserted
    y = harmonic_basis(d, m)[ell]
    img = angular_diff(y, i, j)
    coeffs = expand_in_harmonics(img, d, [m])
    hb = harmonic_basis(d, m)
    back = GPoly.zero(d)
    for (_, l2), c in coeffs.items():
        back = back + hb[l2].scale(c)
    if back != img:
        raise GPolyError("angular derivative left the harmonic space")
    return tuple((l2, c) for (_, l2), c in coeffs.items())


def angular(f: SurfaceFun, i: int, j: int) -> SurfaceFun:
    """D_{i,j} acting on the ξ-variable (0-based indices)."""
    out: list[tuple[Index, GPoly]] = []
    for (m, ell), g in f.parts.items():
        for l2, c in _angular_image(f.d, m, ell, i, j):
            out.append(((m, l2), g.scale(c)))
    return SurfaceFun(f.d, out)


def laplace_beltrami(f: SurfaceFun) -> SurfaceFun:
    """Δ₀ on ξ computed as Σ_{i<j} D_{i,j}²."""
    out = SurfaceFun.zero(f.d)
    for i, j in angular_pairs(f.d):
        out = out + angular(angular(f, i, j), i, j)
    return out


def laplace_beltrami_eigen(f: SurfaceFun) -> SurfaceFun:
    """Δ₀ via Δ₀Y = -m(m+d-2)Y, the independent route."""
    return f.map_radial(lambda g, m: g.scale(-laplace_beltrami_eigenvalue(f.d, m)))


def ddt(f: SurfaceFun) -> SurfaceFun:
    """d/dt of f(√t ξ, t) at fixed ξ."""
    return f.map_radial(lambda g, m: diff(g, "t"))


def surface_inner(dom, f: SurfaceFun, g: SurfaceFun, shift=None) -> Fraction:
    """Σ over part pairs of sphere_inner(Y, Y') times the radial moment."""
    from .moments import NO_SHIFT, moment_j2

    shift = shift or NO_SHIFT
    if isinstance(f, GPoly):
        f = from_gpoly(f)
    if isinstance(g, GPoly):
        g = from_gpoly(g)
    if f.d != dom.d or g.d != dom.d:
        raise GPolyError("surface function dimension does not match domain")
    z = (0,) * dom.d
    total = Fraction(0)
    for (m1, l1), r1 in f.parts.items():
        for (m2, l2), r2 in g.parts.items():
            if (m1 + m2) % 2:
                continue
            sig = _harmonic_gram(dom.d, m1, l1, m2, l2)
            if not sig:
                continue
            radial = Fraction(0)
            for (_, a), ca in r1.items():
                for (_, b), cb in r2.items():
                    radial += ca * cb * moment_j2(dom, z, a + b, shift)
            total += sig * radial
    return total
