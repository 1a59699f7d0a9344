"""Sparse generalized polynomials in ``(x_1, ..., x_d, t)`` over the rationals.

Exponents of the ``x_i`` are nonnegative integers.  The exponent of ``t`` is
an element of ½ℤ, stored as the integer ``j2 = 2 * exponent``, and may be
negative down to :data:`T_EXP2_FLOOR`.  Values are immutable.

Variables are indexed from 0 in the API (``x[0]`` is printed ``x1``).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence, Union

Rational = Union[int, Fraction]
Key = tuple[tuple[int, ...], int]

#: twice the lowest admissible t-exponent (t^-2)
T_EXP2_FLOOR = -4

# Packing of keys into single ints for the moment engine's inner loops.
_ABITS = 8
_JBITS = 16
_JOFF = 1 << (_JBITS - 1)


class GPolyError(ValueError):
    """Raised on malformed generalized-polynomial operations."""


class ExponentUnderflow(GPolyError):
    """A t-exponent fell below the admissible floor."""


def as_rational(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return parse_rational(c)
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


def parse_rational(s: str) -> Fraction:
    """Parse ``"p/q"`` or an integer string; decimals are rejected."""
    s = s.strip()
    if not re.fullmatch(r"[+-]?\d+(/[+-]?\d+)?", s):
        raise GPolyError(f"not a rational literal: {s!r}")
    return Fraction(s)


def half(e) -> int:
    """Return ``2*e`` for an element ``e`` of ½ℤ."""
    e = as_rational(e)
    e2 = 2 * e
    if e2.denominator != 1:
        raise GPolyError(f"exponent {e} is not a half-integer")
    return int(e2)


class GPoly:
    """Immutable sparse polynomial with half-integer powers of ``t``."""

    __slots__ = ("dim", "_terms", "__dict__")

    def __init__(self, dim: int, terms: Mapping[Key, Rational] | Iterable[tuple[Key, Rational]] = ()):
        if dim < 1:
            raise GPolyError("dimension must be at least 1")
        self.dim = dim
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Key, Fraction] = {}
        for (alpha, j2), c in items:
            alpha = tuple(alpha)
            if len(alpha) != dim:
                raise GPolyError(f"multi-index {alpha} does not match dimension {dim}")
            if any(a < 0 for a in alpha):
                raise GPolyError(f"negative x-exponent in {alpha}")
            if j2 < T_EXP2_FLOOR:
                raise ExponentUnderflow(f"t-exponent {Fraction(j2, 2)} below floor {Fraction(T_EXP2_FLOOR, 2)}")
            key = (alpha, int(j2))
            acc[key] = acc.get(key, 0) + as_rational(c)
        self._terms = {k: v for k, v in acc.items() if v != 0}

    @classmethod
    def _raw(cls, dim: int, terms: dict[Key, Fraction]) -> "GPoly":
        # trusted constructor: terms already normalized and bound-checked
        p = cls.__new__(cls)
        p.dim = dim
        p._terms = terms
        return p

    # construction helpers -------------------------------------------------
    @classmethod
    def zero(cls, dim: int) -> "GPoly":
        return cls._raw(dim, {})

    @classmethod
    def const(cls, dim: int, c: Rational = 1) -> "GPoly":
        return cls(dim, {((0,) * dim, 0): c})

    @classmethod
    def x(cls, dim: int, i: int) -> "GPoly":
        if not 0 <= i < dim:
            raise GPolyError(f"variable index {i} out of range for dimension {dim}")
        alpha = tuple(1 if k == i else 0 for k in range(dim))
        return cls(dim, {(alpha, 0): 1})

    @classmethod
    def t(cls, dim: int, e: Rational = 1) -> "GPoly":
        return cls(dim, {((0,) * dim, half(e)): 1})

    @classmethod
    def monomial(cls, alpha: Sequence[int], e: Rational = 0, c: Rational = 1) -> "GPoly":
        return cls(len(alpha), {(tuple(alpha), half(e)): c})

    @classmethod
    def from_t_coeffs(cls, dim: int, coeffs: Sequence[Rational], shift2: int = 0) -> "GPoly":
        """Polynomial ``sum_k coeffs[k] t^(k + shift2/2)``."""
        z = (0,) * dim
        return cls(dim, {(z, 2 * k + shift2): c for k, c in enumerate(coeffs)})

    @classmethod
    def radius2(cls, dim: int) -> "GPoly":
        """``‖x‖² = x_1² + ... + x_d²``."""
        return cls(dim, {(tuple(2 if k == i else 0 for k in range(dim)), 0): 1 for i in range(dim)})

    # access -----------------------------------------------------------------
    @property
    def terms(self) -> dict[Key, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, alpha: Sequence[int], e: Rational = 0) -> Fraction:
        return self._terms.get((tuple(alpha), half(e)), Fraction(0))

    @property
    def min_t2(self) -> int | None:
        return min((j2 for (_, j2) in self._terms), default=None)

    def degree(self) -> Fraction:
        """Total degree ``|α| + j`` with t counted as degree one."""
        if not self._terms:
            return Fraction(-1)
        return max(Fraction(2 * sum(a) + j2, 2) for (a, j2) in self._terms)

    def x_degree(self) -> int:
        return max((sum(a) for (a, _) in self._terms), default=-1)

    def is_x_only(self) -> bool:
        return all(j2 == 0 for (_, j2) in self._terms)

    def is_t_only(self) -> bool:
        return all(not any(a) for (a, _) in self._terms)

    def is_polynomial(self) -> bool:
        """True when every t-exponent is a nonnegative integer."""
        return all(j2 >= 0 and j2 % 2 == 0 for (_, j2) in self._terms)

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "GPoly") -> None:
        if self.dim != other.dim:
            raise GPolyError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def _coerce(self, other) -> "GPoly":
        if isinstance(other, GPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return GPoly.const(self.dim, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for k, v in other._terms.items():
            s = acc.get(k, 0) + v
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
        return GPoly._raw(self.dim, acc)

    __radd__ = __add__

    def __neg__(self) -> "GPoly":
        return GPoly._raw(self.dim, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Rational) -> "GPoly":
        c = as_rational(c)
        if c == 0:
            return GPoly.zero(self.dim)
        return GPoly._raw(self.dim, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, GPoly):
            return NotImplemented
        self._check(other)
        acc: dict[Key, Fraction] = {}
        for (a, ja), ca in self._terms.items():
            for (b, jb), cb in other._terms.items():
                k = (tuple(x + y for x, y in zip(a, b)), ja + jb)
                acc[k] = acc.get(k, 0) + ca * cb
        acc = {k: v for k, v in acc.items() if v}
        for (_, j2) in acc:
            if j2 < T_EXP2_FLOOR:
                raise ExponentUnderflow(f"product t-exponent {Fraction(j2, 2)} below floor")
        return GPoly._raw(self.dim, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "GPoly":
        if k < 0:
            raise GPolyError("negative powers are not supported")
        out = GPoly.const(self.dim, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GPoly.const(self.dim, other)
        if not isinstance(other, GPoly):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"GPoly({self.dim}, {to_text(self)!r})"

    def __str__(self) -> str:
        return to_text(self)

    def map_terms(self, fn) -> "GPoly":
        """Apply ``fn((alpha, j2), c) -> iterable of ((alpha, j2), c)`` termwise."""
        out: list[tuple[Key, Fraction]] = []
        for k, c in self._terms.items():
            out.extend(fn(k, c))
        return GPoly(self.dim, out)

    # fast integer form used by the moment engine ------------------------
    @cached_property
    def packed(self) -> tuple[int, dict[tuple[int, ...], list[tuple[int, int]]]]:
        """``(denominator, {parity: [(packed_key, int_coeff), ...]})``."""
        den = 1
        for c in self._terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        groups: dict[tuple[int, ...], list[tuple[int, int]]] = {}
        for (alpha, j2), c in self._terms.items():
            par = tuple(a & 1 for a in alpha)
            groups.setdefault(par, []).append((pack_key(alpha, j2), int(c * den)))
        return den, groups


def pack_key(alpha: Sequence[int], j2: int) -> int:
    code = 0
    for a in reversed(alpha):
        if a >= (1 << (_ABITS - 1)):
            raise GPolyError("x-exponent too large for packed moments")
        code = (code << _ABITS) | a
    return (code << _JBITS) | (j2 + _JOFF)


def unpack_key(key: int, dim: int) -> Key:
    j2 = (key & ((1 << _JBITS) - 1)) - _JOFF
    code = key >> _JBITS
    mask = (1 << _ABITS) - 1
    alpha = []
    for _ in range(dim):
        alpha.append(code & mask)
        code >>= _ABITS
    return tuple(alpha), j2


def add_packed(k1: int, k2: int) -> int:
    return k1 + k2 - _JOFF


# differential operators ------------------------------------------------------

def diff(p: GPoly, var: int | str) -> GPoly:
    """Formal partial derivative; ``var`` is an x-index or ``"t"``."""
    if var == "t":
        terms = {}
        for (a, j2), c in p.items():
            if j2 == 0:
                continue
            nj = j2 - 2
            if nj < T_EXP2_FLOOR:
                raise ExponentUnderflow(f"∂_t pushes t-exponent to {Fraction(nj, 2)}")
            terms[(a, nj)] = c * Fraction(j2, 2)
        return GPoly._raw(p.dim, terms)
    i = int(var)
    if not 0 <= i < p.dim:
        raise GPolyError(f"variable index {i} out of range for dimension {p.dim}")
    terms = {}
    for (a, j2), c in p.items():
        if a[i] == 0:
            continue
        b = a[:i] + (a[i] - 1,) + a[i + 1:]
        terms[(b, j2)] = c * a[i]
    return GPoly._raw(p.dim, terms)


def diff_t(p: GPoly) -> GPoly:
    return diff(p, "t")


def euler_x(p: GPoly) -> GPoly:
    """``⟨x, ∇_x⟩ p``: each term scaled by its x-degree."""
    return GPoly._raw(p.dim, {k: c * sum(k[0]) for k, c in p.items() if sum(k[0])})


def laplacian_x(p: GPoly) -> GPoly:
    out = GPoly.zero(p.dim)
    for i in range(p.dim):
        out = out + diff(diff(p, i), i)
    return out


def angular_diff(p: GPoly, i: int, j: int) -> GPoly:
    """``D_{i,j} p = x_i ∂_j p − x_j ∂_i p`` (0-based, ``i < j``)."""
    if not (0 <= i < j < p.dim):
        raise GPolyError(f"angular derivative indices ({i}, {j}) invalid for dimension {p.dim}")
    xi, xj = GPoly.x(p.dim, i), GPoly.x(p.dim, j)
    return xi * diff(p, j) - xj * diff(p, i)


def angular_pairs(d: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(d) for j in range(i + 1, d)]


def mul_tpow(p: GPoly, e: Rational) -> GPoly:
    """Multiply by ``t^e`` for ``e`` in ½ℤ."""
    e2 = half(e)
    terms = {}
    for (a, j2), c in p.items():
        nj = j2 + e2
        if nj < T_EXP2_FLOOR:
            raise ExponentUnderflow(f"t^{e} pushes t-exponent to {Fraction(nj, 2)}")
        terms[(a, nj)] = c
    return GPoly._raw(p.dim, terms)


def parabolic_lift(q: GPoly, m: int) -> GPoly:
    """``t^{m/2} q(x/√t)`` for a polynomial ``q`` in x alone.

    Every monomial of ``q`` must have degree ``≤ m`` and of the parity of
    ``m``, otherwise the result would carry a genuinely fractional power.
    """
    if not q.is_x_only():
        raise GPolyError("parabolic_lift expects a polynomial in x alone")
    terms = {}
    for (a, _), c in q.items():
        k = sum(a)
        if k > m or (m - k) % 2:
            raise GPolyError(f"monomial of degree {k} is incompatible with lift degree {m}")
        terms[(a, m - k)] = c
    return GPoly._raw(q.dim, terms)


def subs_t_by_radius2(p: GPoly) -> GPoly:
    """Substitute ``t ↦ ‖x‖²`` (only integer, nonnegative t-powers)."""
    r2 = GPoly.radius2(p.dim)
    out = GPoly.zero(p.dim)
    cache: dict[int, GPoly] = {}
    for (a, j2), c in p.items():
        if j2 < 0 or j2 % 2:
            raise GPolyError("t ↦ ‖x‖² needs nonnegative integer t-exponents")
        k = j2 // 2
        if k not in cache:
            cache[k] = r2 ** k
        out = out + cache[k] * GPoly(p.dim, {(a, 0): c})
    return out


def to_ball_coords(p: GPoly) -> GPoly:
    """Rewrite ``p(x, t)`` in ``(y, t)`` with ``x = √t y``: ``x^α t^j ↦ y^α t^{j+|α|/2}``.

    The y-variables reuse the x-slots of the result.
    """
    return GPoly(p.dim, {(a, j2 + sum(a)): c for (a, j2), c in p.items()})


def from_ball_coords(p: GPoly) -> GPoly:
    """Inverse of :func:`to_ball_coords`."""
    return GPoly(p.dim, {(a, j2 - sum(a)): c for (a, j2), c in p.items()})


def reduce_on_surface(p: GPoly) -> GPoly:
    """Normal form modulo ``‖x‖² − t``: eliminate ``x_d²`` via ``t − Σ_{i<d} x_i²``.

    Two generalized polynomials agree on the parabolic surface iff their
    normal forms are equal.
    """
    d = p.dim
    if d == 1:
        base = GPoly.t(1)
    else:
        base = GPoly.t(d)
        for i in range(d - 1):
            base = base - GPoly.monomial(tuple(2 if k == i else 0 for k in range(d)))
    powers: dict[int, GPoly] = {0: GPoly.const(d)}
    out = GPoly.zero(d)
    for (a, j2), c in p.items():
        q, r = divmod(a[-1], 2)
        if q not in powers:
            powers[q] = base ** q
        head = GPoly._raw(d, {(a[:-1] + (r,), j2): c})
        out = out + head * powers[q]
    return out


def gp_eval(p: GPoly, x: Sequence[float], t: float) -> float:
    """Evaluate in double precision (coefficients rounded first)."""
    if len(x) != p.dim:
        raise GPolyError(f"point has {len(x)} coordinates, expected {p.dim}")
    total = 0.0
    for (a, j2), c in p.items():
        if (j2 < 0 or j2 % 2) and t <= 0:
            raise GPolyError("t must be positive for fractional or negative t-powers")
        v = float(c)
        for xi, ai in zip(x, a):
            if ai:
                v *= float(xi) ** ai
        if j2:
            v *= float(t) ** (j2 / 2) if j2 % 2 else float(t) ** (j2 // 2)
        total += v
    return total


# text serialization ------------------------------------------------------------

def _order_key(item: tuple[Key, Fraction]):
    (a, j2), _ = item
    return (sum(a) + math.ceil(j2 / 2), a, j2)


def to_text(p: GPoly) -> str:
    """Canonical text: ``"c * x1^a1 * ... * t^j"`` terms joined by ``" + "``."""
    if not p:
        return "0"
    parts = []
    for (a, j2), c in sorted(p.items(), key=_order_key):
        factors = [str(c)]
        factors += [f"x{i + 1}^{ai}" for i, ai in enumerate(a) if ai]
        if j2:
            factors.append(f"t^{j2 // 2}" if j2 % 2 == 0 else f"t^{j2}/2")
        parts.append(" * ".join(factors))
    return " + ".join(parts)


_FACTOR = re.compile(r"^(x(\d+)\^(\d+)|t\^(-?\d+)(/2)?)$")


def from_text(s: str, dim: int) -> GPoly:
    s = s.strip()
    if s == "0":
        return GPoly.zero(dim)
    terms: list[tuple[Key, Fraction]] = []
    for chunk in s.split(" + "):
        fs = chunk.split(" * ")
        c = parse_rational(fs[0])
        alpha = [0] * dim
        j2 = 0
        for f in fs[1:]:
            m = _FACTOR.match(f)
            if not m:
                raise GPolyError(f"cannot parse factor {f!r}")
            if m.group(2):
                i = int(m.group(2)) - 1
                if not 0 <= i < dim:
                    raise GPolyError(f"variable {f!r} outside dimension {dim}")
                alpha[i] += int(m.group(3))
            else:
                k = int(m.group(4))
                j2 += k if m.group(5) else 2 * k
        terms.append(((tuple(alpha), j2), c))
    return GPoly(dim, terms)
