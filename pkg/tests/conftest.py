from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from parabern.gpoly import GPoly
from parabern.moments import DomainSpec, Kind

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

GAMMAS = [Fraction(0), Fraction(1, 2), Fraction(2)]
MUS = [Fraction(1, 2), Fraction(1), Fraction(5, 2)]

rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))


@st.composite
def gpolys(draw, dim=2, max_terms=4, max_deg=3, j2_min=0, j2_max=4):
    n = draw(st.integers(0, max_terms))
    terms = []
    for _ in range(n):
        alpha = tuple(draw(st.integers(0, max_deg)) for _ in range(dim))
        j2 = draw(st.integers(j2_min, j2_max))
        terms.append(((alpha, j2), draw(rationals)))
    return GPoly(dim, terms)


def dom(kind: str, d: int, gamma=0, mu=Fraction(1, 2)) -> DomainSpec:
    return DomainSpec(Kind(kind), d, Fraction(gamma), Fraction(mu))


def grid_domains(d_solid=(1, 2, 3), d_surface=(2, 3)):
    out = []
    for mu in MUS:
        for d in d_solid:
            out.append(dom("ball", d, 0, mu))
            out.append(dom("solid-laguerre", d, 0, mu))
            for g in GAMMAS:
                out.append(dom("solid-jacobi", d, g, mu))
    for d in d_surface:
        out.append(dom("surface-laguerre", d))
        for g in GAMMAS:
            out.append(dom("surface-jacobi", d, g))
    return out


@pytest.fixture
def x1():
    return GPoly.x(1, 0)
