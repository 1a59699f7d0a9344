"""Exact orthogonal polynomials and L² Bernstein inequalities on the unit ball
and on parabolic domains."""

__version__ = "0.1.0"

from .gpoly import GPoly  # noqa: E402
from .moments import DomainSpec, Kind, MomentKey, WeightShift, inner, moment  # noqa: E402
from .surface import SurfaceFun  # noqa: E402

__all__ = ["GPoly", "DomainSpec", "Kind", "MomentKey", "WeightShift", "inner", "moment", "SurfaceFun",
           "__version__"]
