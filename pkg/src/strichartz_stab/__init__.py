"""Numerical library for sharp-constant and stability computations of the
L^2 Fourier extension (Strichartz) inequalities on the paraboloid and the
two-dimensional sphere: spectral-gap and two-peak constants, deficit
functionals, manifold distances, and a Rayleigh-quotient minimizer search.
"""

from .paraboloid import (
    ConstantRecord,
    Dim,
    GaussianSuperposition,
    OnManifoldError,
    Provenance,
    RadialHermiteCoeffs,
)
from .quad import QuadratureSpec, QuadratureError
from .optimize import OptimizationError, SearchSpec
from .sphere import SPHERE, AxisymCoeffs

__version__ = "0.1.0"

__all__ = [
    "ConstantRecord",
    "Dim",
    "GaussianSuperposition",
    "OnManifoldError",
    "Provenance",
    "RadialHermiteCoeffs",
    "QuadratureSpec",
    "QuadratureError",
    "OptimizationError",
    "SearchSpec",
    "SPHERE",
    "AxisymCoeffs",
    "__version__",
]
