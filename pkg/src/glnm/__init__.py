"""Generalized Numerov method for ``y'' + g(x) y' + f(x) y = 0``."""

from .grid import Grid, GridSpec, Segment, build_grid
from .problem import (
    BoundaryModel,
    DecaySeed,
    EffectiveMassModel,
    FieldSamples,
    FixedRatioSeed,
    PowerLawSeed,
    TabulatedSeed,
    hf_map,
    sample_fields,
)
from .stencil import (
    DerivativeStencil,
    LocalFields,
    StencilCoefficients,
    derivative_coefficients,
    recurrence_coefficients,
)
from .propagate import RatioSweep, SolutionSamples, reconstruct, step_recurrence, sweep_inward, sweep_outward

from .derivative import derivative_endpoint, derivative_interior, derivatives
from .eigensolve import EigenProblem, EigenSolution, choose_matching_point, mismatch, solve
from .scf import ScfConfig, ScfFields, ScfState, scf_iterate
from .builtins import BUILTIN_NAMES, BuiltinProblem, builtin_problem
from .errors import (
    EigenError,
    FieldError,
    GlnmError,
    GridError,
    PropagationError,
    ScfError,
    StencilError,
    ValidationError,
)

__version__ = "0.1.0"
