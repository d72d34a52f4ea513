"""Simulation of a three-qutrit circuit that solves 3x3 Hermitian linear systems."""

from .errors import (
    AdmissibilityError,
    DigitCollisionError,
    NoDiscriminatingDigitError,
    NotHermitianError,
    PostSelectionError,
    QutritSLEError,
    SingularMatrixError,
)
from .gates import RotationParams, UnitaryGate
from .io import load_problem, read_grid_csv, save_problem, write_grid_csv
from .pipeline import (
    PipelineConfig,
    RunResult,
    ScanGrid,
    ScanSpec,
    Semantics,
    analytic_success_probability,
    ideal_rotation_angles,
    run,
    scan,
)
from .spectral import (
    HermitianMatrix,
    SLEProblem,
    SpectralDecomposition,
    classical_solution,
    decompose,
    discriminating_position,
    eigh,
    ternary_digits,
)
from .state import StateVector, WireLayout

__version__ = "0.1.0"
