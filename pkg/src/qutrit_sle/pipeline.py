"""The three-qutrit solver circuit: phase estimation on a clock qutrit, a
clock-controlled rotation of an ancilla, uncomputation, and post-selection of
the ancilla on |2>.

Wire layout is (clock, data, ancilla), each of radix 3, initialised to
|0> (x) |b> (x) |0>.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import AdmissibilityError, DigitCollisionError, PostSelectionError
from .gates import (
    RotationParams,
    UnitaryGate,
    adjoint,
    controlled_power,
    controlled_select,
    exp_generator,
    gell_mann,
    phase_unitary,
    qutrit_hadamard,
    rotation_factors,
)
from .spectral import SLEProblem, SpectralDecomposition, classical_solution, decompose
from .state import (
    StateVector,
    WireLayout,
    apply_unitary,
    basis_state,
    from_amplitudes,
    postselect,
    product_state,
)

CLOCK, DATA, ANCILLA = 0, 1, 2
SUCCESS_DIGIT = 2
# C == lambda_min is legal; allow the eigensolver's round-off on top of it
C_ROUNDOFF = 1e-12


class Semantics(str, enum.Enum):
    IDEAL = "ideal"
    DIGIT_SELECT_FORM_ONE = "form1"
    DIGIT_SELECT_FORM_TWO = "form2"

    @property
    def form(self) -> str | None:
        return {"form1": "one", "form2": "two"}.get(self.value)


@dataclass(frozen=True)
class PipelineConfig:
    n: int = 2
    semantics: Semantics = Semantics.DIGIT_SELECT_FORM_TWO
    params: RotationParams | None = None
    C: float | None = None
    report_states: bool = False

    def __post_init__(self):
        object.__setattr__(self, "semantics", Semantics(self.semantics))
        if self.n < 1:
            raise ValueError("n must be a positive digit position")
        if self.semantics is Semantics.IDEAL:
            if self.C is None or not self.C >= 0:
                raise ValueError("ideal semantics needs a non-negative C")
        else:
            if self.params is None:
                raise ValueError(f"{self.semantics.value} semantics needs rotation parameters")
            if self.params.form != self.semantics.form:
                object.__setattr__(self, "params", replace(self.params, form=self.semantics.form))


@dataclass(frozen=True, eq=False)
class RunResult:
    solution_state: StateVector
    success_probability: float
    clock_residual: float
    oracle_fidelity: float | None
    states: dict = field(default_factory=dict)


def readout_digits(eigenvalues, n: int) -> list[int]:
    """Clock digit that phase estimation reports for each eigenvalue.

    This is the nearest of the three phases, i.e. round(3**n * lam) mod 3; it
    equals the n-th ternary digit whenever the expansion terminates there.
    """
    return [int(np.rint(3.0**n * lam)) % 3 for lam in eigenvalues]


def check_admissible(d: SpectralDecomposition):
    lam = d.eigenvalues
    if np.any(lam <= 0.0) or np.any(lam >= 1.0):
        raise AdmissibilityError(
            f"eigenvalues must lie in (0, 1); got {np.array2string(lam, precision=6)}"
        )


def digit_assignment(d: SpectralDecomposition, n: int) -> list[int]:
    """Eigen-index held by each clock digit; raises if two eigenvalues share one."""
    digits = readout_digits(d.eigenvalues, n)
    owner = [-1] * 3
    for j, c in enumerate(digits):
        if owner[c] >= 0:
            raise DigitCollisionError(
                f"eigenvalues {d.eigenvalues[owner[c]]:.6f} and {d.eigenvalues[j]:.6f} "
                f"share clock digit {c} at position {n}"
            )
        owner[c] = j
    return owner


def ideal_rotation_angles(d: SpectralDecomposition, C: float, n: int = 2) -> list[float]:
    """Per clock digit, arcsin(C / lambda) for the eigenvalue read at that digit.

    Digits no eigenvalue maps to get angle 0.
    """
    lam_min = float(np.min(d.eigenvalues))
    if C > lam_min * (1 + C_ROUNDOFF):
        raise AdmissibilityError(f"C exceeds smallest eigenvalue ({C} > {lam_min:.6g})")
    angles = []
    for j in digit_assignment(d, n):
        angles.append(float(np.arcsin(min(1.0, C / d.eigenvalues[j]))) if j >= 0 else 0.0)
    return angles


def analytic_success_probability(d: SpectralDecomposition, C: float) -> float:
    beta = np.asarray(d.coefficients)
    return float(np.sum(np.abs(beta) ** 2 * C**2 / d.eigenvalues**2))


def rotation_list(config: PipelineConfig, d: SpectralDecomposition) -> list[UnitaryGate]:
    """Ancilla gate applied for clock digit 0, 1, 2."""
    if config.semantics is Semantics.IDEAL:
        theta5 = gell_mann(5)
        # exp(-i a theta5)|0> = cos(a)|0> + sin(a)|2>
        return [exp_generator(theta5, -a) for a in ideal_rotation_angles(d, config.C, config.n)]
    return rotation_factors(config.params)


class PreparedCircuit:
    """Phase-estimation half of the circuit for one problem and digit position.

    Everything before the controlled rotation is independent of the rotation
    parameters, so a scan builds this once and calls :meth:`finish` per point.
    """

    def __init__(self, problem: SLEProblem, n: int = 2):
        self.problem = problem
        self.n = n
        self.decomposition = decompose(problem)
        check_admissible(self.decomposition)
        self.oracle = StateVector(WireLayout((3,)), classical_solution(problem))
        self.hadamard = qutrit_hadamard()
        self.controlled_u = controlled_power(phase_unitary(problem.A, n), 3)
        data, _ = from_amplitudes((3,), problem.b_normalized)
        zero = basis_state((3,), (0,))
        self.initial = product_state(zero, data, zero)
        self.after_estimation = self.estimate(self.initial)

    def estimate(self, psi: StateVector) -> StateVector:
        psi = apply_unitary(psi, self.hadamard, [CLOCK])
        psi = apply_unitary(psi, self.controlled_u, [CLOCK, DATA])
        return apply_unitary(psi, adjoint(self.hadamard), [CLOCK])

    def unestimate(self, psi: StateVector) -> StateVector:
        psi = apply_unitary(psi, self.hadamard, [CLOCK])
        psi = apply_unitary(psi, adjoint(self.controlled_u), [CLOCK, DATA])
        return apply_unitary(psi, adjoint(self.hadamard), [CLOCK])

    def finish(self, rotations, report_states: bool = False) -> RunResult:
        rotated = apply_unitary(self.after_estimation, controlled_select(rotations, 3), [CLOCK, ANCILLA])
        final = self.unestimate(rotated)
        selected = postselect(final, ANCILLA, SUCCESS_DIGIT)
        cond = selected.conditional_state
        # norm of the clock != 0 part; sqrt(1 - p0) would amplify round-off
        clock_residual = float(np.linalg.norm(cond.tensor()[1:]))
        data_amps = cond.tensor()[0, :, SUCCESS_DIGIT]
        solution, _ = from_amplitudes((3,), data_amps)
        states = {}
        if report_states:
            states = {
                "initial": self.initial,
                "psi1": self.after_estimation,
                "psi2": rotated,
                "uncomputed": final,
                "psi3": cond,
            }
        return RunResult(
            solution_state=solution,
            success_probability=selected.probability,
            clock_residual=clock_residual,
            oracle_fidelity=float(abs(np.vdot(self.oracle.amplitudes, solution.amplitudes)) ** 2),
            states=states,
        )


def run(problem: SLEProblem, config: PipelineConfig) -> RunResult:
    circuit = PreparedCircuit(problem, config.n)
    return circuit.finish(rotation_list(config, circuit.decomposition), config.report_states)


AXES = ("r1", "r2", "r3")


@dataclass(frozen=True)
class ScanSpec:
    axes: tuple[str, str] = ("r1", "r2")
    ranges: tuple[tuple[float, float, int], tuple[float, float, int]] = ((-1.0, 1.0, 81), (-1.0, 1.0, 81))
    fixed: float = 0.0
    semantics: Semantics = Semantics.DIGIT_SELECT_FORM_TWO
    n: int = 2

    def __post_init__(self):
        object.__setattr__(self, "semantics", Semantics(self.semantics))
        if self.semantics is Semantics.IDEAL:
            raise ValueError("scans vary rotation angles; use form1 or form2 semantics")
        if len(self.axes) != 2 or len(set(self.axes)) != 2 or not set(self.axes) <= set(AXES):
            raise ValueError(f"need two distinct axes out of {AXES}, got {self.axes}")
        for name, (lo, hi, pts) in zip(self.axes, self.ranges):
            if not lo < hi:
                raise ValueError(f"axis {name}: min must be below max")
            if pts < 2:
                raise ValueError(f"axis {name}: need at least 2 points")

    @property
    def fixed_axis(self) -> str:
        return next(a for a in AXES if a not in self.axes)

    def axis_values(self) -> tuple[np.ndarray, np.ndarray]:
        return tuple(np.linspace(lo, hi, pts) for lo, hi, pts in self.ranges)

    def params_at(self, u: float, v: float) -> RotationParams:
        values = {self.axes[0]: u, self.axes[1]: v, self.fixed_axis: self.fixed}
        return RotationParams(values["r1"], values["r2"], values["r3"], form=self.semantics.form)


@dataclass(frozen=True, eq=False)
class ScanGrid:
    axes: tuple[str, str]
    values: tuple[np.ndarray, np.ndarray]
    fidelity: np.ndarray
    fixed_axis: str
    fixed: float
    failures: int = 0

    @property
    def best_index(self) -> tuple[int, int]:
        # argmax returns the first maximum in row-major order
        i, j = np.unravel_index(int(np.argmax(self.fidelity)), self.fidelity.shape)
        return int(i), int(j)

    @property
    def best_point(self) -> dict:
        i, j = self.best_index
        return {self.axes[0]: float(self.values[0][i]), self.axes[1]: float(self.values[1][j]),
                self.fixed_axis: self.fixed}

    @property
    def best_fidelity(self) -> float:
        return float(self.fidelity[self.best_index])


def scan(problem: SLEProblem, spec: ScanSpec, workers: int | None = None) -> ScanGrid:
    """Oracle fidelity over a 2-D grid of rotation angles.

    Points where post-selection is impossible record fidelity 0.  The grid is
    filled by index, so ``workers > 1`` gives identical results.
    """
    circuit = PreparedCircuit(problem, spec.n)
    xs, ys = spec.axis_values()

    def point(idx):
        i, j = divmod(idx, len(ys))
        try:
            res = circuit.finish(rotation_factors(spec.params_at(xs[i], ys[j])))
        except PostSelectionError:
            return 0.0, 1
        return res.oracle_fidelity, 0

    indices = range(len(xs) * len(ys))
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(point, indices))
    else:
        results = [point(k) for k in indices]
    fid = np.array([r[0] for r in results]).reshape(len(xs), len(ys))
    return ScanGrid(tuple(spec.axes), (xs, ys), fid, spec.fixed_axis, spec.fixed,
                    failures=sum(r[1] for r in results))
