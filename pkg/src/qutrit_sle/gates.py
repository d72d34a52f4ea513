"""Gate constructors for the three-qutrit solver circuit."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .spectral import as_hermitian, eigh

UNITARY_TOL = 1e-10
OMEGA = np.exp(2j * np.pi / 3)


@dataclass(frozen=True, eq=False)
class UnitaryGate:
    matrix: np.ndarray
    label: str = "U"

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"gate matrix must be square, got shape {m.shape}")
        err = unitarity_error(m)
        if err >= UNITARY_TOL:
            raise ValueError(f"{self.label} is not unitary: max |UU^H - I| = {err:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other: "UnitaryGate") -> "UnitaryGate":
        return UnitaryGate(self.matrix @ other.matrix, f"{self.label}*{other.label}")


def unitarity_error(m) -> float:
    m = np.asarray(getattr(m, "matrix", m))
    return float(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))))


_GELL_MANN = {
    2: [[0, -1j, 0], [1j, 0, 0], [0, 0, 0]],
    5: [[0, 0, -1j], [0, 0, 0], [1j, 0, 0]],
    7: [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]],
}


@dataclass(frozen=True, eq=False)
class GellMannGenerator:
    label: int
    matrix: np.ndarray


def gell_mann(label) -> GellMannGenerator:
    """The imaginary antisymmetric Gell-Mann matrices; ``label`` is 2, 5 or 7
    (``"theta5"`` style strings are accepted too)."""
    digits = re.sub(r"\D", "", str(label))
    key = int(digits) if digits else None
    if key not in _GELL_MANN:
        raise ValueError(f"unsupported Gell-Mann generator {label!r}; use 2, 5 or 7")
    m = np.array(_GELL_MANN[key], dtype=complex)
    m.setflags(write=False)
    return GellMannGenerator(key, m)


def exp_generator(g: GellMannGenerator, angle: float) -> UnitaryGate:
    """``exp(i * angle * g)``.

    These generators satisfy g**3 == g, which collapses the exponential
    series to ``I + i sin(a) g + (cos(a) - 1) g**2``.
    """
    m = g.matrix
    out = np.eye(3) + 1j * np.sin(angle) * m + (np.cos(angle) - 1.0) * (m @ m)
    return UnitaryGate(out, f"exp(i*{angle:.4g}*theta{g.label})")


@dataclass(frozen=True)
class RotationParams:
    r1: float
    r2: float
    r3: float
    form: str = "two"

    def __post_init__(self):
        if self.form not in ("one", "two"):
            raise ValueError(f"form must be 'one' or 'two', got {self.form!r}")

    @classmethod
    def from_l(cls, l1, l2, l3, form="two"):
        """Angles from cosine-style parameters: r = -2 arccos(l)."""
        for name, v in (("l1", l1), ("l2", l2), ("l3", l3)):
            if not -1.0 <= v <= 1.0:
                raise ValueError(f"{name}={v} outside [-1, 1]")
        return cls(*(-2.0 * np.arccos(v) for v in (l1, l2, l3)), form=form)

    @property
    def angles(self) -> tuple[float, float, float]:
        return (self.r1, self.r2, self.r3)

    @property
    def generators(self) -> tuple[int, int, int]:
        return (2, 5, 7) if self.form == "one" else (5, 5, 5)


def rotation_factors(params: RotationParams) -> list[UnitaryGate]:
    """The three factors ``exp(i r_k theta_k / 3)``, in order."""
    return [exp_generator(gell_mann(k), r / 3.0) for k, r in zip(params.generators, params.angles)]


def rotation_gate(params: RotationParams) -> UnitaryGate:
    r1, r2, r3 = rotation_factors(params)
    gate = r1 @ r2 @ r3
    return UnitaryGate(gate.matrix, f"R[{params.form}]")


def qutrit_hadamard() -> UnitaryGate:
    """Entry (k, j) is omega**(j*k) / sqrt(3)."""
    k = np.arange(3)
    return UnitaryGate(OMEGA ** np.outer(k, k) / np.sqrt(3), "H")


def phase_unitary(a, n: int) -> UnitaryGate:
    """``exp(2 pi i 3**(n-1) A)``.

    An eigenvalue whose n-th ternary digit is c (and which terminates there)
    acquires phase ``exp(2 pi i c / 3)``.
    """
    if n < 1:
        raise ValueError("digit position n must be >= 1")
    d = eigh(as_hermitian(a))
    # reduce mod 1 before exponentiating; 3**(n-1) can be large
    turns = np.mod(3.0 ** (n - 1) * d.eigenvalues, 1.0)
    v = d.eigenvectors
    return UnitaryGate((v * np.exp(2j * np.pi * turns)) @ v.conj().T, f"U(n={n})")


def _block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    m = blocks[0].shape[0]
    out = np.zeros((len(blocks) * m, len(blocks) * m), dtype=complex)
    for c, b in enumerate(blocks):
        out[c * m:(c + 1) * m, c * m:(c + 1) * m] = b
    return out


def controlled_power(u: UnitaryGate, control_radix: int) -> UnitaryGate:
    """``|c>|t> -> |c> U**c |t>`` with the control as the more significant wire."""
    if control_radix < 2:
        raise ValueError("control_radix must be >= 2")
    powers = [np.eye(u.dimension, dtype=complex)]
    for _ in range(control_radix - 1):
        powers.append(powers[-1] @ u.matrix)
    return UnitaryGate(_block_diag(powers), f"C-{u.label}^c")


def controlled_select(gates: Sequence[UnitaryGate], control_radix: int) -> UnitaryGate:
    """Apply ``gates[c]`` to the target when the control digit is c."""
    if len(gates) != control_radix:
        raise ValueError(f"need {control_radix} gates, got {len(gates)}")
    dims = {g.dimension for g in gates}
    if len(dims) != 1:
        raise ValueError(f"gates have differing dimensions {sorted(dims)}")
    return UnitaryGate(_block_diag([g.matrix for g in gates]), "C-select")


def adjoint(u: UnitaryGate) -> UnitaryGate:
    return UnitaryGate(u.matrix.conj().T, f"{u.label}^H")
