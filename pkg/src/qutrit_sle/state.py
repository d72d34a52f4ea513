"""Dense state vectors over mixed-radix wires.

Basis indices are big-endian in the wire order: wire 0 is the most
significant digit, so for radices ``(3, 3, 3)`` the digit tuple
``(d0, d1, d2)`` lives at index ``9*d0 + 3*d1 + d2``.  Every function here
is pure; states are immutable and may be shared between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import PostSelectionError

NORM_TOL = 1e-12
POSTSELECT_FLOOR = 1e-15


@dataclass(frozen=True)
class WireLayout:
    radices: tuple[int, ...]

    def __post_init__(self):
        radices = tuple(int(r) for r in self.radices)
        if not radices:
            raise ValueError("layout needs at least one wire")
        for w, r in enumerate(radices):
            if r < 2:
                raise ValueError(f"wire {w}: radix must be >= 2, got {r}")
        object.__setattr__(self, "radices", radices)

    @property
    def num_wires(self) -> int:
        return len(self.radices)

    @property
    def dimension(self) -> int:
        return int(np.prod(self.radices))

    def index(self, digits: Sequence[int]) -> int:
        if len(digits) != self.num_wires:
            raise ValueError(f"expected {self.num_wires} digits, got {len(digits)}")
        idx = 0
        for w, (d, r) in enumerate(zip(digits, self.radices)):
            if not 0 <= d < r:
                raise ValueError(f"wire {w}: digit {d} out of range for radix {r}")
            idx = idx * r + int(d)
        return idx

    def digits(self, index: int) -> tuple[int, ...]:
        return tuple(int(d) for d in np.unravel_index(index, self.radices))

    def check_wire(self, wire: int) -> int:
        if not 0 <= wire < self.num_wires:
            raise ValueError(f"wire {wire} out of range for {self.num_wires}-wire layout")
        return int(wire)


def _layout(layout) -> WireLayout:
    return layout if isinstance(layout, WireLayout) else WireLayout(tuple(layout))


@dataclass(frozen=True, eq=False)
class StateVector:
    layout: WireLayout
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.layout.dimension:
            raise ValueError(
                f"{amps.size} amplitudes for a layout of dimension {self.layout.dimension}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per wire."""
        return self.amplitudes.reshape(self.layout.radices)

    def amplitude(self, digits: Sequence[int]) -> complex:
        return complex(self.amplitudes[self.layout.index(digits)])

    def __repr__(self):
        return f"StateVector(radices={self.layout.radices}, norm={self.norm:.3g})"


@dataclass(frozen=True)
class PostSelection:
    probability: float
    conditional_state: StateVector | None


def basis_state(layout, digits: Sequence[int]) -> StateVector:
    layout = _layout(layout)
    amps = np.zeros(layout.dimension, dtype=complex)
    amps[layout.index(digits)] = 1.0
    return StateVector(layout, amps)


def from_amplitudes(layout, amps) -> tuple[StateVector, float]:
    """Normalize ``amps`` onto ``layout``; returns the state and the original norm."""
    layout = _layout(layout)
    amps = np.asarray(amps, dtype=complex).reshape(-1)
    if amps.size != layout.dimension:
        raise ValueError(f"{amps.size} amplitudes for a layout of dimension {layout.dimension}")
    norm = float(np.linalg.norm(amps))
    if norm == 0.0 or not np.isfinite(norm):
        raise ValueError("cannot normalize a zero vector")
    return StateVector(layout, amps / norm), norm


def product_state(*states: StateVector) -> StateVector:
    """Tensor product, first argument on the most significant wires."""
    amps = states[0].amplitudes
    radices = states[0].layout.radices
    for s in states[1:]:
        amps = np.kron(amps, s.amplitudes)
        radices = radices + s.layout.radices
    return StateVector(WireLayout(radices), amps)


def _gate_matrix(gate) -> np.ndarray:
    return np.asarray(getattr(gate, "matrix", gate), dtype=complex)


def apply_unitary(state: StateVector, gate, wires: Sequence[int]) -> StateVector:
    """Apply ``gate`` on ``wires``; the first listed wire is the gate's most significant."""
    layout = state.layout
    wires = [layout.check_wire(w) for w in wires]
    if len(set(wires)) != len(wires):
        raise ValueError(f"repeated wire index in {wires}")
    sub = [layout.radices[w] for w in wires]
    dim = int(np.prod(sub))
    mat = _gate_matrix(gate)
    if mat.shape != (dim, dim):
        raise ValueError(f"gate of shape {mat.shape} does not fit wires {wires} (dimension {dim})")
    k = len(wires)
    op = mat.reshape(sub + sub)
    out = np.tensordot(op, state.tensor(), axes=(list(range(k, 2 * k)), wires))
    out = np.moveaxis(out, list(range(k)), wires)
    return StateVector(layout, out.reshape(-1))


def postselect(state: StateVector, wire: int, digit: int) -> PostSelection:
    layout = state.layout
    wire = layout.check_wire(wire)
    if not 0 <= digit < layout.radices[wire]:
        raise ValueError(f"digit {digit} out of range for wire {wire}")
    t = state.tensor()
    mask = np.zeros(layout.radices[wire], dtype=bool)
    mask[digit] = True
    shape = [1] * layout.num_wires
    shape[wire] = -1
    kept = np.where(mask.reshape(shape), t, 0.0)
    probability = float(np.sum(np.abs(kept) ** 2))
    if probability < POSTSELECT_FLOOR:
        raise PostSelectionError(probability)
    cond = StateVector(layout, kept.reshape(-1) / np.sqrt(probability))
    return PostSelection(min(probability, 1.0), cond)


def wire_probabilities(state: StateVector, wire: int) -> np.ndarray:
    wire = state.layout.check_wire(wire)
    p = np.abs(state.tensor()) ** 2
    other = tuple(w for w in range(state.layout.num_wires) if w != wire)
    return p.sum(axis=other)


def fidelity(a: StateVector, b: StateVector) -> float:
    """Pure-state fidelity ``|<a|b>|**2``."""
    if a.layout != b.layout:
        raise ValueError(f"layout mismatch: {a.layout.radices} vs {b.layout.radices}")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)


def sample_digit(state: StateVector, wire: int, seed=None) -> tuple[int, StateVector]:
    """Simulated projective measurement of one wire with a seeded RNG.

    Demonstration only; the pipeline uses :func:`postselect`.
    """
    rng = np.random.default_rng(seed)
    probs = wire_probabilities(state, wire)
    digit = int(rng.choice(len(probs), p=probs / probs.sum()))
    return digit, postselect(state, wire, digit).conditional_state
