"""Classical side of the solver: Hermitian eigensystems, the direct-solve
oracle and ternary digit analysis of eigenvalues."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    ConvergenceError,
    NoDiscriminatingDigitError,
    NotHermitianError,
    SingularMatrixError,
)

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
SINGULAR_TOL = 1e-10
DIGIT_GUARD = 1e-12


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    entries: np.ndarray
    tol: float = HERMITIAN_TOL

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NotHermitianError(f"expected a square matrix, got shape {m.shape}")
        err = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
        if err >= self.tol:
            raise NotHermitianError(f"matrix is not Hermitian: max |M - M^H| = {err:.3e}")
        # exact Hermitian symmetry from here on
        m = 0.5 * (m + m.conj().T)
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]


def as_hermitian(a, tol: float = HERMITIAN_TOL) -> HermitianMatrix:
    return a if isinstance(a, HermitianMatrix) else HermitianMatrix(a, tol)


@dataclass(frozen=True, eq=False)
class SLEProblem:
    A: HermitianMatrix
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "A", as_hermitian(self.A))
        b = np.array(self.b, dtype=complex).reshape(-1)
        if b.size != self.A.dimension:
            raise ValueError(f"b has length {b.size}, matrix has dimension {self.A.dimension}")
        if not np.linalg.norm(b) > 0:
            raise ValueError("b must be nonzero")
        b.setflags(write=False)
        object.__setattr__(self, "b", b)

    @property
    def b_normalized(self) -> np.ndarray:
        return self.b / np.linalg.norm(self.b)


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues ascending; ``eigenvectors[:, j]`` pairs with ``eigenvalues[j]``.

    ``coefficients`` (the overlaps of each eigenvector with the right-hand
    side) is only set by :func:`decompose`.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    coefficients: np.ndarray | None = None
    sweeps: int = 0

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _off_norm(m) -> float:
    n = len(m)
    return math.sqrt(sum(abs(m[i][j]) ** 2 for i in range(n) for j in range(n) if i != j))


def eigh(a) -> SpectralDecomposition:
    """Cyclic Jacobi eigensolver for Hermitian matrices.

    Each rotation first removes the phase of the pivot element, then applies
    a real Givens rotation that zeroes it.  Works on Python lists: for 3x3
    input the per-element numpy overhead dominates otherwise.
    """
    entries = as_hermitian(a).entries
    n = entries.shape[0]
    m = [[complex(x) for x in row] for row in entries]
    v = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]
    scale = max(1.0, float(np.linalg.norm(entries)))
    sweeps = 0
    off = _off_norm(m)
    while off >= JACOBI_TOL * scale:
        if sweeps >= JACOBI_MAX_SWEEPS:
            raise ConvergenceError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps", off)
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p][q]
                b = abs(apq)
                if b == 0.0:
                    continue
                phase = apq / b
                theta = 0.5 * math.atan2(2.0 * b, (m[p][p] - m[q][q]).real)
                c, s = math.cos(theta), math.sin(theta)
                # G = [[c, -s], [s e^{-i phi}, c e^{-i phi}]]; A <- G^H A G, V <- V G
                sp, cp = s * phase.conjugate(), c * phase.conjugate()
                spc, cpc = sp.conjugate(), cp.conjugate()
                for row in m:
                    xp, xq = row[p], row[q]
                    row[p] = c * xp + sp * xq
                    row[q] = -s * xp + cp * xq
                mp, mq = m[p], m[q]
                for k in range(n):
                    xp, xq = mp[k], mq[k]
                    mp[k] = c * xp + spc * xq
                    mq[k] = -s * xp + cpc * xq
                mp[q] = mq[p] = 0j
                for row in v:
                    xp, xq = row[p], row[q]
                    row[p] = c * xp + sp * xq
                    row[q] = -s * xp + cp * xq
        off = _off_norm(m)
    w = np.array([m[i][i].real for i in range(n)])
    order = np.argsort(w, kind="stable")
    return SpectralDecomposition(w[order], np.array(v)[:, order], sweeps=sweeps)


def beta_coefficients(d: SpectralDecomposition, b_normalized) -> np.ndarray:
    return d.eigenvectors.conj().T @ np.asarray(b_normalized, dtype=complex)


def decompose(problem: SLEProblem) -> SpectralDecomposition:
    d = eigh(problem.A)
    return SpectralDecomposition(
        d.eigenvalues, d.eigenvectors, beta_coefficients(d, problem.b_normalized), d.sweeps
    )


def classical_solution(problem: SLEProblem) -> np.ndarray:
    """Normalized ``A^-1 b`` by direct LU solve (the reference answer)."""
    a = problem.A.entries
    if np.min(np.abs(np.linalg.eigvalsh(a))) <= SINGULAR_TOL:
        raise SingularMatrixError("matrix is singular")
    x = np.linalg.solve(a, problem.b_normalized)
    return x / np.linalg.norm(x)


def ternary_digits(x: float, count: int, guard: float = DIGIT_GUARD) -> tuple[int, ...]:
    """First ``count`` ternary fraction digits of ``x`` in [0, 1).

    Values within ``guard`` of a multiple of ``3**-count`` are snapped to it
    first, so that 0.4444444444445 reads as (1, 1) rather than (1, 0, 2, ...).
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if not 0.0 <= x < 1.0:
        raise ValueError(f"{x} is outside [0, 1)")
    full = 3**count
    k = round(x * full)
    if abs(x - k / full) <= guard and k < full:
        scaled = k
    else:
        scaled = int(Fraction(x) * full)  # exact floor
    digits = []
    for _ in range(count):
        scaled, d = divmod(scaled, 3)
        digits.append(d)
    return tuple(reversed(digits))


def discriminating_position(
    eigenvalues: Sequence[float], max_digits: int, guard: float = DIGIT_GUARD
) -> int:
    """Smallest 1-based ternary position whose digits differ across all eigenvalues."""
    table = [ternary_digits(float(x), max_digits, guard) for x in eigenvalues]
    if len(set(table)) < len(table):
        raise NoDiscriminatingDigitError(
            f"eigenvalues are not distinct within {max_digits} ternary digits"
        )
    for pos in range(max_digits):
        column = [row[pos] for row in table]
        if len(set(column)) == len(column):
            return pos + 1
    raise NoDiscriminatingDigitError(
        f"no single ternary position <= {max_digits} separates all eigenvalues"
    )
