from pathlib import Path

import numpy as np
import pytest

from qutrit_sle.spectral import SLEProblem

DATA = Path(__file__).resolve().parent.parent / "data"

REF_A = np.array(
    [
        [0.44033 + 0.00000j, 0.05719 - 0.02612j, 0.02565 + 0.05151j],
        [0.05719 + 0.02612j, 0.40686 + 0.00000j, 0.05915 + 0.00073j],
        [0.02565 - 0.05151j, 0.05915 - 0.00073j, 0.48614 + 0.00000j],
    ]
)
REF_B = np.array([0.56751, 0.79592, 0.21084])
REF_X = np.array([0.508890 + 0.045054j, 0.853352 - 0.047654j, 0.071299 + 0.058623j])


@pytest.fixture
def reference_problem():
    return SLEProblem(REF_A, REF_B)


@pytest.fixture
def data_dir():
    return DATA


def random_unitary(rng, n=3):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def exact_digit_problem(rng):
    """Hermitian 3x3 with eigenvalues k/9 whose second ternary digits differ."""
    lows = [0, 1, 2]
    rng.shuffle(lows)
    lam = []
    for low in lows:
        first = rng.integers(0, 3)
        value = first * 3 + low
        if value == 0:
            value = 3  # keep eigenvalues positive: 0.10 (ternary)
        lam.append(value / 9)
    u = random_unitary(rng)
    a = (u * np.array(lam)) @ u.conj().T
    b = rng.normal(size=3) + 1j * rng.normal(size=3)
    return SLEProblem(0.5 * (a + a.conj().T), b), np.array(lam)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def record_criterion(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
