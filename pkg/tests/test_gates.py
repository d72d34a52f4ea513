import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import REF_A, random_unitary
from qutrit_sle.gates import (
    OMEGA,
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
    rotation_gate,
    unitarity_error,
)
from qutrit_sle.spectral import NotHermitianError

angles = st.floats(-10, 10, allow_nan=False)


def series_expm(m, terms=60):
    """Truncated Taylor series; independent of the closed form under test."""
    out = np.eye(m.shape[0], dtype=complex)
    term = np.eye(m.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ m / k
        out = out + term
    return out


def test_hadamard_columns():
    h = qutrit_hadamard().matrix
    np.testing.assert_allclose(h[:, 0], np.ones(3) / np.sqrt(3), atol=1e-15)
    w = np.cos(2 * np.pi / 3) + 1j * np.sin(2 * np.pi / 3)
    np.testing.assert_allclose(h[:, 1], np.array([1, w, w**2]) / np.sqrt(3), atol=1e-15)
    assert unitarity_error(h) < 1e-12
    assert OMEGA == pytest.approx(w)


def test_gell_mann_entries():
    assert gell_mann(2).matrix[0, 1] == -1j
    assert gell_mann(5).matrix[2, 0] == 1j
    assert gell_mann(7).matrix[1, 2] == -1j
    assert gell_mann("theta5").label == 5
    for k in (2, 5, 7):
        m = gell_mann(k).matrix
        assert np.array_equal(m, m.conj().T)
        assert np.trace(m) == 0
    with pytest.raises(ValueError):
        gell_mann(3)


def test_exp_generator_zero_angle():
    for k in (2, 5, 7):
        np.testing.assert_array_equal(exp_generator(gell_mann(k), 0.0).matrix, np.eye(3))


@settings(max_examples=100, deadline=None)
@given(angles, st.sampled_from([2, 5, 7]))
def test_exp_generator_matches_series(a, k):
    g = gell_mann(k)
    np.testing.assert_allclose(exp_generator(g, a).matrix, series_expm(1j * a * g.matrix), atol=1e-11)


def test_exp_theta5_on_zero():
    a = 0.37
    col = exp_generator(gell_mann(5), a).matrix[:, 0]
    np.testing.assert_allclose(col, [np.cos(a), 0, -np.sin(a)], atol=1e-15)


@settings(max_examples=100, deadline=None)
@given(angles)
def test_theta5_block_structure(a):
    m = exp_generator(gell_mann(5), a).matrix
    block = m[np.ix_([0, 2], [0, 2])]
    np.testing.assert_allclose(block, [[np.cos(a), np.sin(a)], [-np.sin(a), np.cos(a)]], atol=1e-12)
    np.testing.assert_allclose(m[1], [0, 1, 0], atol=1e-12)
    np.testing.assert_allclose(m[:, 1], [0, 1, 0], atol=1e-12)


def test_theta2_leaves_two_fixed():
    m = exp_generator(gell_mann(2), 1.1).matrix
    np.testing.assert_allclose(m[:, 2], [0, 0, 1], atol=1e-15)
    np.testing.assert_allclose(m[2], [0, 0, 1], atol=1e-15)


@settings(max_examples=200, deadline=None)
@given(angles, angles, st.sampled_from([2, 5, 7]))
def test_group_law(a, b, k):
    g = gell_mann(k)
    lhs = exp_generator(g, a).matrix @ exp_generator(g, b).matrix
    assert np.max(np.abs(lhs - exp_generator(g, a + b).matrix)) < 1e-12


def test_rotation_form_two():
    np.testing.assert_allclose(rotation_gate(RotationParams(0, 0, 0)).matrix, np.eye(3), atol=1e-15)
    a, b, c = 0.3, -0.8, 0.55
    np.testing.assert_allclose(
        rotation_gate(RotationParams(a, b, c, "two")).matrix,
        exp_generator(gell_mann(5), (a + b + c) / 3).matrix,
        atol=1e-12,
    )


def test_rotation_form_one_at_reference_point():
    r = RotationParams(-1, 1, 0.25, "one")
    m = rotation_gate(r).matrix
    expected = (
        scipy.linalg.expm(1j * -1 * gell_mann(2).matrix / 3)
        @ scipy.linalg.expm(1j * 1 * gell_mann(5).matrix / 3)
        @ scipy.linalg.expm(1j * 0.25 * gell_mann(7).matrix / 3)
    )
    np.testing.assert_allclose(m, expected, atol=1e-12)
    assert np.max(np.abs(m @ adjoint(rotation_gate(r)).matrix - np.eye(3))) < 1e-12


def test_rotation_factors_order():
    f = rotation_factors(RotationParams(0.3, 0.6, 0.9, "one"))
    np.testing.assert_allclose(f[0].matrix, exp_generator(gell_mann(2), 0.1).matrix)
    np.testing.assert_allclose(f[1].matrix, exp_generator(gell_mann(5), 0.2).matrix)
    np.testing.assert_allclose(f[2].matrix, exp_generator(gell_mann(7), 0.3).matrix)


def test_rotation_params_from_l():
    p = RotationParams.from_l(1.0, 0.0, -1.0)
    assert p.angles == pytest.approx((0.0, -np.pi, -2 * np.pi))
    with pytest.raises(ValueError):
        RotationParams.from_l(1.5, 0, 0)
    with pytest.raises(ValueError):
        RotationParams(0, 0, 0, form="three")


def test_phase_unitary_diagonal():
    u = phase_unitary(np.diag([1 / 3, 4 / 9, 5 / 9]), 2).matrix
    np.testing.assert_allclose(np.diag(u), [1, OMEGA, OMEGA**2], atol=1e-12)
    np.testing.assert_allclose(u, np.diag(np.diag(u)), atol=1e-12)


def test_phase_unitary_zero_matrix():
    for n in (1, 2, 5):
        np.testing.assert_allclose(phase_unitary(np.zeros((3, 3)), n).matrix, np.eye(3), atol=1e-15)


def test_phase_unitary_matches_expm():
    for n in (1, 2, 3):
        expected = scipy.linalg.expm(2j * np.pi * 3 ** (n - 1) * REF_A)
        np.testing.assert_allclose(phase_unitary(REF_A, n).matrix, expected, atol=1e-9)


def test_phase_unitary_reference_eigenphases():
    lam, vecs = np.linalg.eigh(REF_A)
    u = phase_unitary(REF_A, 2).matrix
    phases = np.array([np.vdot(vecs[:, j], u @ vecs[:, j]) for j in range(3)])
    # printed A is rounded to 5 decimals, so the eigenvalues sit ~1e-5 off the
    # exact ninths; the phase gap is bounded by 2*pi*3*|dlambda|
    dlam = np.max(np.abs(lam - [1 / 3, 4 / 9, 5 / 9]))
    assert dlam < 1e-4
    np.testing.assert_allclose(phases, [1, OMEGA, OMEGA**2], atol=2 * np.pi * 3 * dlam + 1e-12)
    for j in range(3):
        v = vecs[:, j]
        assert np.linalg.norm(u @ v - np.exp(2j * np.pi * 3 * lam[j]) * v) < 1e-8


def test_phase_unitary_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        phase_unitary(np.array([[0, 1], [0, 0]]), 1)


def test_controlled_power_blocks():
    rng = np.random.default_rng(2)
    u = UnitaryGate(random_unitary(rng))
    c = controlled_power(u, 3).matrix
    np.testing.assert_allclose(c[:3, :3], np.eye(3), atol=1e-15)
    np.testing.assert_allclose(c[3:6, 3:6], u.matrix, atol=1e-15)
    np.testing.assert_allclose(c[6:, 6:], u.matrix @ u.matrix, atol=1e-12)
    assert np.count_nonzero(c[:3, 3:]) == 0


def test_controlled_select():
    eye = UnitaryGate(np.eye(3))
    np.testing.assert_array_equal(controlled_select([eye] * 3, 3).matrix, np.eye(9))
    v = exp_generator(gell_mann(5), 0.4)
    m = controlled_select([eye, eye, v], 3).matrix
    np.testing.assert_array_equal(m[:6, :6], np.eye(6))
    np.testing.assert_array_equal(m[6:, 6:], v.matrix)
    with pytest.raises(ValueError):
        controlled_select([eye, eye], 3)


def test_controlled_select_ideal_amplitudes():
    lam = np.array([1 / 3, 4 / 9, 5 / 9])
    C = 0.3
    blocks = [exp_generator(gell_mann(5), -np.arcsin(C / x)) for x in lam]
    m = controlled_select(blocks, 3).matrix
    for c in range(3):
        col = m[:, 3 * c]  # control c, target |0>
        assert col[3 * c + 2] == pytest.approx(C / lam[c], abs=1e-14)
        assert col[3 * c] == pytest.approx(np.sqrt(1 - (C / lam[c]) ** 2), abs=1e-14)


def test_adjoint():
    np.testing.assert_array_equal(adjoint(UnitaryGate(np.eye(3))).matrix, np.eye(3))
    h = qutrit_hadamard()
    np.testing.assert_allclose(adjoint(h).matrix @ h.matrix, np.eye(3), atol=1e-12)
    neg = scipy.linalg.expm(-2j * np.pi * 3 * REF_A)
    np.testing.assert_allclose(adjoint(phase_unitary(REF_A, 2)).matrix, neg, atol=1e-9)


def test_unitary_gate_rejects_non_unitary():
    with pytest.raises(ValueError, match="not unitary"):
        UnitaryGate(np.diag([1, 1, 2]))
