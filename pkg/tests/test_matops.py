"""Dense matrix helper tests."""

import numpy as np
import pytest

from tecost import hermitian_eig, is_unitary, kron, partial_trace_first, psd_sqrt


def random_matrix(n, seed):
    rng = np.random.default_rng(seed)
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def test_hermitian_eig_diagonal():
    w, V = hermitian_eig(np.diag([3.0, 1.0]).astype(complex))
    assert np.allclose(w, [1.0, 3.0])


def test_hermitian_eig_pauli_x():
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    w, V = hermitian_eig(X)
    assert np.allclose(w, [-1.0, 1.0])


def test_hermitian_eig_reconstruction():
    M = random_matrix(5, 0)
    H = (M + M.conj().T) / 2
    w, V = hermitian_eig(H)
    scale = max(1.0, float(np.abs(H).max()))
    assert np.abs((V * w) @ V.conj().T - H).max() <= 1e-10 * scale
    assert np.abs(V.conj().T @ V - np.eye(5)).max() <= 1e-10


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))


def test_hermitian_eig_rejects_non_square():
    with pytest.raises(ValueError):
        hermitian_eig(np.zeros((2, 3), dtype=complex))


def test_psd_sqrt_identity():
    assert np.allclose(psd_sqrt(np.eye(3, dtype=complex)), np.eye(3))


def test_psd_sqrt_diagonal():
    S = psd_sqrt(np.diag([4.0, 9.0]).astype(complex))
    assert np.allclose(S, np.diag([2.0, 3.0]))


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_psd_sqrt_squares_back(seed):
    M = random_matrix(3, seed)
    P = M.conj().T @ M
    S = psd_sqrt(P)
    assert np.abs(S @ S - P).max() <= 1e-9
    assert np.abs(S - S.conj().T).max() <= 1e-12


def test_psd_sqrt_of_square_is_identity_map():
    M = random_matrix(3, 5)
    S0 = psd_sqrt(M.conj().T @ M)
    assert np.abs(psd_sqrt(S0 @ S0) - S0).max() <= 1e-8


def test_psd_sqrt_rejects_indefinite():
    with pytest.raises(ValueError):
        psd_sqrt(np.diag([1.0, -0.5]).astype(complex))


def test_kron_identity():
    assert np.allclose(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_block_pattern():
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    K = kron(X, np.eye(2))
    expect = np.zeros((4, 4))
    expect[0:2, 2:4] = np.eye(2)
    expect[2:4, 0:2] = np.eye(2)
    assert np.allclose(K, expect)


def test_kron_mixed_product():
    A, B, C, D = (random_matrix(2, s) for s in range(4))
    lhs = kron(A, B) @ kron(C, D)
    rhs = kron(A @ C, B @ D)
    assert np.abs(lhs - rhs).max() <= 1e-12


def test_partial_trace_factorized():
    rng = np.random.default_rng(3)
    sigma = random_matrix(2, 10)
    rho = random_matrix(2, 11)
    out = partial_trace_first(kron(sigma, rho), 2, 2)
    assert np.abs(out - np.trace(sigma) * rho).max() <= 1e-12


def test_partial_trace_identity():
    assert np.allclose(partial_trace_first(np.eye(4, dtype=complex), 2, 2), 2 * np.eye(2))


def test_partial_trace_ancilla():
    rho = random_matrix(3, 12)
    ket0 = np.zeros((2, 2), dtype=complex)
    ket0[0, 0] = 1.0
    assert np.abs(partial_trace_first(kron(ket0, rho), 2, 3) - rho).max() <= 1e-12


def test_partial_trace_linear():
    M, N = random_matrix(4, 13), random_matrix(4, 14)
    a, b = 0.7, -1.3 + 0.2j
    lhs = partial_trace_first(a * M + b * N, 2, 2)
    rhs = a * partial_trace_first(M, 2, 2) + b * partial_trace_first(N, 2, 2)
    assert np.abs(lhs - rhs).max() <= 1e-12


def test_partial_trace_preserves_trace():
    M = random_matrix(6, 15)
    out = partial_trace_first(M, 2, 3)
    assert abs(np.trace(out) - np.trace(M)) <= 1e-12


def test_partial_trace_dimension_mismatch():
    with pytest.raises(ValueError):
        partial_trace_first(np.eye(5, dtype=complex), 2, 2)


def test_is_unitary():
    assert is_unitary(np.eye(3, dtype=complex), 1e-10)
    assert not is_unitary(np.diag([1.0, 0.999]).astype(complex), 1e-10)
    c, s = np.cos(np.pi / 4), np.sin(np.pi / 4)
    R = np.array([[c, -s], [s, c]], dtype=complex)
    assert is_unitary(R, 1e-12)
