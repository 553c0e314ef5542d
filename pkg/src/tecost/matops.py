"""Dense complex matrix helpers shared by every other module.

Thin contracts over the eigensolver kernels plus the handful of
tensor-algebra operations (Kronecker products, partial traces,
unitarity checks) the channel and dilation code leans on.
"""

import numpy as np

from . import _kernels

__all__ = [
    "hermitian_eig",
    "psd_sqrt",
    "kron",
    "partial_trace_first",
    "is_unitary",
]


def _as_square(M, name="matrix"):
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("%s must be square, got shape %r" % (name, M.shape))
    if not np.isfinite(M).all():
        raise ValueError("%s has non-finite entries" % name)
    return M


def hermitian_eig(H):
    """Eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    H : array_like
        Square matrix, Hermitian to within 1e-10 (max entry of H - H†).

    Returns
    -------
    w : ndarray
        Real eigenvalues in ascending order.
    V : ndarray
        Unitary matrix of eigenvectors (columns), each phased so its
        first component of magnitude above 1e-12 is real nonnegative.

    Raises
    ------
    ValueError
        If H is not square or not Hermitian within tolerance.
    """
    H = _as_square(H, "H")
    dev = np.abs(H - H.conj().T).max() if H.size else 0.0
    if dev > 1e-10:
        raise ValueError(
            "matrix is not Hermitian: max |H - H^dagger| entry %.3e exceeds 1e-10" % dev
        )
    return _kernels.eigh((H + H.conj().T) / 2)


def psd_sqrt(P):
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues down to -1e-10 are treated as round-off and clamped to
    zero; anything below that raises ValueError.
    """
    P = _as_square(P, "P")
    w, V = hermitian_eig(P)
    if w.size and w[0] < -1e-10:
        raise ValueError(
            "matrix is not positive semidefinite: min eigenvalue %.3e < -1e-10" % w[0]
        )
    s = np.sqrt(np.clip(w, 0.0, None))
    S = (V * s) @ V.conj().T
    return (S + S.conj().T) / 2


def kron(A, B):
    """Kronecker product of two matrices."""
    return np.kron(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex))


def partial_trace_first(M, dB, dA):
    """Trace out the first tensor factor of a (dB*dA) x (dB*dA) matrix.

    The input is read as an operator on the tensor product of a dB-dim
    first factor and a dA-dim second factor; the result is the dA x dA
    operator left after tracing the first.
    """
    M = _as_square(M, "M")
    if M.shape[0] != dB * dA:
        raise ValueError(
            "matrix side %d does not match dB*dA = %d*%d" % (M.shape[0], dB, dA)
        )
    return np.einsum("iaib->ab", M.reshape(dB, dA, dB, dA))


def is_unitary(U, tol):
    """True iff max entry of U†U - I is at most tol."""
    U = _as_square(U, "U")
    n = U.shape[0]
    return bool(np.abs(U.conj().T @ U - np.eye(n)).max() <= tol)
