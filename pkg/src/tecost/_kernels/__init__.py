"""Hermitian eigensolver kernels with a compiled fast path.

At import we try the Cython Jacobi extension and fall back to the
NumPy LAPACK path when it is unavailable.  Both lanes feed the same
post-processing (ascending sort, deterministic eigenvector phases),
so callers see identical contracts either way.  Batched helpers are
always NumPy-vectorized: batch results do not depend on the lane.
"""

import numpy as np

try:
    from ._jacobi import jacobi_eigh as _eigh_raw

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on build environment
    from ._fallback import eigh_raw as _eigh_raw

    BACKEND = "python"


def _fix_phases(V):
    """Rotate each column so its first component of magnitude > 1e-12
    is real and nonnegative.  Modifies V in place and returns it."""
    n = V.shape[0]
    for j in range(V.shape[1]):
        col = V[:, j]
        for i in range(n):
            z = col[i]
            if abs(z) > 1e-12:
                col *= np.conj(z) / abs(z)
                break
    return V


def eigh(H):
    """Eigendecomposition of a Hermitian matrix.

    Returns (w, V) with w ascending and columns of V unit-norm
    eigenvectors under the shared phase convention.
    """
    w, V = _eigh_raw(np.asarray(H, dtype=complex))
    order = np.argsort(w, kind="stable")
    w = np.asarray(w)[order]
    V = np.asarray(V)[:, order]
    return w, _fix_phases(V)


def eigvalsh(H):
    """Ascending eigenvalues of a Hermitian matrix."""
    w, _ = _eigh_raw(np.asarray(H, dtype=complex))
    return np.sort(np.asarray(w))


def eigh_batch(Hs):
    """Eigendecompositions for a stack of Hermitian matrices.

    Vectorized over the leading axis; independent of the compiled
    lane so batch consumers get bitwise-stable results.
    """
    w, V = np.linalg.eigh(np.asarray(Hs, dtype=complex))
    return w, V


def eigvalsh_batch(Hs):
    """Ascending eigenvalues for a stack of Hermitian matrices."""
    return np.linalg.eigvalsh(np.asarray(Hs, dtype=complex))
