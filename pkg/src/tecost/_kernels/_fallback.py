"""NumPy code path for the Hermitian eigensolver kernel."""

import numpy as np


def eigh_raw(H):
    """Eigendecomposition of a complex Hermitian matrix.

    Returns (w, V) with w ascending. No phase normalization; the
    package-level wrapper applies the shared convention.
    """
    return np.linalg.eigh(H)
