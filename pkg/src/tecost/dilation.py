"""Unitary dilations realizing a channel at its time-energy cost.

``choi_dilation`` builds, for a contraction K, a 2n x 2n unitary with
K as its top-left block whose largest eigenvalue angle is exactly
arccos of the smallest eigenvalue of (K + K†)/2 — the attainability
half of the cost formula.  ``optimal_extension`` wraps that core in
the full channel construction: rotate the Kraus list so the first
operator is K at the optimal coefficient vector, dilate it, and
conjugate by an ancilla-space unitary matching the remaining
operators.  ``unitary_max_norm`` evaluates max_j |theta_j| over
eigenvalue arguments in (-pi, pi].
"""

import json
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .channel import KrausChannel
from .matops import hermitian_eig, is_unitary, psd_sqrt

__all__ = [
    "DilationResult",
    "GramMismatch",
    "choi_dilation",
    "extension_channel",
    "optimal_extension",
    "unitary_max_norm",
    "unitary_to_json",
    "unitary_from_json",
]


class GramMismatch(Exception):
    """The two column stacks do not share a Gram matrix within 1e-7."""


@dataclass(frozen=True, eq=False)
class DilationResult:
    """A unitary dilation with its block layout and realized cost.

    block_dims = (ancilla dimension, system dimension); maxnorm is
    unitary_max_norm(U); realized_v is the coefficient vector whose
    K_v sits in the top-left block (None for the bare contraction
    dilation).
    """

    U: np.ndarray
    block_dims: Tuple[int, int]
    maxnorm: float
    realized_v: Optional[np.ndarray]


def unitary_max_norm(U):
    """max_j |theta_j| over the eigenvalue arguments of a unitary.

    Arguments are taken in (-pi, pi], with values within 1e-12 of -pi
    mapped to pi.  Computed through the commuting Hermitian pair
    (U+U†)/2, (U-U†)/2i so only Hermitian eigensolves are involved.
    """
    U = np.asarray(U, dtype=complex)
    if not is_unitary(U, 1e-8):
        raise ValueError("input is not unitary within 1e-8")
    C = (U + U.conj().T) / 2
    S = (U - U.conj().T) / 2j
    w, V = hermitian_eig(C)
    m = w.shape[0]
    worst = 0.0
    scale = max(1.0, float(np.abs(w).max()))
    i = 0
    while i < m:
        j = i + 1
        while j < m and w[j] - w[j - 1] <= 1e-8 * scale:
            j += 1
        block = V[:, i:j]
        Sb = block.conj().T @ S @ block
        s_vals = np.linalg.eigvalsh((Sb + Sb.conj().T) / 2)
        c = float(w[i:j].mean())
        for s in s_vals:
            th = float(np.arctan2(float(s), c))
            if th < -np.pi + 1e-12:
                th = np.pi
            worst = max(worst, abs(th))
        i = j
    return worst


def _complete_unitary(Y):
    """Unitary whose first columns coincide with the near-isometry Y."""
    m2, n = Y.shape
    M = np.concatenate([Y, np.eye(m2, dtype=complex)[:, : m2 - n]], axis=1)
    Q, R = np.linalg.qr(M)
    d = np.diagonal(R).copy()
    ph = np.where(np.abs(d) > 1e-8, d / np.where(np.abs(d) > 1e-8, np.abs(d), 1.0), 1.0)
    return Q * np.conj(ph)[None, :]


def _peel(K):
    """Split off the extreme rotation pair of a contraction.

    Returns (rows, Gp, Kp): two (vector, angle) rows absorbing the
    minimal eigenpair of (K + K†)/2 as a +/- theta rotation, plus the
    compressed remainder contraction Kp on the complement factor Gp
    (None when nothing remains).
    """
    m = K.shape[0]
    H = (K + K.conj().T) / 2
    J = (K - K.conj().T) / 2j
    w, V = hermitian_eig(H)
    c = float(np.clip(w[0], -1.0, 1.0))
    x1 = V[:, 0]
    s = np.sqrt(max(0.0, 1.0 - c * c))
    theta = float(np.arccos(c))
    rows = []
    if s < 1e-10:
        rows.append((x1.copy(), theta))
        rows.append((np.zeros(m, complex), -theta))
        A1 = np.outer(x1, x1.conj())
        R = K - np.exp(1j * theta) * A1
    else:
        g = J @ x1
        # <x1, g> is real in exact arithmetic; project out the
        # round-off imaginary part before it is amplified by 1/s
        g = g - 1j * float(np.imag(np.vdot(x1, g))) * x1
        j1 = float(np.clip(np.real(np.vdot(x1, g)), -s, s))
        u = (x1 + g / s) / 2
        v = (x1 - g / s) / 2
        pu = (s + j1) / (2 * s)
        qv = (s - j1) / (2 * s)
        A1 = np.zeros((m, m), complex)
        P = np.zeros((m, m), complex)
        if pu > 1e-16:
            p = u / np.sqrt(pu)
            rows.append((p, theta))
            A1 += np.outer(p, p.conj())
            P += np.exp(1j * theta) * np.outer(p, p.conj())
        else:
            rows.append((np.zeros(m, complex), theta))
        if qv > 1e-16:
            q = v / np.sqrt(qv)
            rows.append((q, -theta))
            A1 += np.outer(q, q.conj())
            P += np.exp(-1j * theta) * np.outer(q, q.conj())
        else:
            rows.append((np.zeros(m, complex), -theta))
        R = K - P
    B = np.eye(m, dtype=complex) - A1
    wB, VB = hermitian_eig(B)
    keep = wB > 1e-11
    if not keep.any():
        return rows, None, None
    Vp = VB[:, keep]
    lam = wB[keep]
    Gp = Vp * np.sqrt(lam)[None, :]
    inv = 1.0 / np.sqrt(lam)
    Kp = (inv[:, None] * (Vp.conj().T @ R @ Vp)) * inv[None, :]
    return rows, Gp, Kp


def _pair_peel_dilation(K):
    """2n x 2n unitary with top-left K, built angle pair by angle pair."""
    n = K.shape[0]
    cur = K
    Psi = np.eye(n, dtype=complex)
    all_rows = []
    all_angles = []
    while cur is not None and cur.shape[0] > 0:
        rows, Gp, Kp = _peel(cur)
        for vec, ang in rows:
            all_rows.append(Psi @ vec)
            all_angles.append(ang)
        if Gp is None:
            break
        Psi = Psi @ Gp
        cur = Kp
        if len(all_rows) > 2 * n + 4:
            raise RuntimeError("peeling did not terminate")
    while len(all_rows) < 2 * n:
        all_rows.append(np.zeros(n, complex))
        all_angles.append(0.0)
    if len(all_rows) > 2 * n:
        raise RuntimeError("peeling produced %d rows for side %d" % (len(all_rows), 2 * n))
    Y = np.array([r.conj() for r in all_rows])
    D = np.exp(1j * np.array(all_angles))
    Wc = _complete_unitary(Y)
    U0 = (Wc.conj().T * D[None, :]) @ Wc
    # rotate the ancilla half so the bottom-left block is the
    # canonical PSD square root
    C0 = U0[n:, :n]
    Wsv, _sv, Xh = np.linalg.svd(C0)
    Vfix = Xh.conj().T @ Wsv.conj().T
    T = np.eye(2 * n, dtype=complex)
    T[n:, n:] = Vfix
    return T @ U0 @ T.conj().T


def choi_dilation(K):
    """Minimal-angle 2n x 2n unitary dilation of a contraction K.

    The result has K as its top-left block, psd_sqrt(I - K†K) as its
    bottom-left block, and max-norm arccos(lambda_min((K + K†)/2)).
    Singular values may exceed 1 by at most 1e-9 (they are clamped).
    """
    K = np.array(K, dtype=complex)
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise ValueError("K must be square")
    n = K.shape[0]
    if n == 0:
        raise ValueError("K must be nonempty")
    sv = np.linalg.svd(K, compute_uv=False)
    if sv.size and sv[0] > 1 + 1e-9:
        raise ValueError("operator norm %.12f exceeds 1 beyond tolerance" % sv[0])
    if sv.size and sv[0] > 1:
        K = K / sv[0]
    U = _pair_peel_dilation(K)
    return DilationResult(
        U=U,
        block_dims=(2, n),
        maxnorm=unitary_max_norm(U),
        realized_v=None,
    )


def _householder_row_unitary(row):
    """d x d unitary with the given unit vector as first row."""
    d = row.shape[0]
    basis = np.concatenate([row.conj().reshape(d, 1), np.eye(d, dtype=complex)], axis=1)
    Q, _ = np.linalg.qr(basis)
    phase = row @ Q[:, 0]
    Q[:, 0] *= np.conj(phase) / abs(phase)
    for j in range(1, d):
        col = Q[:, j]
        i = int(np.argmax(np.abs(col) > 1e-12))
        z = col[i]
        Q[:, j] = col * (np.conj(z) / abs(z))
    return Q.conj().T


def optimal_extension(ch, cost_result):
    """Unitary extension of a channel at (d+1)n x (d+1)n realizing its cost.

    The channel is padded with one zero Kraus operator; the padded
    coefficient vector v* from cost_result is extended to a unitary V
    whose first row it forms; the rotated first operator K_{v*} is
    dilated; and the ancilla complement is rotated to match the
    remaining operators.  Raises GramMismatch when the two column
    stacks fail to share their Gram matrix within 1e-7.
    """
    d = len(ch.ops)
    n = ch.dim
    dprime = d + 1
    padded = list(ch.ops) + [np.zeros((n, n), dtype=complex)]
    v = np.zeros(dprime, dtype=complex)
    v[:d] = np.asarray(cost_result.optimal_v, dtype=complex).reshape(-1)
    nrm = float(np.linalg.norm(v))
    rescaled = False
    if nrm < 1e-12:
        # value 0 with a vanishing optimizer: any unit direction works
        v = np.zeros(dprime, dtype=complex)
        v[0] = 1.0
    else:
        rescaled = nrm < 1 - 1e-9
        v = v / nrm
    V = _householder_row_unitary(v)
    stack = np.stack(padded)
    rotated = np.einsum("ij,jab->iab", V, stack)
    K1 = rotated[0]
    if rescaled and cost_result.cos_value > 0:
        after = float(np.linalg.eigvalsh((K1 + K1.conj().T) / 2)[0])
        if after < cost_result.cos_value - 1e-9:
            warnings.warn(
                "normalizing the coefficient vector lowered the objective "
                "from %.9f to %.9f" % (cost_result.cos_value, after),
                RuntimeWarning,
            )
    core = choi_dilation(K1)
    Utilde = core.U
    G2 = np.eye(n, dtype=complex) - K1.conj().T @ K1
    G = psd_sqrt(G2)
    mrows = (dprime - 1) * n
    M1 = np.zeros((mrows, n), dtype=complex)
    M1[:n, :] = G
    M2 = rotated[1:].reshape(mrows, n)
    wG, VG = hermitian_eig(G2)
    keep = np.sqrt(np.clip(wG, 0.0, None)) > 1e-10
    Vr = VG[:, keep]
    sr = np.sqrt(wG[keep])
    Ginv_cols = Vr / sr[None, :]
    B1 = M1 @ Ginv_cols
    B2 = M2 @ Ginv_cols
    F1 = _complete_unitary(B1)
    F2 = _complete_unitary(B2)
    W = F2 @ F1.conj().T
    resid = np.abs(W @ M1 - M2).max()
    if resid > 1e-7:
        raise GramMismatch(
            "column stacks disagree after matching: residual %.3e > 1e-7" % resid
        )
    size = dprime * n
    T = np.eye(size, dtype=complex)
    T[n:, n:] = W
    Ubig = np.eye(size, dtype=complex)
    Ubig[: 2 * n, : 2 * n] = Utilde
    U = T @ Ubig @ T.conj().T
    return DilationResult(
        U=U,
        block_dims=(dprime, n),
        maxnorm=unitary_max_norm(U),
        realized_v=v,
    )


def extension_channel(U, n):
    """Channel implemented by a block unitary with the ancilla at |0>.

    The Kraus operators are the d' blocks of the first block-column
    of U, ancilla index major.
    """
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError("U must be square")
    size = U.shape[0]
    if n < 1 or size % n != 0:
        raise ValueError("side %d is not a multiple of n = %d" % (size, n))
    if not is_unitary(U, 1e-8):
        raise ValueError("input is not unitary within 1e-8")
    dprime = size // n
    ops = [U[i * n : (i + 1) * n, :n] for i in range(dprime)]
    return KrausChannel(ops)


def unitary_to_json(U):
    """Serialize a unitary to JSON (same entry encoding as channels)."""
    U = np.asarray(U, dtype=complex)

    def num(x):
        return float("%.17g" % x)

    mat = [[[num(z.real), num(z.imag)] for z in row] for row in U]
    return json.dumps({"dim": U.shape[0], "matrix": mat}, indent=1)


def unitary_from_json(text):
    """Parse the unitary JSON format; unknown fields are rejected."""
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError("unitary file must be a JSON object")
    extra = set(data) - {"dim", "matrix"}
    if extra:
        raise ValueError("unknown fields in unitary file: %s" % ", ".join(sorted(extra)))
    if "dim" not in data or "matrix" not in data:
        raise ValueError("unitary file needs 'dim' and 'matrix' fields")
    n = data["dim"]
    if not isinstance(n, int) or n < 1:
        raise ValueError("'dim' must be a positive integer")
    rows = data["matrix"]
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValueError("matrix rows do not match dim %d" % n)
    U = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
                raise ValueError("matrix entries must be [re, im] pairs")
            U[i, j] = complex(float(entry[0]), float(entry[1]))
    return U
