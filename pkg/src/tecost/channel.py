"""Kraus-form quantum channels.

A channel is a list of d complex n x n operators summing (in the
K†K sense) to the identity.  This module owns representation-level
concerns: validation, application to states, Choi matrices as the
channel-equality witness, unitary recombinations of the operator
list, the traceless canonical form, standard families
(depolarizing, projector, random), and the JSON file format the
command line speaks.
"""

import json

import numpy as np

from .matops import is_unitary

__all__ = [
    "KrausChannel",
    "make_depolarizing",
    "make_projector_channel",
    "make_random_channel",
    "channel_to_json",
    "channel_from_json",
]


class KrausChannel:
    """Trace-preserving channel in Kraus form.

    Parameters
    ----------
    ops : sequence of array_like
        d operators, each n x n.  Sum of K_j† K_j must be within 1e-8
        (max entry) of the identity.

    Attributes
    ----------
    dim : int
        System dimension n.
    ops : tuple of ndarray
        The Kraus operators (read-only copies).
    """

    def __init__(self, ops):
        mats = [np.array(op, dtype=complex) for op in ops]
        if not mats:
            raise ValueError("channel needs at least one Kraus operator")
        n = mats[0].shape[0] if mats[0].ndim == 2 else 0
        for M in mats:
            if M.ndim != 2 or M.shape != (n, n) or n == 0:
                raise ValueError(
                    "every Kraus operator must be %d x %d, got shape %r"
                    % (n, n, M.shape)
                )
            if not np.isfinite(M).all():
                raise ValueError("Kraus operator has non-finite entries")
        gram = sum(M.conj().T @ M for M in mats)
        dev = np.abs(gram - np.eye(n)).max()
        if dev > 1e-8:
            raise ValueError(
                "channel is not trace-preserving: max entry of "
                "sum K_j^dagger K_j - I is %.3e (tolerance 1e-8)" % dev
            )
        for M in mats:
            M.flags.writeable = False
        self.dim = n
        self.ops = tuple(mats)

    @property
    def nkraus(self):
        """Number of Kraus operators d."""
        return len(self.ops)

    def __repr__(self):
        return "KrausChannel(dim=%d, nkraus=%d)" % (self.dim, len(self.ops))

    def validate(self, tol):
        """True iff shapes are consistent and sum K†K = I within tol."""
        n = self.dim
        if any(M.shape != (n, n) for M in self.ops):
            return False
        gram = sum(M.conj().T @ M for M in self.ops)
        return bool(np.abs(gram - np.eye(n)).max() <= tol)

    def apply(self, rho):
        """Apply the channel: rho -> sum_j K_j rho K_j†."""
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (self.dim, self.dim):
            raise ValueError(
                "state must be %d x %d, got %r" % (self.dim, self.dim, rho.shape)
            )
        out = np.zeros_like(rho)
        for M in self.ops:
            out += M @ rho @ M.conj().T
        return out

    def choi(self):
        """Choi matrix sum_{a,b} |a><b| (x) K(|a><b|), trace n.

        Channels are equal as maps iff their Choi matrices agree, which
        is how every representation-level identity in the tests is
        checked.
        """
        n = self.dim
        C = np.zeros((n * n, n * n), dtype=complex)
        for M in self.ops:
            w = M.T.reshape(-1)
            C += np.outer(w, w.conj())
        return C

    def kraus_transform(self, W):
        """Recombine the operator list by a d x d unitary W.

        Returns the channel with operators K'_i = sum_j W_ij K_j; the
        map itself (Choi matrix) is unchanged.
        """
        W = np.asarray(W, dtype=complex)
        d = len(self.ops)
        if W.shape != (d, d):
            raise ValueError("W must be %d x %d, got %r" % (d, d, W.shape))
        if not is_unitary(W, 1e-10):
            raise ValueError("W is not unitary within 1e-10")
        stack = np.stack(self.ops)
        new = np.einsum("ij,jab->iab", W, stack)
        return KrausChannel(list(new))

    def canonical_form(self):
        """Equivalent channel whose operators past the first are traceless.

        If some operator has nonzero trace, the first operator of the
        result is (sum_j conj(Tr K_j) K_j) / sqrt(sum_j |Tr K_j|^2) and
        the rest are traceless.  A d=1 channel is first padded with a
        zero operator.  If every trace already vanishes the channel is
        returned unchanged.
        """
        ch = self.pad_zero() if len(self.ops) == 1 else self
        traces = np.array([np.trace(M) for M in ch.ops])
        s = np.linalg.norm(traces)
        if s <= 1e-14:
            return ch
        d = len(ch.ops)
        first = traces.conj() / s
        # Unitary completion of the first row: QR of [first† | I] with
        # column phases fixed so row one is exactly the trace vector.
        basis = np.concatenate([first.conj().reshape(d, 1), np.eye(d, dtype=complex)], axis=1)
        Q, _ = np.linalg.qr(basis)
        phase = first @ Q[:, 0]
        Q[:, 0] *= np.conj(phase) / abs(phase)
        for j in range(1, d):
            col = Q[:, j]
            i = int(np.argmax(np.abs(col) > 1e-12))
            z = col[i]
            col *= np.conj(z) / abs(z)
        W = Q.conj().T
        return ch.kraus_transform(W)

    def pad_zero(self):
        """Append one all-zero Kraus operator (map unchanged)."""
        n = self.dim
        return KrausChannel(list(self.ops) + [np.zeros((n, n), dtype=complex)])


def _heisenberg_weyl(n):
    """Shift^a clock^b for (a, b) != (0, 0) in lexicographic order."""
    shift = np.roll(np.eye(n, dtype=complex), 1, axis=0)
    clock = np.diag(np.exp(2j * np.pi * np.arange(n) / n))
    out = []
    for a in range(n):
        for b in range(n):
            if a == 0 and b == 0:
                continue
            out.append(np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b))
    return out


def make_depolarizing(n, p):
    """Qudit depolarizing channel of strength p.

    Kraus form: sqrt(1 - p(n^2-1)/n^2) I plus the n^2 - 1 traceless
    Heisenberg-Weyl unitaries each scaled by sqrt(p)/n.  Valid for
    0 <= p <= n^2/(n^2 - 1).
    """
    if not 0 <= p <= n * n / (n * n - 1.0):
        raise ValueError(
            "p must lie in [0, n^2/(n^2-1)] = [0, %.6f], got %r"
            % (n * n / (n * n - 1.0), p)
        )
    alpha = np.sqrt(1.0 - p * (n * n - 1.0) / (n * n))
    ops = [alpha * np.eye(n, dtype=complex)]
    w = np.sqrt(p) / n
    ops.extend(w * P for P in _heisenberg_weyl(n))
    return KrausChannel(ops)


def make_projector_channel(projectors, scales):
    """Channel with K_j = s_j P_j for equal-rank projectors P_j.

    Each P_j must satisfy P^2 = P = P† within 1e-10, all ranks must
    agree, and sum |s_j|^2 P_j must equal the identity within 1e-8.
    """
    if len(projectors) != len(scales):
        raise ValueError("need one scale per projector")
    mats = [np.asarray(P, dtype=complex) for P in projectors]
    n = mats[0].shape[0]
    ranks = []
    for P in mats:
        if np.abs(P - P.conj().T).max() > 1e-10 or np.abs(P @ P - P).max() > 1e-10:
            raise ValueError("input is not a projector within 1e-10")
        ranks.append(int(round(np.trace(P).real)))
    if len(set(ranks)) != 1:
        raise ValueError("projector ranks differ: %r" % (ranks,))
    total = sum(abs(s) ** 2 * P for s, P in zip(scales, mats))
    if np.abs(total - np.eye(n)).max() > 1e-8:
        raise ValueError("sum |s_j|^2 P_j is not the identity within 1e-8")
    return KrausChannel([s * P for s, P in zip(scales, mats)])


def make_random_channel(n, d, seed):
    """Random channel from a Haar-ish dn x n isometry, split into d blocks.

    Deterministic in the seed; orthonormalized Gaussian columns.
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be at least 1")
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((d * n, n)) + 1j * rng.standard_normal((d * n, n))
    Q, R = np.linalg.qr(G)
    # fix column phases so the factorization (hence the channel) is
    # uniquely determined by the Gaussian draw
    dphase = np.diag(R).copy()
    dphase = np.where(np.abs(dphase) > 0, dphase / np.abs(dphase), 1.0)
    Q = Q * dphase.conj()
    return KrausChannel([Q[i * n:(i + 1) * n, :] for i in range(d)])


def channel_to_json(ch):
    """Serialize a channel to the JSON file format (17 significant digits)."""
    def num(x):
        return float("%.17g" % x)

    kraus = [
        [[[num(z.real), num(z.imag)] for z in row] for row in M]
        for M in ch.ops
    ]
    return json.dumps({"dim": ch.dim, "kraus": kraus}, indent=1)


def channel_from_json(text):
    """Parse the channel JSON format; unknown fields are rejected."""
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError("channel file must be a JSON object")
    extra = set(data) - {"dim", "kraus"}
    if extra:
        raise ValueError("unknown fields in channel file: %s" % ", ".join(sorted(extra)))
    if "dim" not in data or "kraus" not in data:
        raise ValueError("channel file needs 'dim' and 'kraus' fields")
    n = data["dim"]
    if not isinstance(n, int) or n < 1:
        raise ValueError("'dim' must be a positive integer")
    ops = []
    for M in data["kraus"]:
        if len(M) != n or any(len(row) != n for row in M):
            raise ValueError("Kraus operator rows do not match dim %d" % n)
        A = np.empty((n, n), dtype=complex)
        for i, row in enumerate(M):
            for j, entry in enumerate(row):
                if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
                    raise ValueError("matrix entries must be [re, im] pairs")
                A[i, j] = complex(float(entry[0]), float(entry[1]))
        ops.append(A)
    return KrausChannel(ops)
