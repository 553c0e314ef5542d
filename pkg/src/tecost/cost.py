"""Time-energy cost solvers.

The cost of a channel with Kraus operators K_1..K_d is

    arccos( max_{||v|| <= 1} lambda_min( (K_v + K_v†)/2 ) ),
    K_v = sum_j v_j K_j,

a concave maximization over the real 2d-dimensional unit ball once
v is split as v_j = a_j - i b_j.  Two independent routes are kept
deliberately separate so each certifies the other:

* ``solve_supergradient`` — projected supergradient ascent with
  multi-start, then a dual certificate (the same optimum equals
  min over density matrices rho of ||T(rho)||, T(rho)_k = Tr(rho G_k))
  obtained by a tiny barrier Newton solve, and level-calibrated
  Polyak steps to close the remaining gap.
* ``solve_sdp`` — the problem cast as a two-block linear matrix
  inequality and solved by a log-barrier Newton method.

Closed forms for recognized families, the trace lower bound, a
phase-scan upper bound, and the fidelity map live here too.
"""

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .channel import KrausChannel

__all__ = [
    "BarrierFailure",
    "CostResult",
    "HermitianPencil",
    "SdpProblem",
    "SolverConfig",
    "SolverDisagreement",
    "build_sdp",
    "cost",
    "cost_alpha_identity",
    "cost_projector",
    "fidelity_from_cost",
    "heuristic_upper_bound",
    "hermitian_parts",
    "lower_bound",
    "objective",
    "phase_optimize",
    "solve_sdp",
    "solve_supergradient",
]


class SolverDisagreement(Exception):
    """The two solvers differ beyond the acceptance threshold."""

    def __init__(self, angle_supergradient, angle_sdp):
        self.angle_supergradient = angle_supergradient
        self.angle_sdp = angle_sdp
        super().__init__(
            "solver disagreement: supergradient angle %.12f vs sdp angle %.12f "
            "(|diff| = %.3e > 1e-4)"
            % (angle_supergradient, angle_sdp, abs(angle_supergradient - angle_sdp))
        )


class BarrierFailure(Exception):
    """The barrier iterate lost positive definiteness."""


class HermitianPencil(NamedTuple):
    """Hermitian split K_j = A_j + i B_j, stacked along the first axis."""

    A: np.ndarray
    B: np.ndarray


@dataclass(frozen=True, eq=False)
class CostResult:
    """Outcome of a cost computation.

    angle = arccos(cos_value) lies in [0, pi/2]; optimal_v is the
    complex coefficient vector achieving cos_value; lower_bracket and
    upper_bracket sandwich the angle.
    """

    angle: float
    cos_value: float
    optimal_v: np.ndarray
    method: str
    lower_bracket: float
    upper_bracket: float
    iterations: int


@dataclass(frozen=True)
class SolverConfig:
    """Shared solver settings.

    max_iters and stall_limit drive the ascent phase; starts is the
    multi-start count; tol is the barrier solver's outer stop on the
    duality-gap estimate.
    """

    max_iters: int = 5000
    starts: int = 8
    seed: int = 0
    stall_limit: int = 200
    tol: float = 1e-9


@dataclass(frozen=True, eq=False)
class SdpProblem:
    """min g.x subject to, per block, H + sum_i x_i G_i >= 0."""

    m: int
    g: np.ndarray
    blocks: tuple  # of (Gs, H): Gs shape (m, s, s), H shape (s, s)


def hermitian_parts(ch):
    """Split the Kraus operators into Hermitian pairs.

    Returns a HermitianPencil with A_j = (K_j + K_j†)/2 and
    B_j = (K_j - K_j†)/(2i); K_j = A_j + i B_j.
    """
    stack = np.stack(ch.ops)
    dag = stack.conj().transpose(0, 2, 1)
    return HermitianPencil((stack + dag) / 2, (stack - dag) / 2j)


def _split_v(v, d):
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.shape[0] != d:
        raise ValueError("coefficient vector has length %d, expected %d" % (v.shape[0], d))
    nrm = np.linalg.norm(v)
    if nrm > 1 + 1e-12:
        raise ValueError("coefficient vector norm %.12f exceeds 1" % nrm)
    return np.concatenate([v.real, -v.imag])


def objective(ch, v):
    """lambda_min((K_v + K_v†)/2) at coefficient vector v, ||v|| <= 1."""
    pen = hermitian_parts(ch)
    x = _split_v(v, len(ch.ops))
    return _f_val(pen.A, pen.B, x)


def _f_val(A, B, x):
    d = A.shape[0]
    M = np.tensordot(x[:d], A, axes=1) + np.tensordot(x[d:], B, axes=1)
    return float(_kernels.eigvalsh(M)[0])


def _f_val_grad(A, B, x):
    d = A.shape[0]
    M = np.tensordot(x[:d], A, axes=1) + np.tensordot(x[d:], B, axes=1)
    w, V = _kernels.eigh(M)
    u = V[:, 0]
    ga = np.real(np.einsum("i,kij,j->k", u.conj(), A, u))
    gb = np.real(np.einsum("i,kij,j->k", u.conj(), B, u))
    return float(w[0]), np.concatenate([ga, gb])


def _ascent_starts(d, cfg):
    rng = np.random.default_rng(cfg.seed)
    starts = []
    for k in range(min(2 * d, 4)):
        e = np.zeros(2 * d)
        e[k] = 1.0
        starts.append(e)
    while len(starts) < cfg.starts:
        z = rng.standard_normal(2 * d)
        starts.append(z / np.linalg.norm(z))
    return np.array(starts[: max(cfg.starts, 1)])


def _ascent_phase(A, B, cfg):
    """Batched multi-start projected supergradient ascent."""
    d = A.shape[0]
    X = _ascent_starts(d, cfg)
    S = X.shape[0]
    bests = np.full(S, -np.inf)
    bx = X.copy()
    no_improve = np.zeros(S, dtype=int)
    alive = np.ones(S, dtype=bool)
    used = 0
    for t in range(1, cfg.max_iters + 1):
        if not alive.any():
            break
        used = t
        idx = np.nonzero(alive)[0]
        Xa = X[idx]
        M = np.einsum("sk,kij->sij", Xa[:, :d], A) + np.einsum("sk,kij->sij", Xa[:, d:], B)
        w, V = _kernels.eigh_batch(M)
        vals = w[:, 0]
        u = V[:, :, 0]
        ga = np.real(np.einsum("si,kij,sj->sk", u.conj(), A, u))
        gb = np.real(np.einsum("si,kij,sj->sk", u.conj(), B, u))
        g = np.concatenate([ga, gb], axis=1)
        imp = vals - bests[idx]
        upd = imp > 0
        bests[idx[upd]] = vals[upd]
        bx[idx[upd]] = Xa[upd]
        small = imp < 1e-12
        no_improve[idx[small]] += 1
        no_improve[idx[~small]] = 0
        alive[idx[no_improve[idx] >= cfg.stall_limit]] = False
        eta = 0.5 / np.sqrt(t)
        Xn = Xa + eta * g
        nrm = np.linalg.norm(Xn, axis=1)
        over = nrm > 1
        Xn[over] /= nrm[over, None]
        X[idx] = Xn
    k = int(np.argmax(bests))
    return float(bests[k]), bx[k].copy(), used


def _mixture_polish(A, B, x0, v0):
    """Steps toward supergradient-hull directions from near-minimal eigenspaces."""
    d = A.shape[0]
    best_val, best_x = v0, x0.copy()
    for _ in range(30):
        improved = False
        M = np.tensordot(best_x[:d], A, axes=1) + np.tensordot(best_x[d:], B, axes=1)
        ww, VV = _kernels.eigh(M)
        for tau in (1e-9, 1e-7, 1e-5, 1e-3):
            sel = ww <= ww[0] + tau
            U = VV[:, sel]
            Xmix = (U @ U.conj().T) / U.shape[1]
            ca = np.real(np.einsum("ij,kji->k", Xmix, A))
            cb = np.real(np.einsum("ij,kji->k", Xmix, B))
            c = np.concatenate([ca, cb])
            nc = np.linalg.norm(c)
            if nc < 1e-14:
                continue
            c /= nc
            for tt in (1.0, 0.5, 0.25, 0.1, 0.03, 0.01):
                cand = best_x + tt * (c - best_x)
                ncand = np.linalg.norm(cand)
                if ncand > 1:
                    cand = cand / ncand
                fv = _f_val(A, B, cand)
                if fv > best_val + 1e-15:
                    best_val, best_x = fv, cand
                    improved = True
        if not improved:
            break
    return best_val, best_x


def _coordinate_polish(A, B, x0, v0):
    """Axis-aligned step halving from 0.1 down to 1e-9."""
    d2 = 2 * A.shape[0]
    best_val, best_x = v0, x0.copy()
    step = 0.1
    while step > 1e-9:
        improved = True
        while improved:
            improved = False
            for i in range(d2):
                for sgn in (1.0, -1.0):
                    cand = best_x.copy()
                    cand[i] += sgn * step
                    nc = np.linalg.norm(cand)
                    if nc > 1:
                        cand /= nc
                    fv = _f_val(A, B, cand)
                    if fv > best_val + 1e-16:
                        best_val, best_x = fv, cand
                        improved = True
        step *= 0.5
    return best_val, best_x


def _traceless_basis(n):
    Es = []
    for k in range(n - 1):
        D = np.zeros((n, n), complex)
        D[k, k] = 1.0
        D[n - 1, n - 1] = -1.0
        Es.append(D)
    for j in range(n):
        for k in range(j + 1, n):
            S = np.zeros((n, n), complex)
            S[j, k] = 1.0
            S[k, j] = 1.0
            Es.append(S)
            Aa = np.zeros((n, n), complex)
            Aa[j, k] = 1j
            Aa[k, j] = -1j
            Es.append(Aa)
    return np.array(Es)


def _dual_newton(G, tol_gap=1e-12):
    """Certified level: min over density matrices rho of ||T(rho)||.

    G is the stacked (2d, n, n) Hermitian family; T(rho)_k = Tr(rho G_k).
    Any feasible rho upper-bounds the ascent optimum (weak duality), so
    the returned level certifies it.  Returns (level, T-vector, rho).
    """
    n = G.shape[1]
    if n == 1:
        t = np.real(G[:, 0, 0])
        return float(np.linalg.norm(t)), t, np.ones((1, 1), complex)
    Es = _traceless_basis(n)
    p = Es.shape[0]
    T0 = np.real(np.einsum("kii->k", G)) / n
    L = np.real(np.einsum("kij,aji->ka", G, Es))
    LtL = L.T @ L
    y = np.zeros(p)
    t_bar = 1.0
    I_n = np.eye(n) / n

    def phi(yv):
        r = I_n + np.einsum("a,aij->ij", yv, Es)
        try:
            cc = np.linalg.cholesky(r)
        except np.linalg.LinAlgError:
            return np.inf
        Tw = T0 + L @ yv
        return t_bar * float(Tw @ Tw) - 2.0 * float(np.log(np.diagonal(cc).real).sum())

    while True:
        for _ in range(80):
            rho = I_n + np.einsum("a,aij->ij", y, Es)
            ri = np.linalg.inv(rho)
            Tv = T0 + L @ y
            grad = 2.0 * t_bar * (L.T @ Tv) - np.real(np.einsum("ij,aji->a", ri, Es))
            RE = np.einsum("ij,ajk->aik", ri, Es)
            Hbar = np.real(np.einsum("aij,bji->ab", RE, RE))
            H = 2.0 * t_bar * LtL + Hbar
            try:
                cf = np.linalg.cholesky(H)
                dy = np.linalg.solve(cf.T, np.linalg.solve(cf, -grad))
            except np.linalg.LinAlgError:
                dy = np.linalg.lstsq(H, -grad, rcond=None)[0]
            dec = float(-grad @ dy)
            if dec / 2 <= 1e-12:
                break
            f0 = phi(y)
            al = 1.0
            while al > 1e-14:
                yn = y + al * dy
                if phi(yn) <= f0 + 0.01 * al * float(grad @ dy):
                    y = yn
                    break
                al *= 0.5
            else:
                break
        if n / t_bar <= tol_gap:
            break
        t_bar *= 10.0
    rho = I_n + np.einsum("a,aij->ij", y, Es)
    Tv = T0 + L @ y
    return float(np.linalg.norm(Tv)), Tv, rho


def _polyak_level(A, B, x0, v0, level, iters=400):
    """Supergradient steps with Polyak lengths toward a known level."""
    x = x0.copy()
    best, best_x = v0, x0.copy()
    lvl = max(level, v0)
    for _ in range(iters):
        v, g = _f_val_grad(A, B, x)
        if v > best:
            best, best_x = v, x.copy()
        gn2 = float(g @ g)
        if gn2 < 1e-30:
            break
        eta = (lvl - v) / gn2
        if eta <= 0:
            eta = 1e-12
        x = x + eta * g
        nn = np.linalg.norm(x)
        if nn > 1.0:
            x /= nn
    return best, best_x


def _result_from_value(ch, val, x, method, iterations):
    d = len(ch.ops)
    if val < 0.0:
        val = 0.0
        x = np.zeros(2 * d)
    cos_value = float(np.clip(val, 0.0, 1.0))
    angle = float(np.arccos(cos_value))
    v = x[:d] - 1j * x[d:]
    return CostResult(
        angle=angle,
        cos_value=cos_value,
        optimal_v=v,
        method=method,
        lower_bracket=lower_bound(ch),
        upper_bracket=angle,
        iterations=iterations,
    )


def solve_supergradient(ch, cfg=None):
    """Maximize the minimum-eigenvalue objective over the unit ball.

    Multi-start projected supergradient ascent, a dual certificate
    from the density-matrix side, and Polyak level steps to close the
    residual gap.  Returns a CostResult tagged "supergradient".
    """
    cfg = cfg or SolverConfig()
    if cfg.max_iters < 1 or cfg.starts < 1 or cfg.stall_limit < 1:
        raise ValueError("iteration counts in the solver config must be positive")
    pen = hermitian_parts(ch)
    A, B = pen.A, pen.B
    val, x, used = _ascent_phase(A, B, cfg)
    val, x = _mixture_polish(A, B, x, val)
    val, x = _coordinate_polish(A, B, x, val)
    G = np.concatenate([A, B], axis=0)
    ub, Tv, _rho = _dual_newton(G)
    tn = np.linalg.norm(Tv)
    if tn > 1e-12:
        vr = _f_val(A, B, Tv / tn)
        if vr > val:
            val, x = vr, Tv / tn
    rounds = 0
    for _ in range(4):
        if ub - val < 1e-10:
            break
        val, x = _polyak_level(A, B, x, val, ub, iters=400)
        rounds += 1
    return _result_from_value(ch, val, x, "supergradient", used + 400 * rounds)


def build_sdp(ch):
    """Cast the ball-constrained eigenvalue problem as two LMI blocks.

    Variables x = (a_1..a_d, b_1..b_d, lam), objective -lam.  Block 1
    (side 2d+1) is the arrow-matrix gadget whose spectrum at radius c
    is {1-c, 1, ..., 1, 1+c}, encoding ||(a, b)|| <= 1; block 2 (side n)
    is sum_j (a_j A_j + b_j B_j) - lam I >= 0.
    """
    pen = hermitian_parts(ch)
    d, n = pen.A.shape[0], pen.A.shape[1]
    m = 2 * d + 1
    G1 = np.zeros((m, m, m))
    for j in range(2 * d):
        G1[j, j, m - 1] = 1.0
        G1[j, m - 1, j] = 1.0
    H1 = np.eye(m)
    G2 = np.empty((m, n, n), dtype=complex)
    G2[:d] = pen.A
    G2[d : 2 * d] = pen.B
    G2[m - 1] = -np.eye(n)
    H2 = np.zeros((n, n), dtype=complex)
    g = np.zeros(m)
    g[m - 1] = -1.0
    blocks = ((G1.astype(complex), H1.astype(complex)), (G2, H2))
    return SdpProblem(m=m, g=g, blocks=blocks)


def solve_sdp(prob, cfg=None):
    """Log-barrier Newton solver for a two-block LMI problem.

    Starts from the strictly interior point x = (0, ..., 0, -1),
    multiplies the barrier parameter by 10 per outer stage, and stops
    when (total block side)/t falls below cfg.tol.  Returns (x, value)
    with value the last component of x.
    """
    cfg = cfg or SolverConfig()
    m, g = prob.m, prob.g
    x = np.zeros(m)
    x[m - 1] = -1.0

    def block_vals(y):
        out = []
        for Gs, H in prob.blocks:
            out.append(H + np.tensordot(y, Gs, axes=1))
        return out

    def chol_or_none(S):
        try:
            return np.linalg.cholesky(S)
        except np.linalg.LinAlgError:
            return None

    for S in block_vals(x):
        if chol_or_none(S) is None:
            raise BarrierFailure("start point is not strictly feasible")

    nu = sum(H.shape[0] for _, H in prob.blocks)
    t = 1.0
    newton_total = 0

    def phi(y):
        total = t * float(g @ y)
        for S in block_vals(y):
            c = chol_or_none(S)
            if c is None:
                return np.inf
            total -= 2.0 * float(np.log(np.diagonal(c).real).sum())
        return total

    while True:
        for _inner in range(60):
            Ss = block_vals(x)
            Sis = []
            for S in Ss:
                if chol_or_none(S) is None:
                    raise BarrierFailure(
                        "iterate left the cone at stage t=%g after %d Newton steps"
                        % (t, newton_total)
                    )
                Sis.append(np.linalg.inv(S))
            grad = t * g.copy()
            Ws = []
            for (Gs, _H), Si in zip(prob.blocks, Sis):
                W = np.einsum("ij,kjl->kil", Si, Gs)
                grad -= np.real(np.einsum("kii->k", W))
                Ws.append(W)
            H = np.zeros((m, m))
            for W in Ws:
                H += np.real(np.einsum("kij,lji->kl", W, W))
            try:
                cf = np.linalg.cholesky(H + 1e-14 * np.trace(H) / m * np.eye(m))
                dx = np.linalg.solve(cf.conj().T, np.linalg.solve(cf, -grad))
            except np.linalg.LinAlgError:
                dx = np.linalg.lstsq(H, -grad, rcond=None)[0]
            newton_total += 1
            dec = float(-grad @ dx)
            if dec / 2 <= 1e-10:
                break
            f0 = phi(x)
            alpha = 1.0
            while alpha > 1e-14:
                xn = x + alpha * dx
                if phi(xn) <= f0 + 0.01 * alpha * float(grad @ dx):
                    x = xn
                    break
                alpha *= 0.5
            else:
                break
        if nu / t <= cfg.tol:
            break
        t *= 10.0
    return x, float(x[m - 1])


def cost(ch, cfg=None):
    """Cost of a channel, cross-checked.

    Closed-form detectors run first; otherwise both solvers run and
    must agree within 1e-5 (warning) / 1e-4 (SolverDisagreement).
    """
    cfg = cfg or SolverConfig()
    closed = _closed_form_result(ch)
    if closed is not None:
        return closed
    res = solve_supergradient(ch, cfg)
    _x, sdp_val = solve_sdp(build_sdp(ch), cfg)
    angle_sdp = float(np.arccos(np.clip(max(0.0, sdp_val), 0.0, 1.0)))
    gap = abs(res.angle - angle_sdp)
    if gap > 1e-4:
        raise SolverDisagreement(res.angle, angle_sdp)
    if gap > 1e-5:
        warnings.warn(
            "solver cross-check gap %.3e is above 1e-5 (supergradient %.9f, sdp %.9f)"
            % (gap, res.angle, angle_sdp),
            RuntimeWarning,
        )
    return CostResult(
        angle=res.angle,
        cos_value=res.cos_value,
        optimal_v=res.optimal_v,
        method="supergradient",
        lower_bracket=lower_bound(ch),
        upper_bracket=heuristic_upper_bound(ch),
        iterations=res.iterations,
    )


def _closed_form_result(ch):
    d = len(ch.ops)
    hit = _alpha_identity_detect(ch)
    if hit is not None:
        alpha, v = hit
        cos_value = float(np.clip(alpha, 0.0, 1.0))
    else:
        hit = _projector_detect(ch)
        if hit is None:
            return None
        r, n, v = hit
        cos_value = float(np.clip(np.sqrt(r / n), 0.0, 1.0))
    angle = float(np.arccos(cos_value))
    return CostResult(
        angle=angle,
        cos_value=cos_value,
        optimal_v=v,
        method="closed-form",
        lower_bracket=lower_bound(ch),
        upper_bracket=heuristic_upper_bound(ch),
        iterations=0,
    )


def _alpha_identity_detect(ch):
    """Detect a canonical first operator proportional to the identity.

    Returns (|alpha|, optimal v for the original representation), or
    None.  In canonical form the first operator has trace
    s = sqrt(sum |Tr K_j|^2) >= 0, so alpha = s/n is real nonnegative
    and the optimizer pulls back to conj(traces)/s.
    """
    n = ch.dim
    traces = np.array([np.trace(M) for M in ch.ops])
    s = float(np.linalg.norm(traces))
    can = ch.canonical_form()
    K1 = can.ops[0]
    alpha = np.trace(K1) / n
    if np.abs(K1 - alpha * np.eye(n)).max() > 1e-9:
        return None
    if s <= 1e-14:
        # alpha = 0: every trace vanishes and the canonical first
        # operator is the zero matrix; v = 0 attains the value 0.
        return 0.0, np.zeros(len(ch.ops), dtype=complex)
    return abs(alpha), traces.conj() / s


def _projector_detect(ch):
    """Detect K_j = s_j P_j with equal-rank projectors P_j.

    Gatekeeping is the eigenvalue pattern of K_j†K_j (two levels,
    0 and |s_j|^2) followed by an idempotence check of K_j/s_j, which
    rejects unitary non-projector operators such as the Pauli family.
    Returns (r, n, optimal v) or None.
    """
    n = ch.dim
    ranks = []
    svals = []
    for K in ch.ops:
        Gm = K.conj().T @ K
        w, V = _kernels.eigh(Gm)
        top = w[-1]
        if top <= 1e-18:
            return None
        r = int(np.count_nonzero(w > top / 2))
        if np.abs(w[: n - r]).max(initial=0.0) > 1e-9:
            return None
        if np.abs(w[n - r :] - top).max() > 1e-9:
            return None
        u = V[:, -1]
        s = complex(u.conj() @ (K @ u))
        if abs(abs(s) - np.sqrt(top)) > 1e-6:
            return None
        P = K / s
        if np.abs(P - P.conj().T).max() > 1e-9 or np.abs(P @ P - P).max() > 1e-9:
            return None
        ranks.append(r)
        svals.append(s)
    if len(set(ranks)) != 1:
        return None
    r = ranks[0]
    v = np.sqrt(r / n) * np.conj(np.array(svals))
    return r, n, v


def cost_alpha_identity(ch):
    """Closed form when the canonical first operator is alpha I.

    Returns arccos|alpha| or None when the form is not matched.
    """
    hit = _alpha_identity_detect(ch)
    if hit is None:
        return None
    alpha, _v = hit
    return float(np.arccos(np.clip(alpha, 0.0, 1.0)))


def cost_projector(ch):
    """Closed form arccos(sqrt(r/n)) for equal-rank projector channels.

    Returns None when some operator is not a scaled projector or the
    ranks differ.
    """
    hit = _projector_detect(ch)
    if hit is None:
        return None
    r, n, _v = hit
    return float(np.arccos(np.clip(np.sqrt(r / n), 0.0, 1.0)))


def phase_optimize(K, grid=720):
    """Maximize g(theta) = lambda_min(e^{i theta} K + e^{-i theta} K†).

    Grid scan over [0, 2 pi) refined by golden-section search to 1e-10
    phase resolution.  Returns (theta, value).
    """
    K = np.asarray(K, dtype=complex)

    def gfun(th):
        M = np.exp(1j * th) * K
        return float(_kernels.eigvalsh(M + M.conj().T)[0])

    ths = np.linspace(0.0, 2 * np.pi, grid, endpoint=False)
    vals = np.array([gfun(t) for t in ths])
    k = int(np.argmax(vals))
    a = ths[(k - 1) % grid]
    b = ths[(k + 1) % grid]
    if b < a:
        b += 2 * np.pi
    gr = (np.sqrt(5) - 1) / 2
    c = b - gr * (b - a)
    dd = a + gr * (b - a)
    fc, fd = gfun(c), gfun(dd)
    while b - a > 1e-10:
        if fc >= fd:
            b, dd, fd = dd, c, fc
            c = b - gr * (b - a)
            fc = gfun(c)
        else:
            a, c, fc = c, dd, fd
            dd = a + gr * (b - a)
            fd = gfun(dd)
    th = (a + b) / 2
    val = gfun(th)
    if val < vals[k]:
        th, val = ths[k], float(vals[k])
    th = float(np.mod(th, 2 * np.pi))
    return th, val


def lower_bound(ch):
    """Trace bound arccos(min(1, sqrt(sum_j |Tr K_j|^2)/n))."""
    n = ch.dim
    s = np.sqrt(sum(abs(np.trace(M)) ** 2 for M in ch.ops))
    return float(np.arccos(min(1.0, s / n)))


def heuristic_upper_bound(ch):
    """Phase-scan upper bound arccos(sum_j c_j sigma_j / 2).

    sigma_j is the best phase-rotated minimum eigenvalue of K_j; the
    weights c maximize the sum over nonnegative unit vectors.
    """
    sig = np.array([phase_optimize(K)[1] for K in ch.ops])
    pos = np.clip(sig, 0.0, None)
    nrm = np.linalg.norm(pos)
    if nrm == 0.0:
        return float(np.arccos(0.0))
    c = pos / nrm
    return float(np.arccos(np.clip(float(c @ sig) / 2.0, 0.0, 1.0)))


def fidelity_from_cost(ch, cfg=None):
    """Worst-case entanglement fidelity cos(cost)."""
    return cost(ch, cfg).cos_value
