"""Monte-Carlo reference tests: cost search, fidelity search, determinism."""

import numpy as np
import pytest

from tecost import (
    KrausChannel,
    cost,
    fidelity_pure_vs_state,
    kron,
    make_depolarizing,
    make_random_channel,
    oracle_cost,
    oracle_fidelity,
)


def dephasing():
    return KrausChannel([np.diag([1.0, 0.0]).astype(complex),
                         np.diag([0.0, 1.0]).astype(complex)])


def test_cost_identity_exact():
    for seed in (0, 1, 17):
        est = oracle_cost(KrausChannel([np.eye(2, dtype=complex)]), 256, seed)
        assert abs(est.value) <= 1e-9


def test_cost_dephasing():
    est = oracle_cost(dephasing(), 10_000, 0)
    assert abs(est.value - np.pi / 4) <= 1e-4


@pytest.mark.parametrize("seed", [0, 1])
def test_cost_agrees_with_solvers(seed):
    ch = make_random_channel(2, 2, seed)
    est = oracle_cost(ch, 20_000, seed)
    assert abs(est.value - cost(ch).angle) <= 1e-3


def test_cost_estimate_fields():
    est = oracle_cost(dephasing(), 512, 3)
    assert est.samples == 512
    assert est.seed == 3
    assert est.refined
    assert est.argmin_or_argmax.shape == (2,)
    assert est.value >= 0.0


def test_cost_rejects_no_samples():
    with pytest.raises(ValueError):
        oracle_cost(dephasing(), 0, 0)


def test_cost_deterministic():
    a = oracle_cost(dephasing(), 4096, 5)
    b = oracle_cost(dephasing(), 4096, 5)
    assert a.value == b.value
    assert np.array_equal(a.argmin_or_argmax, b.argmin_or_argmax)
    c = oracle_cost(dephasing(), 4096, 6)
    assert c.value != a.value or not np.array_equal(c.argmin_or_argmax, a.argmin_or_argmax)


def test_cost_monotone_in_samples():
    ch = make_random_channel(3, 3, seed=9)
    # nested sample prefixes: the best cosine can only improve at
    # refinement-aligned sample counts
    cosines = [np.cos(oracle_cost(ch, m, 4).value) for m in (4096, 16384, 65536)]
    assert cosines[0] <= cosines[1] + 1e-15
    assert cosines[1] <= cosines[2] + 1e-15


def test_fidelity_pure_vs_state_projector():
    rng = np.random.default_rng(0)
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    psi /= np.linalg.norm(psi)
    assert abs(fidelity_pure_vs_state(psi, np.outer(psi, psi.conj())) - 1.0) <= 1e-12


def test_fidelity_pure_vs_state_mixed():
    psi = np.array([1.0, 0.0], dtype=complex)
    assert abs(fidelity_pure_vs_state(psi, np.eye(2) / 2) - np.sqrt(0.5)) <= 1e-12


def test_fidelity_bell_through_dephasing():
    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = 1 / np.sqrt(2)
    rho = np.outer(bell, bell.conj())
    out = sum(kron(K, np.eye(2)) @ rho @ kron(K, np.eye(2)).conj().T
              for K in dephasing().ops)
    assert abs(fidelity_pure_vs_state(bell, out) - np.sqrt(0.5)) <= 1e-12


def test_fidelity_pure_vs_state_validates():
    psi = np.array([1.0, 0.0], dtype=complex)
    with pytest.raises(ValueError):
        fidelity_pure_vs_state(2 * psi, np.eye(2) / 2)
    with pytest.raises(ValueError):
        fidelity_pure_vs_state(psi, np.eye(3) / 3)
    with pytest.raises(ValueError):
        fidelity_pure_vs_state(psi, np.diag([0.9, 0.4]).astype(complex))


def test_oracle_fidelity_identity():
    est = oracle_fidelity(KrausChannel([np.eye(2, dtype=complex)]), 2048, 0)
    assert abs(est.value - 1.0) <= 1e-9


def test_oracle_fidelity_fully_depolarizing():
    est = oracle_fidelity(make_depolarizing(2, 1.0), 20_000, 0)
    assert abs(est.value - 0.5) <= 5e-3


def test_oracle_fidelity_dephasing():
    est = oracle_fidelity(dephasing(), 20_000, 0)
    assert abs(est.value - np.sqrt(0.5)) <= 5e-3


def test_oracle_fidelity_deterministic():
    a = oracle_fidelity(dephasing(), 4096, 2)
    b = oracle_fidelity(dephasing(), 4096, 2)
    assert a.value == b.value


def test_fidelity_monotone_in_samples():
    ch = make_random_channel(2, 2, seed=13)
    vals = [oracle_fidelity(ch, m, 7).value for m in (4096, 16384, 65536)]
    assert vals[0] >= vals[1] - 1e-15
    assert vals[1] >= vals[2] - 1e-15


@pytest.mark.parametrize("seed", [0, 1])
def test_one_sided_bracketing(seed):
    ch = make_random_channel(2, 3, seed)
    res = cost(ch)
    assert oracle_cost(ch, 8192, seed).value >= res.angle - 1e-9
    assert oracle_fidelity(ch, 8192, seed).value >= res.cos_value - 1e-9
