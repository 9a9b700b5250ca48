import numpy as np
import pytest

from qefg import walker as qw
from qefg.statevector import make_rng

from helpers import random_unitary


def _convolution_oracle(amps, coin_op, length, k, boundary="periodic"):
    """Site-by-site transition equation with plain loops (periodic indices)."""
    assert boundary == "periodic"
    coin_dim = 2 * k + 1
    out = np.zeros_like(amps)
    for x in range(length):
        for mi in range(coin_dim):
            m = mi - k
            acc = 0j
            for li in range(coin_dim):
                acc += coin_op[mi, li] * amps[(x - m) % length, li]
            out[x, mi] = acc
    return out


def test_pure_shift_translates_plus_one_component():
    config = qw.WalkerConfig(power=1, length=9, boundary="periodic", initial_position=4,
                             initial_coin=np.array([0, 0, 1.0]))  # m = +1
    identity = np.eye(3, dtype=complex)
    state = qw.initial_state(config)
    for step_count in range(1, 4):
        state = qw.step(state, config, identity)
        mu = qw.position_distribution(state)
        assert mu[4 + step_count] == pytest.approx(1.0)


def test_step_operator_unitary_both_boundaries():
    rng = make_rng(2)
    for k in (1, 2, 3):
        for boundary in qw.BOUNDARIES:
            config = qw.WalkerConfig(power=k, length=4 * k + 3, boundary=boundary)
            coin = random_unitary(rng, 2 * k + 1)
            strategy = random_unitary(rng, 2 * k + 1)
            op = qw.make_step_operator(config, coin, strategy)
            defect = np.max(np.abs(op.conj().T @ op - np.eye(op.shape[0])))
            assert defect < 1e-10


def test_step_operator_matches_convolution_oracle_k2():
    rng = make_rng(3)
    config = qw.WalkerConfig(power=2, length=11, boundary="periodic", initial_position=5)
    coin = random_unitary(rng, 5)
    state = qw.initial_state(config)
    # a couple of steps to spread support first
    for _ in range(2):
        state = qw.step(state, config, coin)
    stepped = qw.step(state, config, coin)
    oracle = _convolution_oracle(state.amplitudes, coin, 11, 2)
    assert np.max(np.abs(stepped.amplitudes - oracle)) < 1e-12


@pytest.mark.parametrize("k", [1, 2, 3])
def test_operator_and_convolution_forms_agree(k):
    rng = make_rng(40 + k)
    config = qw.WalkerConfig(power=k, length=2 * (2 * k + 1) + 3, boundary="periodic",
                             initial_position=3)
    coin = random_unitary(rng, 2 * k + 1)
    strategy = random_unitary(rng, 2 * k + 1)
    op = qw.make_step_operator(config, coin, strategy)
    state = qw.initial_state(config)
    for _ in range(4):
        dense = (op @ state.amplitudes.reshape(-1)).reshape(state.amplitudes.shape)
        state = qw.step(state, config, coin, strategy)
        assert np.max(np.abs(state.amplitudes - dense)) < 1e-12


def test_identity_step_keeps_rest_component_in_place():
    config = qw.WalkerConfig(power=1, length=7, initial_position=3)
    identity = np.eye(3, dtype=complex)
    state = qw.step(qw.initial_state(config), config, identity, identity)
    mu = qw.position_distribution(state)
    assert mu[3] == pytest.approx(1.0)
    assert state.time == 1


def test_norm_drift_after_100_random_steps():
    rng = make_rng(5)
    config = qw.WalkerConfig(power=1, length=16, boundary="periodic", initial_position=8)
    state = qw.initial_state(config)
    for _ in range(100):
        state = qw.step(state, config, random_unitary(rng, 3), random_unitary(rng, 3))
        mu = qw.position_distribution(state)
        assert np.all(mu >= -1e-15)
        assert abs(mu.sum() - 1.0) < 1e-10
    assert abs(state.norm_squared() - 1.0) < 1e-8


def test_grover_coin_walk_matches_dense_operator_power():
    config = qw.WalkerConfig(power=1, length=21, boundary="periodic", initial_position=10)
    coin = qw.grover_coin(1)
    op = qw.make_step_operator(config, coin)
    state = qw.initial_state(config)
    steps = 12
    for _ in range(steps):
        state = qw.step(state, config, coin)
    dense = np.linalg.matrix_power(op, steps) @ qw.initial_state(config).amplitudes.reshape(-1)
    assert np.max(np.abs(state.amplitudes.reshape(-1) - dense)) < 1e-12


def test_position_distribution_point_mass_and_normalization():
    config = qw.WalkerConfig(power=1, length=9, initial_position=2)
    mu = qw.position_distribution(qw.initial_state(config))
    assert mu[2] == pytest.approx(1.0)
    assert mu.sum() == pytest.approx(1.0)


def test_spread_stats_point_and_uniform():
    point = np.zeros(11)
    point[4] = 1.0
    mean, std = qw.spread_stats(point)
    assert (mean, std) == (4.0, 0.0)
    uniform = np.full(10, 0.1)
    mean, _ = qw.spread_stats(uniform)
    assert mean == pytest.approx(4.5)


def test_quantum_spread_beats_classical_at_n60():
    n = 60
    length = 2 * n + 21
    center = length // 2
    config = qw.WalkerConfig(
        power=1, length=length, boundary="wall", initial_position=center,
        initial_coin=np.array([1.0, 0.0, 1.0j]) / np.sqrt(2.0),
    )
    state = qw.initial_state(config)
    coin = qw.hadamard_embed_coin()
    for _ in range(n):
        state = qw.step(state, config, coin)
    _, sigma_quantum = qw.spread_stats(qw.position_distribution(state))

    dist = np.zeros(length)
    dist[center] = 1.0
    kernel = np.array([0.5, 0.0, 0.5])
    for _ in range(n):
        dist = qw.classical_step(dist, kernel, "wall")
    _, sigma_classical = qw.spread_stats(dist)
    assert sigma_quantum > 2.0 * sigma_classical


def test_classical_step_identity_kernel():
    dist = np.zeros(9)
    dist[4] = 1.0
    out = qw.classical_step(dist, np.array([0.0, 1.0, 0.0]))
    assert np.allclose(out, dist)


def test_classical_step_diffusive_scaling():
    length = 301
    kernel = np.array([0.5, 0.0, 0.5])

    def sigma_after(n):
        dist = np.zeros(length)
        dist[length // 2] = 1.0
        for _ in range(n):
            dist = qw.classical_step(dist, kernel, "wall")
        return qw.spread_stats(dist)[1]

    ratio = sigma_after(100) / sigma_after(25)
    assert abs(ratio - 2.0) < 0.1


def test_classical_step_periodic_conserves_mass():
    rng = make_rng(6)
    dist = rng.random(13)
    dist /= dist.sum()
    out = qw.classical_step(dist, np.array([0.25, 0.5, 0.25]), "periodic")
    assert out.sum() == pytest.approx(1.0, abs=1e-12)


def test_classical_step_rejects_bad_kernel():
    dist = np.full(5, 0.2)
    with pytest.raises(ValueError):
        qw.classical_step(dist, np.array([0.5, 0.6, 0.0]))
    with pytest.raises(ValueError):
        qw.classical_step(dist, np.array([0.7, -0.2, 0.5]))


def test_coin_operators_do_not_commute():
    a, b = qw.hadamard_embed_coin(), qw.coin_shift_permutation(1)
    assert np.max(np.abs(a @ b - b @ a)) > 0.1


def test_walker_config_validation():
    with pytest.raises(ValueError):
        qw.WalkerConfig(power=0, length=9)
    with pytest.raises(ValueError):
        qw.WalkerConfig(power=2, length=4)  # length must exceed 2k
    with pytest.raises(ValueError):
        qw.WalkerConfig(power=1, length=9, initial_position=9)
    with pytest.raises(ValueError):
        qw.WalkerConfig(power=1, length=9, boundary="open")
    with pytest.raises(ValueError):
        qw.WalkerConfig(power=1, length=9, initial_coin=np.array([1.0, 1.0, 0.0]))
