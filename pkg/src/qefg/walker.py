"""Discrete-time quantum walk with power k on a finite 1-D lattice.

The walker's joint space is position ⊗ coin, with coin dimension 2k+1: coin
component m ∈ {-k..k} (stored at offset m+k) is the displacement the shift
applies.  One step is

    coin mixing (per-step strategy, then the coin operator), then
    displacement: component m at site x moves to site x+m.

Coin and strategy matrices use operator convention: ``op[m+k, l+k]`` is the
amplitude sending coin component l to component m.

Boundary policies on the finite lattice:

- ``periodic`` — displacement wraps mod L.
- ``wall``    — displacement reflects off the lattice edge and the coin
  component flips sign (x+m < 0 lands on -(x+m)-1 with coin -m; x+m >= L
  lands on 2L-1-(x+m) with coin -m).  This is a permutation of the joint
  basis, so wall steps stay unitary.

Requiring L > 2k keeps every reflection a single bounce.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .statevector import as_state, as_unitary

BOUNDARIES = ("wall", "periodic")


@dataclass(frozen=True)
class WalkerConfig:
    power: int
    length: int
    boundary: str = "wall"
    initial_position: int = 0
    initial_coin: np.ndarray | None = None

    def __post_init__(self):
        if self.power < 1:
            raise ValueError(f"power must be >= 1, got {self.power}")
        if self.length <= 2 * self.power:
            raise ValueError(f"lattice length {self.length} must exceed 2k = {2 * self.power}")
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}, got {self.boundary!r}")
        if not 0 <= self.initial_position < self.length:
            raise ValueError(f"initial position {self.initial_position} outside [0, {self.length})")
        coin_dim = 2 * self.power + 1
        if self.initial_coin is None:
            coin = np.zeros(coin_dim, dtype=complex)
            coin[self.power] = 1.0  # rest on the m=0 "stay" component
        else:
            coin = as_state(self.initial_coin)
            if coin.shape[0] != coin_dim:
                raise ValueError(f"initial coin must have {coin_dim} components, got {coin.shape[0]}")
        object.__setattr__(self, "initial_coin", coin)

    @property
    def coin_dim(self) -> int:
        return 2 * self.power + 1


@dataclass(frozen=True)
class WalkerState:
    time: int
    amplitudes: np.ndarray  # shape (length, 2k+1)

    @property
    def length(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def coin_dim(self) -> int:
        return self.amplitudes.shape[1]

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


def initial_state(config: WalkerConfig) -> WalkerState:
    """Walker at t=0, localized at the configured site with the configured coin."""
    amps = np.zeros((config.length, config.coin_dim), dtype=complex)
    amps[config.initial_position, :] = config.initial_coin
    return WalkerState(time=0, amplitudes=amps)


def grover_coin(k: int) -> np.ndarray:
    """The (2k+1)-dimensional diffusion coin: 2/(2k+1) everywhere, minus 1 on the diagonal."""
    dim = 2 * k + 1
    return (2.0 / dim) * np.ones((dim, dim), dtype=complex) - np.eye(dim, dtype=complex)


def hadamard_embed_coin() -> np.ndarray:
    """k=1 coin acting as a Hadamard on the {-1,+1} components, identity on m=0.

    The workhorse for ballistic-spread demos: with no amplitude on the stay
    component this reproduces the two-state Hadamard walk.
    """
    s = 1.0 / np.sqrt(2.0)
    return np.array(
        [
            [s, 0.0, s],
            [0.0, 1.0, 0.0],
            [s, 0.0, -s],
        ],
        dtype=complex,
    )


def coin_shift_permutation(k: int) -> np.ndarray:
    """Cyclic permutation of the coin components (m -> m+1, wrapping)."""
    dim = 2 * k + 1
    return np.roll(np.eye(dim, dtype=complex), 1, axis=0)


def _joint_permutation(config: WalkerConfig) -> np.ndarray:
    """Destination joint index for each (site, coin) pair under the shift."""
    length, k = config.length, config.power
    coin_dim = config.coin_dim
    dest = np.empty(length * coin_dim, dtype=np.int64)
    for x in range(length):
        for mi in range(coin_dim):
            m = mi - k
            tau = x + m
            if config.boundary == "periodic":
                pos, coin = tau % length, mi
            elif 0 <= tau < length:
                pos, coin = tau, mi
            elif tau < 0:
                pos, coin = -tau - 1, (2 * k) - mi
            else:
                pos, coin = 2 * length - 1 - tau, (2 * k) - mi
            dest[x * coin_dim + mi] = pos * coin_dim + coin
    return dest


def make_step_operator(
    config: WalkerConfig, coin: np.ndarray, strategy: np.ndarray | None = None
) -> np.ndarray:
    """Dense one-step operator on the joint position⊗coin space.

    Equals (shift permutation) · (I_L ⊗ coin·strategy); unitary for both
    boundary policies.
    """
    coin = as_unitary(coin)
    if coin.shape[0] != config.coin_dim:
        raise ValueError(f"coin must be {config.coin_dim}-dimensional, got {coin.shape[0]}")
    if strategy is not None:
        strategy = as_unitary(strategy)
        if strategy.shape != coin.shape:
            raise ValueError("strategy must match the coin dimension")
        coin = coin @ strategy

    mixed = np.kron(np.eye(config.length, dtype=complex), coin)
    dest = _joint_permutation(config)
    out = np.zeros_like(mixed)
    out[dest, :] = mixed
    return out


def step(
    state: WalkerState,
    config: WalkerConfig,
    coin: np.ndarray,
    strategy: np.ndarray | None = None,
) -> WalkerState:
    """Advance the walker one time step (strategy, coin, then displacement)."""
    if state.amplitudes.shape != (config.length, config.coin_dim):
        raise ValueError(
            f"state shape {state.amplitudes.shape} does not match config "
            f"({config.length}, {config.coin_dim})"
        )
    coin = as_unitary(coin)
    if coin.shape[0] != config.coin_dim:
        raise ValueError(f"coin must be {config.coin_dim}-dimensional, got {coin.shape[0]}")
    combined = coin
    if strategy is not None:
        strategy = as_unitary(strategy)
        if strategy.shape != coin.shape:
            raise ValueError("strategy must match the coin dimension")
        combined = coin @ strategy

    mixed = state.amplitudes @ combined.T
    dest = _joint_permutation(config)
    out = np.zeros(config.length * config.coin_dim, dtype=complex)
    out[dest] = mixed.reshape(-1)
    return WalkerState(time=state.time + 1, amplitudes=out.reshape(config.length, config.coin_dim))


def position_distribution(state: WalkerState) -> np.ndarray:
    """Site occupation probabilities: mu(x) = sum_m |psi_m(x)|^2."""
    return np.sum(np.abs(state.amplitudes) ** 2, axis=1)


def spread_stats(mu: np.ndarray) -> tuple[float, float]:
    """Mean and standard deviation of the site index under a distribution."""
    mu = np.asarray(mu, dtype=float)
    if np.any(mu < -1e-12):
        raise ValueError("distribution has negative mass")
    total = float(np.sum(mu))
    if abs(total - 1.0) > 1e-8:
        raise ValueError(f"distribution mass {total} is not 1")
    sites = np.arange(mu.shape[0], dtype=float)
    mean = float(np.dot(sites, mu))
    var = float(np.dot((sites - mean) ** 2, mu))
    return mean, np.sqrt(max(var, 0.0))


def classical_step(dist: np.ndarray, hop_kernel: np.ndarray, boundary: str = "wall") -> np.ndarray:
    """One step of the classical power-k random walk (exact convolution).

    ``hop_kernel[m+k]`` is the probability of displacement m.  Mass hitting a
    wall reflects back onto the lattice; periodic wraps.  Mass is conserved
    exactly.
    """
    dist = np.asarray(dist, dtype=float)
    kernel = np.asarray(hop_kernel, dtype=float)
    if kernel.ndim != 1 or kernel.shape[0] % 2 != 1:
        raise ValueError("hop kernel must be an odd-length 1-D weight vector")
    if np.any(kernel < 0.0) or abs(float(np.sum(kernel)) - 1.0) > 1e-12:
        raise ValueError("hop kernel must be non-negative and sum to 1")
    if boundary not in BOUNDARIES:
        raise ValueError(f"boundary must be one of {BOUNDARIES}, got {boundary!r}")

    length = dist.shape[0]
    k = kernel.shape[0] // 2
    out = np.zeros(length, dtype=float)
    for mi, weight in enumerate(kernel):
        if weight == 0.0:
            continue
        m = mi - k
        targets = np.arange(length) + m
        if boundary == "periodic":
            targets %= length
        else:
            targets = np.where(targets < 0, -targets - 1, targets)
            targets = np.where(targets >= length, 2 * length - 1 - targets, targets)
        np.add.at(out, targets, weight * dist)
    return out


# Re-exported so callers building configs do not need a second import.
__all__ = [
    "WalkerConfig",
    "WalkerState",
    "initial_state",
    "grover_coin",
    "hadamard_embed_coin",
    "coin_shift_permutation",
    "make_step_operator",
    "step",
    "position_distribution",
    "spread_stats",
    "classical_step",
    "BOUNDARIES",
]
