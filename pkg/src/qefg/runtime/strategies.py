"""Shipped auto-play strategies for Angel and site policies for Devil.

Angel selectors only ever see the Devil-visible view.  Strategies that need
Angel's own state (greedy-spread) reconstruct it by replaying the public
transcript from the initial configuration — their own past coin choices are
deterministic, and detections/placements are public events.
"""

from __future__ import annotations

import numpy as np

from .. import walker as qw
from ..angelgame import (
    AngelStrategy,
    MatchConfig,
    base_coin,
    classical_hop_kernel,
    nonuniversal_coin_set,
)
from ..statevector import make_rng

ANGEL_STRATEGY_NAMES = ("fixed-coin", "random-coin", "greedy-spread")
DEVIL_POLICY_NAMES = ("sweep", "random-site", "center-out")

_SUPPORT_TOL = 1e-12


def _candidate_coins(config: MatchConfig) -> list[np.ndarray]:
    k = config.walker.power
    dim = 2 * k + 1
    if config.angel_class == "classical":
        shift = qw.coin_shift_permutation(k)
        return [np.eye(dim, dtype=complex), shift, shift.conj().T]
    if config.angel_class == "nonUniversal":
        return nonuniversal_coin_set(k)
    coins = [np.eye(dim, dtype=complex), qw.grover_coin(k), qw.coin_shift_permutation(k)]
    if k == 1:
        coins.append(qw.hadamard_embed_coin())
    return coins


def fixed_coin_strategy(config: MatchConfig) -> AngelStrategy:
    """Identity strategy every round: Angel walks with the base coin alone."""
    identity = np.eye(2 * config.walker.power + 1, dtype=complex)
    return AngelStrategy(
        resource_class=config.angel_class,
        select_coin=lambda round_, view: identity,
        name="fixed-coin",
    )


def random_coin_strategy(config: MatchConfig, seed: int | None = None) -> AngelStrategy:
    """A fresh allowed coin each round, drawn from a seeded stream.

    The draw is a pure function of the round number so replays and the
    branch enumerator see identical choices.
    """
    base_seed = config.seed if seed is None else seed
    candidates = _candidate_coins(config)

    def pick(round_: int, view: dict) -> np.ndarray:
        rng = make_rng((base_seed, round_))
        if config.angel_class == "universal":
            # Haar-ish unitary via QR of a complex Gaussian matrix.
            dim = 2 * config.walker.power + 1
            z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            q, r = np.linalg.qr(z)
            return q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
        return candidates[int(rng.integers(len(candidates)))]

    return AngelStrategy(resource_class=config.angel_class, select_coin=pick, name="random-coin")


def _blocked_from_history(length: int, history: list[dict], upto_index: int) -> np.ndarray:
    blocked = np.zeros(length, dtype=bool)
    for event in history[:upto_index]:
        if event.get("type") == "place":
            blocked[event["site"]] = True
    return blocked


def _greedy_pick(
    config: MatchConfig, state, blocked: np.ndarray, candidates: list[np.ndarray]
) -> np.ndarray:
    best_coin, best_support = candidates[0], -1
    for coin in candidates:
        if isinstance(state, np.ndarray):  # classical distribution
            kernel = classical_hop_kernel(config, coin)
            dist = qw.classical_step(state, kernel, config.walker.boundary)
            dist[blocked] = 0.0
            support = int(np.sum(dist > _SUPPORT_TOL))
        else:
            stepped = qw.step(state, config.walker, base_coin(config), strategy=coin)
            amps = stepped.amplitudes.copy()
            amps[blocked, :] = 0.0
            mu = np.sum(np.abs(amps) ** 2, axis=1)
            support = int(np.sum(mu > _SUPPORT_TOL))
        if support > best_support:  # ties keep the earliest candidate
            best_coin, best_support = coin, support
    return best_coin


def greedy_spread_strategy(config: MatchConfig) -> AngelStrategy:
    """Each round, pick the candidate coin that keeps support on the most sites.

    Reconstructs Angel's state from the public transcript: replays its own
    deterministic picks plus the recorded detection back-actions.
    """
    candidates = _candidate_coins(config)

    def replay_state(view: dict):
        history = view["history"]
        length = config.walker.length
        if config.angel_class == "classical":
            state: np.ndarray | qw.WalkerState = np.zeros(length, dtype=float)
            state[config.walker.initial_position] = 1.0
        else:
            state = qw.initial_state(config.walker)
        blocked = np.zeros(length, dtype=bool)
        for idx, event in enumerate(history):
            kind = event.get("type")
            if kind == "move":
                coin = _greedy_pick(config, state, blocked, candidates)
                if isinstance(state, np.ndarray):
                    kernel = classical_hop_kernel(config, coin)
                    state = qw.classical_step(state, kernel, config.walker.boundary)
                    state[blocked] = 0.0
                    mass = float(np.sum(state))
                    state = state / mass if mass > 0 else state
                else:
                    stepped = qw.step(state, config.walker, base_coin(config), strategy=coin)
                    amps = stepped.amplitudes.copy()
                    amps[blocked, :] = 0.0
                    norm2 = float(np.sum(np.abs(amps) ** 2))
                    amps = amps / np.sqrt(norm2) if norm2 > 0 else amps
                    state = qw.WalkerState(time=stepped.time, amplitudes=amps)
            elif kind == "detect":
                site, outcome = event["site"], event["outcome"]
                if isinstance(state, np.ndarray):
                    if outcome == 1:
                        state = np.zeros_like(state)
                        state[site] = 1.0
                    else:
                        state = state.copy()
                        state[site] = 0.0
                        mass = float(np.sum(state))
                        state = state / mass if mass > 0 else state
                else:
                    amps = state.amplitudes.copy()
                    if outcome == 1:
                        keep = np.zeros_like(amps)
                        keep[site, :] = amps[site, :]
                        amps = keep
                    else:
                        amps[site, :] = 0.0
                    norm2 = float(np.sum(np.abs(amps) ** 2))
                    amps = amps / np.sqrt(norm2) if norm2 > 0 else amps
                    state = qw.WalkerState(time=state.time, amplitudes=amps)
            elif kind == "place":
                blocked[event["site"]] = True
        return state, blocked

    def pick(round_: int, view: dict) -> np.ndarray:
        state, blocked = replay_state(view)
        return _greedy_pick(config, state, blocked, candidates)

    return AngelStrategy(
        resource_class=config.angel_class, select_coin=pick, name="greedy-spread"
    )


def make_angel_strategy(name: str, config: MatchConfig, seed: int | None = None) -> AngelStrategy:
    if name == "fixed-coin":
        return fixed_coin_strategy(config)
    if name == "random-coin":
        return random_coin_strategy(config, seed)
    if name == "greedy-spread":
        return greedy_spread_strategy(config)
    raise ValueError(f"unknown angel strategy {name!r}; choose from {ANGEL_STRATEGY_NAMES}")


# -- Devil policies ---------------------------------------------------------------


def sweep_policy(length: int):
    """Scan the lattice left to right, skipping already-blocked sites."""

    def pick(round_: int, view: dict) -> int:
        blocked = [cell["site"] for cell in view["board"] if cell["blocked"]]
        free = [x for x in range(length) if x not in blocked]
        if not free:
            return round_ % length
        return free[round_ % len(free)]

    return pick


def random_site_policy(length: int, seed: int = 0):
    """A seeded uniformly random unblocked site each round."""

    def pick(round_: int, view: dict) -> int:
        rng = make_rng((seed, round_))
        blocked = {cell["site"] for cell in view["board"] if cell["blocked"]}
        free = [x for x in range(length) if x not in blocked]
        pool = free if free else list(range(length))
        return int(pool[int(rng.integers(len(pool)))])

    return pick


def center_out_policy(length: int):
    """Probe near the lattice center first, spiralling outward over rounds."""
    order = []
    center = length // 2
    for d in range(length):
        for sign in (1, -1):
            x = center + sign * d
            if 0 <= x < length and x not in order:
                order.append(x)

    def pick(round_: int, view: dict) -> int:
        blocked = {cell["site"] for cell in view["board"] if cell["blocked"]}
        free = [x for x in order if x not in blocked]
        pool = free if free else order
        return pool[round_ % len(pool)]

    return pick


def make_devil_policy(name: str, length: int, seed: int = 0):
    if name == "sweep":
        return sweep_policy(length)
    if name == "random-site":
        return random_site_policy(length, seed)
    if name == "center-out":
        return center_out_policy(length)
    raise ValueError(f"unknown devil policy {name!r}; choose from {DEVIL_POLICY_NAMES}")
