"""Angel-vs-Devil match engine on a 1-D lattice of block qubits.

Angel is a power-k quantum walker; Devil measures sites and places blocks.
Each round (Angel first by default):

1. Angel picks a coin-strategy unitary for the round and steps; amplitude on
   definitely-blocked sites is projected out and the state renormalized.
   If the surviving squared norm falls below ``caught_epsilon``, Angel is
   caught.
2. Devil measures occupancy at one site.  The occupancy qubit is derived
   from Angel's position distribution (|b_x|^2 = mu(x)) and the measurement
   circuit is executed literally on the statevector simulator.  Outcome 1
   collapses Angel onto the site; outcome 0 removes the site's amplitude.
3. On outcome 0 Devil runs the block-creation circuit at the site, which
   leaves the block qubit in |1> with certainty.
4. On outcome 1, if every site within distance k of Angel's revealed
   position (other than the position itself) is blocked, Angel is caught.
5. After ``horizon`` rounds with Angel still going, Angel survives.

Resource classes restrict Angel's per-round strategy: ``universal`` allows
any unitary, ``nonUniversal`` a fixed generating set, and ``classical``
permutations only — with the walk itself replaced by the exact classical
convolution whose hop kernel is the combined coin's action on the rest
coin state.

All operations are functional: they return new MatchState values.  Devil
sees only measurement outcomes and his own placements, never amplitudes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import walker as qw
from .statevector import (
    apply,
    as_unitary,
    build_controlled_not,
    make_rng,
    measure_subset,
    outcome_probability,
    tensor,
)

ONGOING = "ongoing"
ANGEL_CAUGHT = "angelCaught"
ANGEL_SURVIVED = "angelSurvived"

RESOURCE_CLASSES = ("universal", "nonUniversal", "classical")

_COIN_MATCH_TOL = 1e-12


@dataclass(frozen=True)
class MatchConfig:
    walker: qw.WalkerConfig
    horizon: int = 200
    caught_epsilon: float = 1e-9
    angel_class: str = "universal"
    devil_class: str = "classical"
    seed: int = 0
    devil_opens: bool = False
    # Fixed coin-mixing matrix applied every step (the per-round strategy
    # composes with it); defaults to the (2k+1)-dim diffusion coin.
    coin: np.ndarray | None = None

    def __post_init__(self):
        if self.horizon < 1:
            raise ValueError("horizon must be at least 1 round")
        if not 0.0 < self.caught_epsilon < 1.0:
            raise ValueError("caught_epsilon must lie in (0, 1)")
        for label, value in (("angel", self.angel_class), ("devil", self.devil_class)):
            if value not in RESOURCE_CLASSES:
                raise ValueError(f"unknown {label} resource class {value!r}")
        coin = self.coin if self.coin is not None else qw.grover_coin(self.walker.power)
        coin = as_unitary(coin)
        if coin.shape[0] != self.walker.coin_dim:
            raise ValueError(
                f"match coin must be {self.walker.coin_dim}-dimensional, got {coin.shape[0]}"
            )
        object.__setattr__(self, "coin", coin)


@dataclass(frozen=True)
class Board:
    """Per-site block qubits (alpha, beta); a placed block is exactly (0, 1)."""

    qubits: np.ndarray  # shape (length, 2)

    @staticmethod
    def empty(length: int) -> "Board":
        q = np.zeros((length, 2), dtype=complex)
        q[:, 0] = 1.0
        return Board(qubits=q)

    def is_blocked(self, site: int) -> bool:
        return self.qubits[site, 0] == 0.0 and self.qubits[site, 1] == 1.0

    def blocked_mask(self) -> np.ndarray:
        return (self.qubits[:, 0] == 0.0) & (self.qubits[:, 1] == 1.0)

    def with_block(self, site: int) -> "Board":
        q = self.qubits.copy()
        q[site] = (0.0, 1.0)
        return Board(qubits=q)

    def with_site(self, site: int, alpha: complex, beta: complex) -> "Board":
        q = self.qubits.copy()
        q[site] = (alpha, beta)
        return Board(qubits=q)


@dataclass(frozen=True)
class ClassicalAngelState:
    """Classical-resource Angel: a probability distribution over sites."""

    time: int
    dist: np.ndarray

    def norm_squared(self) -> float:
        return float(np.sum(self.dist))


@dataclass(frozen=True)
class DevilAction:
    site: int


@dataclass(frozen=True)
class AngelStrategy:
    """A resource class plus a per-round coin selector.

    The selector receives the round number and the Devil-visible view (public
    history only) and returns a (2k+1)-dimensional strategy unitary; it must
    stay within the declared resource class.
    """

    resource_class: str
    select_coin: Callable[[int, dict], np.ndarray]
    name: str = "custom"


@dataclass(frozen=True)
class MatchState:
    config: MatchConfig
    round: int
    board: Board
    angel: qw.WalkerState | ClassicalAngelState
    history: tuple[dict, ...]
    status: str

    def is_ongoing(self) -> bool:
        return self.status == ONGOING


def base_coin(config: MatchConfig) -> np.ndarray:
    """The match's fixed coin operator; strategies compose with it per round."""
    return config.coin


def position_distribution(match: MatchState) -> np.ndarray:
    if isinstance(match.angel, ClassicalAngelState):
        return match.angel.dist.copy()
    return qw.position_distribution(match.angel)


def new_match(config: MatchConfig) -> MatchState:
    if config.angel_class == "classical":
        dist = np.zeros(config.walker.length, dtype=float)
        dist[config.walker.initial_position] = 1.0
        angel: qw.WalkerState | ClassicalAngelState = ClassicalAngelState(time=0, dist=dist)
    else:
        angel = qw.initial_state(config.walker)
    return MatchState(
        config=config,
        round=0,
        board=Board.empty(config.walker.length),
        angel=angel,
        history=(),
        status=ONGOING,
    )


# -- resource classes ----------------------------------------------------------


def nonuniversal_coin_set(k: int) -> list[np.ndarray]:
    """The fixed generating set allowed to a non-universal Angel."""
    dim = 2 * k + 1
    return [np.eye(dim, dtype=complex), qw.grover_coin(k), qw.coin_shift_permutation(k)]


def _is_permutation_action(coin: np.ndarray) -> bool:
    mags = np.abs(coin)
    return bool(
        np.all(np.abs(np.max(mags, axis=0) - 1.0) < _COIN_MATCH_TOL)
        and np.all(np.sum(mags > _COIN_MATCH_TOL, axis=0) == 1)
        and np.all(np.sum(mags > _COIN_MATCH_TOL, axis=1) == 1)
    )


def resource_class_filter(resource_class: str) -> Callable[[np.ndarray, int], bool]:
    """Predicate deciding whether a strategy coin is allowed to the class.

    universal: any unitary.  nonUniversal: the fixed generating set, matched
    entrywise within 1e-12.  classical: coins acting on basis states as a
    permutation (the walk itself then runs through the classical pathway).
    """
    if resource_class == "universal":
        def allow_any(coin: np.ndarray, power: int) -> bool:
            return coin.shape == (2 * power + 1, 2 * power + 1)

        return allow_any
    if resource_class == "nonUniversal":
        def allow_listed(coin: np.ndarray, power: int) -> bool:
            if coin.shape != (2 * power + 1, 2 * power + 1):
                return False
            return any(
                np.max(np.abs(coin - ref)) < _COIN_MATCH_TOL
                for ref in nonuniversal_coin_set(power)
            )

        return allow_listed
    if resource_class == "classical":
        def allow_permutation(coin: np.ndarray, power: int) -> bool:
            return coin.shape == (2 * power + 1, 2 * power + 1) and _is_permutation_action(coin)

        return allow_permutation
    raise ValueError(f"unknown resource class {resource_class!r}")


def classical_hop_kernel(config: MatchConfig, strategy_coin: np.ndarray) -> np.ndarray:
    """Hop kernel for the classical pathway: |(base·strategy) e_0|^2 on the rest coin state."""
    combined = base_coin(config) @ strategy_coin
    center = config.walker.power
    return np.abs(combined[:, center]) ** 2


# -- measurement circuits --------------------------------------------------------

_CNOT_01 = build_controlled_not(2, control=0, target=1)
_ANTI_CNOT_10 = build_controlled_not(2, control=1, target=0, anti=True)
_KET0 = np.array([1.0, 0.0], dtype=complex)


def occupancy_circuit(mu_x: float, rng: np.random.Generator) -> tuple[int, float]:
    """Devil's occupancy measurement at one site, executed on the simulator.

    Prepares sqrt(1-mu)|0> + sqrt(mu)|1> on the occupancy qubit, copies it to
    a fresh ancilla with a CNOT, and measures the ancilla.  Returns the
    outcome (1 = Angel detected) and the probability of that outcome.
    """
    mu_x = min(max(float(mu_x), 0.0), 1.0)
    occ = np.array([np.sqrt(1.0 - mu_x), np.sqrt(mu_x)], dtype=complex)
    state = apply(_CNOT_01, tensor(occ, _KET0))
    # Ancilla (qubit 1) reads 1 on basis indices {1, 3}.
    if mu_x == 0.0:
        return 0, 1.0
    if mu_x == 1.0:
        return 1, 1.0
    outcome, prob, _ = measure_subset(state, {1, 3}, rng)
    return (1 if outcome == "in" else 0), prob


def occupancy_outcome_probability(mu_x: float) -> float:
    """Analytic probability of detection outcome 1 from the same circuit."""
    mu_x = min(max(float(mu_x), 0.0), 1.0)
    occ = np.array([np.sqrt(1.0 - mu_x), np.sqrt(mu_x)], dtype=complex)
    state = apply(_CNOT_01, tensor(occ, _KET0))
    return outcome_probability(state, 1) + outcome_probability(state, 3)


def block_creation_circuit(
    alpha: complex, beta: complex, rng: np.random.Generator
) -> tuple[int, np.ndarray]:
    """Devil's block-creation circuit on one site qubit.

    CNOT copies the block qubit onto an ancilla, the anti-controlled X then
    forces the block qubit to |1> on both branches, and the ancilla is
    measured.  Returns the ancilla outcome and the collapsed block qubit,
    which is |1> with probability 1 regardless of (alpha, beta).
    """
    site = np.array([alpha, beta], dtype=complex)
    norm2 = float(np.sum(np.abs(site) ** 2))
    if abs(norm2 - 1.0) > 1e-10:
        raise ValueError("site qubit must be normalized")
    state = apply(_ANTI_CNOT_10, apply(_CNOT_01, tensor(site, _KET0)))
    p_anc1 = outcome_probability(state, 1) + outcome_probability(state, 3)
    if p_anc1 >= 1.0 - 1e-15:
        outcome, _, collapsed = "in", p_anc1, state / np.sqrt(p_anc1)
    elif p_anc1 <= 1e-15:
        outcome, collapsed = "out", state / np.sqrt(1.0 - p_anc1)
    else:
        outcome, _, collapsed = measure_subset(state, {1, 3}, rng)
    ancilla = 1 if outcome == "in" else 0
    # Block qubit marginal: amplitudes for block=0 live at indices 0, 1.
    block0 = np.sqrt(outcome_probability(collapsed, 0) + outcome_probability(collapsed, 1))
    block1 = np.sqrt(outcome_probability(collapsed, 2) + outcome_probability(collapsed, 3))
    return ancilla, np.array([block0, block1], dtype=complex)


def block_check_circuit(
    alpha: complex, beta: complex, rng: np.random.Generator
) -> tuple[int, np.ndarray]:
    """Angel's block check: CNOT onto an ancilla, measure the ancilla.

    Returns the outcome (1 = block found, probability |beta|^2) and the
    collapsed site qubit.
    """
    site = np.array([alpha, beta], dtype=complex)
    state = apply(_CNOT_01, tensor(site, _KET0))
    p1 = outcome_probability(state, 1) + outcome_probability(state, 3)
    if p1 <= 0.0:
        return 0, np.array([1.0, 0.0], dtype=complex)
    if p1 >= 1.0:
        return 1, np.array([0.0, 1.0], dtype=complex)
    outcome, _, _ = measure_subset(state, {1, 3}, rng)
    found = 1 if outcome == "in" else 0
    collapsed = np.array([0.0, 1.0] if found else [1.0, 0.0], dtype=complex)
    return found, collapsed


# -- Devil operations -------------------------------------------------------------


def _require_ongoing(match: MatchState) -> None:
    if match.status != ONGOING:
        raise ValueError(f"match is not ongoing (status {match.status!r})")


def _require_site(match: MatchState, site: int) -> None:
    if not 0 <= site < match.config.walker.length:
        raise ValueError(f"site {site} outside the lattice [0, {match.config.walker.length})")


def _apply_detection(match: MatchState, site: int, outcome: int) -> MatchState:
    """Measurement back-action for a detection outcome, plus the history event."""
    if isinstance(match.angel, ClassicalAngelState):
        dist = match.angel.dist.copy()
        if outcome == 1:
            post = np.zeros_like(dist)
            post[site] = 1.0
        else:
            dist[site] = 0.0
            post = dist / np.sum(dist)
        angel: qw.WalkerState | ClassicalAngelState = ClassicalAngelState(
            time=match.angel.time, dist=post
        )
    else:
        amps = match.angel.amplitudes.copy()
        if outcome == 1:
            keep = np.zeros_like(amps)
            keep[site, :] = amps[site, :]
        else:
            keep = amps
            keep[site, :] = 0.0
        norm2 = float(np.sum(np.abs(keep) ** 2))
        angel = qw.WalkerState(time=match.angel.time, amplitudes=keep / np.sqrt(norm2))
    event = {"round": match.round, "actor": "devil", "type": "detect", "site": site,
             "outcome": outcome}
    return replace(match, angel=angel, history=match.history + (event,))


def devil_detect(
    match: MatchState, site: int, rng: np.random.Generator
) -> tuple[int, MatchState]:
    """Measure Angel's occupancy at a site; outcome 1 appears with probability mu(site)."""
    _require_ongoing(match)
    _require_site(match, site)
    mu_x = float(position_distribution(match)[site])
    outcome, _ = occupancy_circuit(mu_x, rng)
    return outcome, _apply_detection(match, site, outcome)


def devil_place_block(match: MatchState, site: int) -> MatchState:
    """Place a block where the same round's detection just returned 0.

    Runs the block-creation circuit on the site qubit and asserts its
    postcondition (block present with probability 1) before recording the
    block exactly as (0, 1).
    """
    _require_ongoing(match)
    _require_site(match, site)
    last = match.history[-1] if match.history else None
    if (
        last is None
        or last.get("type") != "detect"
        or last.get("site") != site
        or last.get("outcome") != 0
        or last.get("round") != match.round
    ):
        raise ValueError(
            "devil_place_block requires a detection outcome 0 at the same site "
            "immediately beforehand in the same round"
        )
    alpha, beta = match.board.qubits[site]
    _, block_qubit = block_creation_circuit(alpha, beta, make_rng(0))
    if abs(abs(block_qubit[1]) ** 2 - 1.0) > 1e-10:
        raise RuntimeError("block-creation circuit failed to leave the block qubit in |1>")
    event = {"round": match.round, "actor": "devil", "type": "place", "site": site}
    return replace(
        match, board=match.board.with_block(site), history=match.history + (event,)
    )


def angel_check_block(
    match: MatchState, site: int, rng: np.random.Generator
) -> tuple[int, MatchState]:
    """Angel probes a site's block qubit; finds a block with probability |beta|^2."""
    _require_ongoing(match)
    _require_site(match, site)
    alpha, beta = match.board.qubits[site]
    outcome, collapsed = block_check_circuit(alpha, beta, rng)
    event = {"round": match.round, "actor": "angel", "type": "check", "site": site,
             "outcome": outcome}
    board = match.board.with_site(site, collapsed[0], collapsed[1])
    return outcome, replace(match, board=board, history=match.history + (event,))


# -- Angel operations --------------------------------------------------------------


def angel_move(match: MatchState, coin: np.ndarray) -> MatchState:
    """One Angel step: walk, then project out amplitude on blocked sites.

    The projection is measurement-like and non-unitary; if the surviving
    squared norm drops below caught_epsilon, Angel is caught.
    """
    _require_ongoing(match)
    coin = as_unitary(coin)
    allowed = resource_class_filter(match.config.angel_class)
    if not allowed(coin, match.config.walker.power):
        raise ValueError(
            f"coin not permitted for resource class {match.config.angel_class!r}"
        )
    blocked = match.board.blocked_mask()
    event = {"round": match.round, "actor": "angel", "type": "move"}

    if isinstance(match.angel, ClassicalAngelState):
        kernel = classical_hop_kernel(match.config, coin)
        dist = qw.classical_step(match.angel.dist, kernel, match.config.walker.boundary)
        dist[blocked] = 0.0
        mass = float(np.sum(dist))
        if mass < match.config.caught_epsilon:
            angel: qw.WalkerState | ClassicalAngelState = ClassicalAngelState(
                time=match.angel.time + 1, dist=dist
            )
            event = {**event, "caught": True}
            return replace(
                match, angel=angel, status=ANGEL_CAUGHT, history=match.history + (event,)
            )
        angel = ClassicalAngelState(time=match.angel.time + 1, dist=dist / mass)
        return replace(match, angel=angel, history=match.history + (event,))

    stepped = qw.step(match.angel, match.config.walker, base_coin(match.config), strategy=coin)
    amps = stepped.amplitudes.copy()
    amps[blocked, :] = 0.0
    norm2 = float(np.sum(np.abs(amps) ** 2))
    if norm2 < match.config.caught_epsilon:
        angel = qw.WalkerState(time=stepped.time, amplitudes=amps)
        event = {**event, "caught": True}
        return replace(match, angel=angel, status=ANGEL_CAUGHT, history=match.history + (event,))
    angel = qw.WalkerState(time=stepped.time, amplitudes=amps / np.sqrt(norm2))
    return replace(match, angel=angel, history=match.history + (event,))


# -- round driver ------------------------------------------------------------------


def _surrounded(match: MatchState, site: int) -> bool:
    """Every site within distance k of the revealed position (other than it) blocked?"""
    config = match.config
    length, k = config.walker.length, config.walker.power
    blocked = match.board.blocked_mask()
    for offset in range(-k, k + 1):
        if offset == 0:
            continue
        target = site + offset
        if config.walker.boundary == "periodic":
            target %= length
        elif not 0 <= target < length:
            continue  # off-lattice counts as blocked under walls
        if not blocked[target]:
            return False
    return True


def _devil_post_detection(match: MatchState, site: int, outcome: int) -> MatchState:
    if outcome == 0:
        return devil_place_block(match, site)
    if _surrounded(match, site):
        event = {"round": match.round, "actor": "devil", "type": "capture",
                 "reason": "surrounded", "site": site}
        return replace(match, status=ANGEL_CAUGHT, history=match.history + (event,))
    return match


def _angel_phase(match: MatchState, strategy: AngelStrategy) -> MatchState:
    if strategy.resource_class != match.config.angel_class:
        raise ValueError(
            f"strategy class {strategy.resource_class!r} does not match the "
            f"configured {match.config.angel_class!r}"
        )
    coin = strategy.select_coin(match.round, devil_view(match))
    return angel_move(match, coin)


def _finish_round(match: MatchState) -> MatchState:
    match = replace(match, round=match.round + 1)
    if match.status == ONGOING and match.round >= match.config.horizon:
        event = {"round": match.round, "actor": "referee", "type": "survived"}
        return replace(match, status=ANGEL_SURVIVED, history=match.history + (event,))
    return match


def play_round(
    match: MatchState,
    devil_action: DevilAction,
    angel_strategy: AngelStrategy,
    rng: np.random.Generator,
) -> MatchState:
    """One full round: Angel moves, Devil detects and maybe places, horizon check.

    With ``devil_opens`` set in the config, Devil acts before Angel's move.
    """
    _require_ongoing(match)
    _require_site(match, devil_action.site)

    def devil_phase(m: MatchState) -> MatchState:
        outcome, m = devil_detect(m, devil_action.site, rng)
        return _devil_post_detection(m, devil_action.site, outcome)

    phases = (devil_phase, lambda m: _angel_phase(m, angel_strategy))
    if not match.config.devil_opens:
        phases = (phases[1], phases[0])
    for phase in phases:
        if match.status == ONGOING:
            match = phase(match)
    return _finish_round(match)


def run_match(
    config: MatchConfig,
    devil_policy: Callable[[int, dict], int],
    angel_strategy: AngelStrategy,
    rng: np.random.Generator | None = None,
) -> MatchState:
    """Drive a match to its terminal state with a Devil site-selection policy."""
    if rng is None:
        rng = make_rng(config.seed)
    match = new_match(config)
    while match.status == ONGOING:
        site = int(devil_policy(match.round, devil_view(match)))
        match = play_round(match, DevilAction(site=site), angel_strategy, rng)
    return match


def enumerate_outcomes(
    config: MatchConfig,
    devil_policy: Callable[[int, dict], int],
    angel_strategy: AngelStrategy,
    probability_floor: float = 1e-15,
) -> list[tuple[float, MatchState]]:
    """Exact outcome distribution: branch on every detection with its analytic probability.

    Deterministic policies/strategies only (they see the same views a sampled
    run would).  Returns (probability, terminal state) pairs; probabilities
    sum to 1 up to the floor used to prune impossible branches.
    """
    results: list[tuple[float, MatchState]] = []
    frontier: list[tuple[float, MatchState]] = [(1.0, new_match(config))]
    while frontier:
        prob, match = frontier.pop()
        if match.status != ONGOING:
            results.append((prob, match))
            continue
        site = int(devil_policy(match.round, devil_view(match)))
        _require_site(match, site)
        moved = _angel_phase(match, angel_strategy)
        if moved.status != ONGOING:
            results.append((prob, _finish_round(moved)))
            continue
        mu_x = float(position_distribution(moved)[site])
        p1 = occupancy_outcome_probability(mu_x)
        for outcome, p_branch in ((0, 1.0 - p1), (1, p1)):
            if p_branch <= probability_floor:
                continue
            branch = _apply_detection(moved, site, outcome)
            branch = _devil_post_detection(branch, site, outcome)
            frontier.append((prob * p_branch, _finish_round(branch)))
    return results


# -- views and transcripts -----------------------------------------------------------


def devil_view(match: MatchState) -> dict:
    """Everything Devil legitimately knows: outcomes and his own placements, no amplitudes.

    Angel's private block probes (``check`` events) are withheld along with
    all state amplitudes.
    """
    blocked = match.board.blocked_mask()
    last_detection: dict[int, int] = {}
    for event in match.history:
        if event.get("type") == "detect":
            last_detection[event["site"]] = event["outcome"]
    return {
        "round": match.round,
        "status": match.status,
        "length": match.config.walker.length,
        "power": match.config.walker.power,
        "horizon": match.config.horizon,
        "board": [
            {
                "site": x,
                "blocked": bool(blocked[x]),
                "last_detection": last_detection.get(x),
            }
            for x in range(match.config.walker.length)
        ],
        "history": [dict(e) for e in match.history if e.get("type") != "check"],
    }


def spectator_view(match: MatchState) -> dict:
    """Debug view: the devil view plus Angel's position distribution and amplitudes."""
    view = devil_view(match)
    mu = position_distribution(match)
    view["mu"] = [float(v) for v in mu]
    if isinstance(match.angel, ClassicalAngelState):
        view["amplitudes"] = None
    else:
        view["amplitudes"] = [
            [{"re": float(z.real), "im": float(z.imag)} for z in row]
            for row in match.angel.amplitudes
        ]
    return view


def config_to_dict(config: MatchConfig) -> dict:
    return {
        "walker": {
            "power": config.walker.power,
            "length": config.walker.length,
            "boundary": config.walker.boundary,
            "initial_position": config.walker.initial_position,
            "initial_coin": [
                [float(z.real), float(z.imag)] for z in config.walker.initial_coin
            ],
        },
        "horizon": config.horizon,
        "caught_epsilon": config.caught_epsilon,
        "angel_class": config.angel_class,
        "devil_class": config.devil_class,
        "seed": config.seed,
        "devil_opens": config.devil_opens,
        "coin": [[[float(z.real), float(z.imag)] for z in row] for row in config.coin],
    }


def config_from_dict(doc: dict) -> MatchConfig:
    walker_doc = dict(doc.get("walker", {}))
    coin = walker_doc.get("initial_coin")
    walker = qw.WalkerConfig(
        power=int(walker_doc.get("power", 1)),
        length=int(walker_doc.get("length", 16)),
        boundary=str(walker_doc.get("boundary", "wall")),
        initial_position=int(walker_doc.get("initial_position", walker_doc.get("length", 16) // 2)),
        initial_coin=(
            np.array([complex(re, im) for re, im in coin]) if coin is not None else None
        ),
    )
    coin_doc = doc.get("coin")
    coin = (
        np.array([[complex(re, im) for re, im in row] for row in coin_doc])
        if coin_doc is not None
        else None
    )
    return MatchConfig(
        walker=walker,
        horizon=int(doc.get("horizon", 200)),
        caught_epsilon=float(doc.get("caught_epsilon", 1e-9)),
        angel_class=str(doc.get("angel_class", "universal")),
        devil_class=str(doc.get("devil_class", "classical")),
        seed=int(doc.get("seed", 0)),
        devil_opens=bool(doc.get("devil_opens", False)),
        coin=coin,
    )


def transcript(match: MatchState) -> str:
    """Deterministic JSON transcript: config, events, terminal status."""
    doc = {
        "config": config_to_dict(match.config),
        "rounds_played": match.round,
        "status": match.status,
        "events": [dict(e) for e in match.history],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def match_summary(match: MatchState) -> dict:
    detections = [e for e in match.history if e.get("type") == "detect"]
    return {
        "status": match.status,
        "winner": "devil" if match.status == ANGEL_CAUGHT else (
            "angel" if match.status == ANGEL_SURVIVED else None
        ),
        "rounds": match.round,
        "blocks_placed": sum(1 for e in match.history if e.get("type") == "place"),
        "detections": [
            {"round": e["round"], "site": e["site"], "outcome": e["outcome"]}
            for e in detections
        ],
    }
