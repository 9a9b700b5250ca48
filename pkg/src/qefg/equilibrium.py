"""Best responses, Nash equilibria, subgames, and truncated games.

Strategy spaces are finite Euler-angle grids, so every search is an
exhaustive, deterministic scan; results are "epsilon-Nash at grid resolution
G", never continuum claims.  Payoffs are evaluated by folding the turn-order
unitary chain from the root label and summing payoff-weighted outcome
probabilities, exactly as ``gametree.expected_payoff`` does.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .gametree import (
    QuantumGame,
    Node,
    StrategyProfile,
    VERTEX,
    reached_state,
    reach_probability,
    subgame_closure_violations,
    subgame_expected_payoff,
    subtree_ids,
)

TIE_TOLERANCE = 1e-9
DEFAULT_BUDGET = 10_000_000


class BudgetExceededError(RuntimeError):
    """A grid scan would exceed the configured payoff-evaluation budget."""


@dataclass(frozen=True)
class StrategySpace:
    """Discretized unitary strategies: an Euler-angle grid per qubit.

    theta takes G points on [0, pi] inclusive; phi and lambda take G points
    on [0, 2pi).  A register of q qubits enumerates tensor products, G^(3q)
    matrices in all.
    """

    grid_resolution: int
    qubit_count: int = 1

    def __post_init__(self):
        if self.grid_resolution < 2:
            raise ValueError("grid resolution must be at least 2")
        if self.qubit_count < 1:
            raise ValueError("qubit count must be at least 1")

    @property
    def size(self) -> int:
        return self.grid_resolution ** (3 * self.qubit_count)

    @property
    def dim(self) -> int:
        return 2**self.qubit_count


def euler_unitary(theta: float, phi: float, lam: float) -> np.ndarray:
    """Single-qubit unitary with entries cos(t/2), -e^{il}sin(t/2) / e^{ip}sin(t/2), e^{i(p+l)}cos(t/2)."""
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array(
        [
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
        ],
        dtype=complex,
    )


def _single_qubit_angles(space: StrategySpace) -> list[tuple[float, float, float]]:
    g = space.grid_resolution
    thetas = np.linspace(0.0, np.pi, g)
    phis = np.arange(g) * (2.0 * np.pi / g)
    lams = np.arange(g) * (2.0 * np.pi / g)
    return [(float(t), float(p), float(l)) for t in thetas for p in phis for l in lams]


def enumerate_angles(space: StrategySpace) -> list[tuple[tuple[float, float, float], ...]]:
    """Angle grid points in the deterministic (theta, phi, lambda) order, one triple per qubit."""
    singles = _single_qubit_angles(space)
    return [combo for combo in itertools.product(singles, repeat=space.qubit_count)]


_GRID_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _grid_matrices(space: StrategySpace) -> np.ndarray:
    """Stacked grid unitaries (size, dim, dim), cached and read-only."""
    key = (space.grid_resolution, space.qubit_count)
    stacked = _GRID_CACHE.get(key)
    if stacked is None:
        singles = [euler_unitary(*a) for a in _single_qubit_angles(space)]
        if space.qubit_count == 1:
            stacked = np.stack(singles)
        else:
            mats = []
            for combo in itertools.product(singles, repeat=space.qubit_count):
                u = combo[0]
                for factor in combo[1:]:
                    u = np.kron(u, factor)
                mats.append(u)
            stacked = np.stack(mats)
        stacked.setflags(write=False)
        _GRID_CACHE[key] = stacked
    return stacked


def enumerate_strategies(space: StrategySpace) -> list[np.ndarray]:
    """All grid unitaries, aligned index-for-index with ``enumerate_angles``."""
    return [u.copy() for u in _grid_matrices(space)]


@dataclass
class BestResponseSet:
    """Grid argmax of one player's payoff against fixed opposing strategies.

    ``responses`` holds one {information-set id: unitary} assignment per
    optimum (ties within ``tie_tolerance`` are all retained, in grid order);
    ``response_indices`` gives the matching flat grid index per own set.
    """

    responder: int
    context: dict[str, np.ndarray]
    responses: list[dict[str, np.ndarray]]
    value: float
    response_indices: list[tuple[int, ...]] = field(default_factory=list)


@dataclass
class EquilibriumReport:
    profile: StrategyProfile
    epsilon: float
    per_player_slack: dict[int, float]
    grid_indices: dict[str, int] | None = None
    # Filled by is_nash when a player has a profitable deviation: the
    # information set, grid index and matrix of the best one found.
    best_deviations: dict[int, dict] = field(default_factory=dict)

    @property
    def is_nash(self) -> bool:
        return all(s <= self.epsilon for s in self.per_player_slack.values())


@dataclass
class TheoremCheck:
    subgame_root: str
    property_id: int  # 1 = equilibrium in reachable subgame, 2 = equilibrium in truncated game
    ok: bool
    detail: str = ""


@dataclass
class TheoremReport:
    checks: list[TheoremCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[TheoremCheck]:
        return [c for c in self.checks if not c.ok]


# -- payoff evaluation over grids ---------------------------------------------


def _ordered_info_sets(game: QuantumGame) -> list[str]:
    order = [uid for uid in game.turn_order if uid in game.info_sets]
    if len(order) != len(game.info_sets) or len(set(order)) != len(order):
        raise ValueError(
            "grid search needs the game turn order to list every information set exactly once"
        )
    return order


def _outcome_weights(game: QuantumGame, player: int) -> tuple[np.ndarray, np.ndarray]:
    """Stacked outcome bra labels and the player's payoff vector over vertices."""
    vertices = game.vertices()
    labels = np.stack([v.state for v in vertices])
    payoffs = np.array([game.payoff(v.id, player) for v in vertices], dtype=float)
    return labels, payoffs


def _fold_states(
    game: QuantumGame,
    fixed: dict[str, np.ndarray],
    axes: list[tuple[str, np.ndarray]],
) -> tuple[np.ndarray, list[int]]:
    """Evolve the root label through the turn order for a grid of assignments.

    ``axes`` lists (info-set id, stacked candidate matrices); all other sets
    take their matrix from ``fixed``.  Returns states of shape (prod sizes,
    dim) flattened in C order with the earliest-turn axis slowest, plus the
    per-axis sizes in turn order.
    """
    axis_mats = dict(axes)
    order = _ordered_info_sets(game)
    states = game.nodes[game.root_id].state[None, :]
    sizes: list[int] = []
    for uid in order:
        if uid in axis_mats:
            mats = axis_mats[uid]
            states = np.einsum("sij,pj->psi", mats, states).reshape(-1, game.dim)
            sizes.append(mats.shape[0])
        else:
            u = fixed.get(uid)
            if u is None:
                raise ValueError(f"information set {uid!r} is not covered")
            states = states @ u.T
    return states, sizes


def _payoff_grid(
    game: QuantumGame,
    player: int,
    fixed: dict[str, np.ndarray],
    axes: list[tuple[str, np.ndarray]],
) -> np.ndarray:
    states, sizes = _fold_states(game, fixed, axes)
    labels, payoffs = _outcome_weights(game, player)
    amps = states @ labels.conj().T
    values = (np.abs(amps) ** 2) @ payoffs
    return values.reshape(sizes) if sizes else values[0]


def grid_payoff_table(game: QuantumGame, player: int, space: StrategySpace) -> np.ndarray:
    """One player's payoff over the full grid, one axis per information set in turn order."""
    order = _ordered_info_sets(game)
    mats = _grid_matrices(space)
    return _payoff_grid(game, player, {}, [(uid, mats) for uid in order])


# -- best responses ------------------------------------------------------------


def _own_sets_in_turn_order(game: QuantumGame, player: int) -> list[str]:
    return [uid for uid in _ordered_info_sets(game) if game.info_sets[uid].owner == player]


def best_response(
    game: QuantumGame,
    player: int,
    opposing: dict[str, np.ndarray],
    space: StrategySpace,
    *,
    tie_tolerance: float = TIE_TOLERANCE,
    budget: int = DEFAULT_BUDGET,
) -> BestResponseSet:
    """Exhaustive grid argmax of the player's payoff against fixed opponents."""
    own = _own_sets_in_turn_order(game, player)
    if not own:
        raise ValueError(f"player {player} owns no information sets")
    for uid in _ordered_info_sets(game):
        if uid not in own and uid not in opposing:
            raise ValueError(f"information set {uid!r} is not covered by the opposing profile")

    mats = _grid_matrices(space)
    if mats.shape[0] ** len(own) > budget:
        raise BudgetExceededError(
            f"{mats.shape[0] ** len(own)} candidate responses exceed the budget {budget}"
        )
    values = _payoff_grid(game, player, dict(opposing), [(uid, mats) for uid in own])
    flat = values.reshape(-1)
    value = float(flat.max())
    winners = np.flatnonzero(value - flat <= tie_tolerance)
    shape = values.shape
    indices = [tuple(int(i) for i in np.unravel_index(w, shape)) for w in winners]
    responses = [
        {uid: mats[idx[pos]].copy() for pos, uid in enumerate(own)} for idx in indices
    ]
    return BestResponseSet(
        responder=player,
        context={uid: u.copy() for uid, u in opposing.items()},
        responses=responses,
        value=value,
        response_indices=indices,
    )


def best_response_correspondence(
    game: QuantumGame,
    player: int,
    space: StrategySpace,
    *,
    tie_tolerance: float = TIE_TOLERANCE,
    budget: int = DEFAULT_BUDGET,
) -> dict[tuple[int, ...], BestResponseSet]:
    """Best response for every grid combination of the opposing sets.

    Keys are tuples of flat grid indices for the opposing information sets in
    turn order.
    """
    own = _own_sets_in_turn_order(game, player)
    others = [uid for uid in _ordered_info_sets(game) if uid not in own]
    mats = enumerate_strategies(space)
    total = len(mats) ** (len(others) + len(own))
    if total > budget:
        raise BudgetExceededError(f"{total} payoff evaluations exceed the budget {budget}")

    out: dict[tuple[int, ...], BestResponseSet] = {}
    for combo in itertools.product(range(len(mats)), repeat=len(others)):
        opposing = {uid: mats[idx] for uid, idx in zip(others, combo)}
        out[combo] = best_response(
            game, player, opposing, space, tie_tolerance=tie_tolerance, budget=budget
        )
    return out


# -- Nash equilibria ------------------------------------------------------------


def _deviation_slack(
    game: QuantumGame,
    profile: StrategyProfile,
    player: int,
    mats: np.ndarray,
    base_value: float,
) -> tuple[float, dict | None]:
    """Max payoff gain from grid deviations of the player's own sets.

    Tests one set at a time (current strategy included, so the slack is never
    negative), then the full joint grid when the player owns at most two
    sets.  Returns the slack and a description of the best single-set
    deviation when one improves on the profile.
    """
    own = _own_sets_in_turn_order(game, player)
    if not own:
        return 0.0, None
    best = base_value
    witness: dict | None = None
    for uid in own:
        candidates = np.concatenate([mats, profile.assignment[uid][None, :, :]])
        values = _payoff_grid(game, player, dict(profile.assignment), [(uid, candidates)])
        top = int(np.argmax(values))
        if float(values[top]) > best and top < mats.shape[0]:
            witness = {"info_set": uid, "grid_index": top, "matrix": mats[top].copy(),
                       "value": float(values[top])}
        best = max(best, float(values.max()))
    if len(own) == 2:
        axes = [(uid, mats) for uid in own]
        fixed = {u: m for u, m in profile.assignment.items() if u not in own}
        values = _payoff_grid(game, player, fixed, axes)
        joint_best = float(values.max())
        if joint_best > best:
            idx = np.unravel_index(int(np.argmax(values)), values.shape)
            witness = {
                "info_set": tuple(own),
                "grid_index": tuple(int(i) for i in idx),
                "matrix": tuple(mats[i].copy() for i in idx),
                "value": joint_best,
            }
            best = joint_best
    return best - base_value, witness


def is_nash(
    game: QuantumGame,
    profile: StrategyProfile,
    space: StrategySpace,
    epsilon: float,
    *,
    budget: int = DEFAULT_BUDGET,
) -> EquilibriumReport:
    """Per-player deviation slack against the grid; epsilon-Nash iff all slacks <= epsilon."""
    mats = _grid_matrices(space)
    slack: dict[int, float] = {}
    deviations: dict[int, dict] = {}
    for player in game.players:
        own = _own_sets_in_turn_order(game, player)
        evals = mats.shape[0] * max(len(own), 1) + (mats.shape[0] ** 2 if len(own) == 2 else 0)
        if evals > budget:
            raise BudgetExceededError(f"{evals} deviation evaluations exceed the budget {budget}")
        base = float(_payoff_grid(game, player, dict(profile.assignment), []))
        if own:
            slack[player], witness = _deviation_slack(game, profile, player, mats, base)
            if witness is not None and slack[player] > epsilon:
                deviations[player] = witness
        else:
            slack[player] = 0.0
    return EquilibriumReport(
        profile=profile, epsilon=epsilon, per_player_slack=slack, best_deviations=deviations
    )


def find_nash(
    game: QuantumGame,
    space: StrategySpace,
    epsilon: float,
    *,
    budget: int = DEFAULT_BUDGET,
) -> list[EquilibriumReport]:
    """All grid profiles passing the epsilon-Nash test, in grid-lexicographic order.

    Profiles are enumerated over every information set in turn order, first
    set's grid index slowest, matching a nested exhaustive loop.
    """
    order = _ordered_info_sets(game)
    mats = _grid_matrices(space)
    n_profiles = mats.shape[0] ** len(order)
    if n_profiles * len(game.players) > budget:
        raise BudgetExceededError(
            f"{n_profiles * len(game.players)} payoff evaluations exceed the budget {budget}"
        )

    axes = [(uid, mats) for uid in order]
    value_tensors = {p: _payoff_grid(game, p, {}, axes) for p in game.players}

    slack_tensors: dict[int, np.ndarray] = {}
    for player in game.players:
        own_axes = [i for i, uid in enumerate(order) if game.info_sets[uid].owner == player]
        values = value_tensors[player]
        if not own_axes:
            slack_tensors[player] = np.zeros_like(values)
        elif len(own_axes) <= 2:
            best = values.max(axis=tuple(own_axes), keepdims=True)
            slack_tensors[player] = best - values
        else:
            best = values
            for axis in own_axes:
                best = np.maximum(best, values.max(axis=axis, keepdims=True))
            slack_tensors[player] = best - values

    passing = np.ones(value_tensors[game.players[0]].shape, dtype=bool)
    for player in game.players:
        passing &= slack_tensors[player] <= epsilon

    reports = []
    for idx in np.ndindex(passing.shape):
        if not passing[idx]:
            continue
        assignment = {uid: mats[idx[pos]].copy() for pos, uid in enumerate(order)}
        profile = StrategyProfile(assignment=assignment, turn_order=tuple(order))
        reports.append(
            EquilibriumReport(
                profile=profile,
                epsilon=epsilon,
                per_player_slack={
                    p: float(slack_tensors[p][idx]) for p in game.players
                },
                grid_indices={uid: int(idx[pos]) for pos, uid in enumerate(order)},
            )
        )
    return reports


# -- subgames and truncation -----------------------------------------------------


def extract_subgame(
    game: QuantumGame, node_id: str, root_state: np.ndarray | None = None
) -> QuantumGame:
    """The restriction of the game to the subtree at a node.

    Fails when an information set straddles the subtree boundary.  The
    subgame keeps the node's stored label as its initial state unless
    ``root_state`` overrides it (e.g. with the recomputed reached state).
    """
    bad = subgame_closure_violations(game, node_id)
    if bad:
        raise ValueError(
            f"cannot extract a subgame at {node_id!r}: information sets {bad} "
            "contain moves both inside and outside the subtree"
        )
    inside = subtree_ids(game, node_id)
    nodes = {}
    for nid in inside:
        node = game.nodes[nid]
        if nid == node_id and root_state is not None:
            node = Node(
                id=node.id, kind=node.kind, state=np.asarray(root_state, dtype=complex),
                owner=node.owner, children=node.children,
            )
        nodes[nid] = node
    info_sets = {
        uid: info for uid, info in game.info_sets.items() if info.moves <= inside
    }
    return QuantumGame(
        name=f"{game.name}/subgame@{node_id}",
        dim=game.dim,
        players=game.players,
        nodes=nodes,
        root_id=node_id,
        info_sets=info_sets,
        payoffs={vid: vec for vid, vec in game.payoffs.items() if vid in inside},
        turn_order=tuple(uid for uid in game.turn_order if uid in info_sets),
    )


def truncate(
    game: QuantumGame,
    subgame_root: str,
    sub_profile: StrategyProfile,
    initial_state: np.ndarray | None = None,
) -> QuantumGame:
    """Collapse a subgame to a single vertex carrying its expected payoffs.

    The collapsed vertex's outcome state (and the state the subgame payoffs
    are computed from) is the subgame root's label unless ``initial_state``
    supplies the recomputed reached state.
    """
    bad = subgame_closure_violations(game, subgame_root)
    if bad:
        raise ValueError(
            f"cannot truncate at {subgame_root!r}: straddling information sets {bad}"
        )
    inside = subtree_ids(game, subgame_root)
    root_node = game.nodes[subgame_root]
    state = (
        np.asarray(initial_state, dtype=complex)
        if initial_state is not None
        else root_node.state
    )
    payoff_vec = tuple(
        subgame_expected_payoff(game, subgame_root, sub_profile, p, initial_state=state)
        for p in game.players
    )

    nodes = {nid: n for nid, n in game.nodes.items() if nid not in inside}
    nodes[subgame_root] = Node(id=subgame_root, kind=VERTEX, state=state)
    info_sets = {
        uid: info for uid, info in game.info_sets.items() if not (info.moves & inside)
    }
    payoffs = {vid: vec for vid, vec in game.payoffs.items() if vid not in inside}
    payoffs[subgame_root] = payoff_vec
    return QuantumGame(
        name=f"{game.name}/truncated@{subgame_root}",
        dim=game.dim,
        players=game.players,
        nodes=nodes,
        root_id=game.root_id if game.root_id not in inside else subgame_root,
        info_sets=info_sets,
        payoffs=payoffs,
        turn_order=tuple(uid for uid in game.turn_order if uid in info_sets),
    )


def check_theorem1(
    game: QuantumGame,
    report: EquilibriumReport,
    space: StrategySpace,
    epsilon: float,
    *,
    budget: int = DEFAULT_BUDGET,
) -> TheoremReport:
    """Verify the two subgame-consistency properties of an equilibrium profile.

    1. In every subgame whose root is reached with positive probability, the
       restricted profile (evaluated from the recomputed reached state) is
       epsilon-Nash.
    2. In every truncated game (subgame collapsed to a vertex under the
       profile's own restriction), the residual profile is epsilon-Nash.
    """
    if not report.is_nash:
        raise ValueError("check_theorem1 expects a profile that already passed is_nash")
    profile = report.profile
    out = TheoremReport()

    candidates = [
        n.id
        for n in game.moves()
        if n.id != game.root_id and not subgame_closure_violations(game, n.id)
    ]
    for node_id in sorted(candidates):
        reached = reached_state(game, node_id, profile)
        inside_sets = {
            uid
            for uid, info in game.info_sets.items()
            if info.moves <= subtree_ids(game, node_id)
        }

        # Property 1 applies to subgames the profile actually reaches.
        if reach_probability(game, node_id, profile) > 0.0:
            sub = extract_subgame(game, node_id, root_state=reached)
            sub_profile = profile.restricted(inside_sets)
            sub_report = is_nash(sub, sub_profile, space, epsilon, budget=budget)
            detail = "" if sub_report.is_nash else (
                f"slacks {sub_report.per_player_slack} exceed epsilon in the subgame"
            )
            out.checks.append(
                TheoremCheck(node_id, 1, sub_report.is_nash, detail)
            )

        trunc = truncate(game, node_id, profile.restricted(inside_sets), initial_state=reached)
        residual = profile.restricted(set(trunc.info_sets))
        trunc_report = is_nash(trunc, residual, space, epsilon, budget=budget)
        detail = "" if trunc_report.is_nash else (
            f"slacks {trunc_report.per_player_slack} exceed epsilon in the truncated game"
        )
        out.checks.append(TheoremCheck(node_id, 2, trunc_report.is_nash, detail))
    return out


# -- report serialization ---------------------------------------------------------


def report_to_dict(report: EquilibriumReport, space: StrategySpace | None = None) -> dict:
    """JSON-ready form of an equilibrium report, with Euler angles for grid profiles."""
    strategies = {}
    angles = enumerate_angles(space) if (space is not None and report.grid_indices) else None
    for uid, u in report.profile.assignment.items():
        entry: dict = {}
        if angles is not None and uid in report.grid_indices:
            combo = angles[report.grid_indices[uid]]
            entry["euler_angles"] = [
                {"theta": t, "phi": p, "lambda": l} for (t, p, l) in combo
            ]
        entry["matrix"] = [[{"re": z.real, "im": z.imag} for z in row] for row in u]
        strategies[uid] = entry
    return {
        "epsilon": report.epsilon,
        "is_nash": report.is_nash,
        "per_player_slack": {str(p): s for p, s in report.per_player_slack.items()},
        "turn_order": list(report.profile.turn_order),
        "strategies": strategies,
    }


__all__ = [
    "StrategySpace",
    "BestResponseSet",
    "EquilibriumReport",
    "TheoremCheck",
    "TheoremReport",
    "BudgetExceededError",
    "euler_unitary",
    "enumerate_angles",
    "enumerate_strategies",
    "best_response",
    "best_response_correspondence",
    "is_nash",
    "find_nash",
    "extract_subgame",
    "truncate",
    "check_theorem1",
    "report_to_dict",
    "TIE_TOLERANCE",
    "DEFAULT_BUDGET",
]
