"""Quantum extensive-form games: tree structure, partitions, reachability, payoffs.

A game is a tree of nodes carrying quantum-state labels.  Interior nodes are
*moves* owned by a player; leaves are *vertices* carrying a payoff vector.
Each player's moves are grouped into information sets, and a strategy profile
assigns one unitary to each information set.

Evaluation never trusts intermediate labels: the amplitude of reaching a node
is computed by evolving the root's state through the unitaries of the
information sets owning the moves along the path, then projecting onto the
target node's state label.  Outcome vertices default to computational-basis
labels; games may label them with any orthonormal states instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .statevector import NORM_TOL, as_state, as_unitary, inner

MOVE = "move"
VERTEX = "vertex"


@dataclass(frozen=True)
class Node:
    id: str
    kind: str  # MOVE or VERTEX
    state: np.ndarray
    owner: int | None = None
    children: tuple[str, ...] = ()


@dataclass(frozen=True)
class InformationSet:
    id: str
    owner: int
    moves: frozenset[str]


@dataclass(frozen=True)
class StrategyProfile:
    """One unitary per information set, plus the order the turns are taken in."""

    assignment: dict[str, np.ndarray]
    turn_order: tuple[str, ...]

    def restricted(self, info_set_ids) -> "StrategyProfile":
        keep = set(info_set_ids)
        return StrategyProfile(
            assignment={uid: u for uid, u in self.assignment.items() if uid in keep},
            turn_order=tuple(uid for uid in self.turn_order if uid in keep),
        )


@dataclass(frozen=True)
class QuantumGame:
    name: str
    dim: int
    players: tuple[int, ...]
    nodes: dict[str, Node]
    root_id: str
    info_sets: dict[str, InformationSet]
    payoffs: dict[str, tuple[float, ...]]
    turn_order: tuple[str, ...] = ()
    _parents: dict[str, str] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        parents: dict[str, str] = {}
        for node in self.nodes.values():
            for child in node.children:
                parents.setdefault(child, node.id)
        object.__setattr__(self, "_parents", parents)

    # -- structure ---------------------------------------------------------

    def parent(self, node_id: str) -> str | None:
        return self._parents.get(node_id)

    def moves(self) -> list[Node]:
        return [n for n in self.nodes.values() if n.kind == MOVE]

    def vertices(self) -> list[Node]:
        return [n for n in self.nodes.values() if n.kind == VERTEX]

    def player_partition(self) -> dict[int, set[str]]:
        part: dict[int, set[str]] = {p: set() for p in self.players}
        for node in self.moves():
            if node.owner in part:
                part[node.owner].add(node.id)
        return part

    def info_set_of(self, move_id: str) -> InformationSet | None:
        for info in self.info_sets.values():
            if move_id in info.moves:
                return info
        return None

    def info_sets_of_player(self, player: int) -> list[InformationSet]:
        return [u for u in self.info_sets.values() if u.owner == player]

    def payoff(self, vertex_id: str, player: int) -> float:
        if vertex_id not in self.payoffs:
            raise ValueError(f"no payoff defined for vertex {vertex_id!r}")
        return self.payoffs[vertex_id][self.players.index(player)]


@dataclass
class ValidationReport:
    issues: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def __str__(self) -> str:
        return "ok" if self.ok else "; ".join(self.issues)


def validate_game(game: QuantumGame) -> ValidationReport:
    """Check every structural condition; the report lists each violation found."""
    issues: list[str] = []

    if game.root_id not in game.nodes:
        issues.append(f"missing-root: root node {game.root_id!r} not present")
        return ValidationReport(issues)

    # Tree shape: known children, unique parents, no cycles, connectivity.
    seen_child: dict[str, str] = {}
    for node in game.nodes.values():
        for child in node.children:
            if child not in game.nodes:
                issues.append(f"unknown-child: {node.id!r} lists missing node {child!r}")
            elif child in seen_child:
                issues.append(
                    f"multiple-parents: node {child!r} is a child of both "
                    f"{seen_child[child]!r} and {node.id!r}"
                )
            else:
                seen_child[child] = node.id
        if node.kind == VERTEX and node.children:
            issues.append(f"vertex-with-children: {node.id!r}")
        if node.kind == MOVE and node.owner not in game.players:
            issues.append(f"bad-owner: move {node.id!r} owned by unknown player {node.owner!r}")
        if node.kind not in (MOVE, VERTEX):
            issues.append(f"bad-kind: node {node.id!r} has kind {node.kind!r}")
        if node.state.shape[0] != game.dim:
            issues.append(f"bad-state-dim: node {node.id!r} has dim {node.state.shape[0]}")

    # Three-color DFS from the root: gray-on-gray means a cycle.
    WHITE, GRAY, BLACK = 0, 1, 2
    color: dict[str, int] = {nid: WHITE for nid in game.nodes}
    stack: list[tuple[str, int]] = [(game.root_id, 0)]
    while stack:
        nid, child_idx = stack.pop()
        node = game.nodes.get(nid)
        if node is None:
            continue
        if child_idx == 0:
            if color[nid] == GRAY:
                issues.append(f"cycle: node {nid!r} reachable from itself")
                continue
            if color[nid] == BLACK:
                continue
            color[nid] = GRAY
        if child_idx < len(node.children):
            stack.append((nid, child_idx + 1))
            child = node.children[child_idx]
            if child in game.nodes:
                if color[child] == GRAY:
                    issues.append(f"cycle: node {child!r} reachable from itself")
                else:
                    stack.append((child, 0))
        else:
            color[nid] = BLACK
    unreached = {nid for nid, c in color.items() if c == WHITE}
    for nid in sorted(unreached):
        issues.append(f"unreachable: node {nid!r} not connected to the root")

    # Player partition conditions.
    partition = game.player_partition()
    for player in game.players:
        if not partition[player]:
            issues.append(f"empty-partition: player {player} owns no moves")

    # Information partition conditions.
    covered: dict[str, str] = {}
    for info in game.info_sets.values():
        if not info.moves:
            issues.append(f"empty-information-set: {info.id!r}")
        if info.owner not in game.players:
            issues.append(f"bad-owner: information set {info.id!r} owned by {info.owner!r}")
        for mid in sorted(info.moves):
            node = game.nodes.get(mid)
            if node is None:
                issues.append(f"unknown-move: information set {info.id!r} lists {mid!r}")
                continue
            if node.kind != MOVE:
                issues.append(f"vertex-in-information-set: {mid!r} in {info.id!r}")
            elif node.owner != info.owner:
                issues.append(
                    f"owner-mismatch: move {mid!r} (player {node.owner}) in "
                    f"information set {info.id!r} (player {info.owner})"
                )
            if mid in covered:
                issues.append(
                    f"overlap: move {mid!r} appears in information sets "
                    f"{covered[mid]!r} and {info.id!r}"
                )
            else:
                covered[mid] = info.id
    for node in game.moves():
        if node.id not in covered:
            issues.append(f"uncovered-move: {node.id!r} belongs to no information set")

    # Payoffs defined on every vertex.
    for node in game.vertices():
        vec = game.payoffs.get(node.id)
        if vec is None:
            issues.append(f"missing-payoff: vertex {node.id!r}")
        elif len(vec) != len(game.players):
            issues.append(f"bad-payoff-arity: vertex {node.id!r} has {len(vec)} entries")
        elif not all(np.isfinite(v) for v in vec):
            issues.append(f"non-finite-payoff: vertex {node.id!r}")

    for uid in game.turn_order:
        if uid not in game.info_sets:
            issues.append(f"unknown-turn: turn order references {uid!r}")

    return ValidationReport(issues)


# -- successor structure -----------------------------------------------------


def successors(game: QuantumGame, node_id: str) -> set[str]:
    """The nodes immediately after a node (empty for vertices)."""
    if node_id not in game.nodes:
        raise ValueError(f"unknown node {node_id!r}")
    return set(game.nodes[node_id].children)


def info_set_successors(game: QuantumGame, info_set_id: str) -> set[str]:
    """Union of the successor sets over an information set's moves."""
    info = game.info_sets.get(info_set_id)
    if info is None:
        raise ValueError(f"unknown information set {info_set_id!r}")
    out: set[str] = set()
    for mid in info.moves:
        out |= successors(game, mid)
    return out


def path_to(game: QuantumGame, node_id: str) -> tuple[str, ...]:
    """Node ids from the root to the target, inclusive."""
    if node_id not in game.nodes:
        raise ValueError(f"unknown node {node_id!r}")
    rev = [node_id]
    while rev[-1] != game.root_id:
        parent = game.parent(rev[-1])
        if parent is None:
            raise ValueError(f"node {node_id!r} is not connected to the root")
        rev.append(parent)
    return tuple(reversed(rev))


def subtree_ids(game: QuantumGame, root_id: str) -> set[str]:
    """All node ids in the subtree rooted at the given node."""
    if root_id not in game.nodes:
        raise ValueError(f"unknown node {root_id!r}")
    out: set[str] = set()
    stack = [root_id]
    while stack:
        nid = stack.pop()
        if nid in out:
            continue
        out.add(nid)
        stack.extend(game.nodes[nid].children)
    return out


def subgame_closure_violations(game: QuantumGame, root_id: str) -> list[str]:
    """Information sets straddling the subtree boundary (empty list = valid root)."""
    inside = subtree_ids(game, root_id)
    bad = []
    for info in game.info_sets.values():
        members_inside = info.moves & inside
        if members_inside and info.moves - inside:
            bad.append(info.id)
    return sorted(bad)


# -- evaluation --------------------------------------------------------------


def _unitary_for_move(game: QuantumGame, profile: StrategyProfile, move_id: str) -> np.ndarray:
    info = game.info_set_of(move_id)
    if info is None:
        raise ValueError(f"move {move_id!r} belongs to no information set")
    u = profile.assignment.get(info.id)
    if u is None:
        raise ValueError(f"information set {info.id!r} is not covered by the profile")
    return u


def _evolve(state: np.ndarray, unitaries) -> np.ndarray:
    for u in unitaries:
        state = u @ state
    return state


def _path_chain(game: QuantumGame, profile: StrategyProfile, path) -> list[np.ndarray]:
    """Unitaries acting along a path: one per move node, excluding the endpoint."""
    chain = []
    for nid in path[:-1]:
        node = game.nodes[nid]
        if node.kind != MOVE:
            raise ValueError(f"interior path node {nid!r} is not a move")
        chain.append(_unitary_for_move(game, profile, nid))
    return chain


def reached_state(game: QuantumGame, node_id: str, profile: StrategyProfile) -> np.ndarray:
    """The root label evolved through the profile along the path to a node.

    This is the recomputed state of the game when play has proceeded to the
    node's turn; node labels along the way are ignored.
    """
    path = path_to(game, node_id)
    chain = _path_chain(game, profile, path)
    return _evolve(game.nodes[game.root_id].state, chain)


def reach_amplitude(game: QuantumGame, node_id: str, profile: StrategyProfile) -> complex:
    """<label(node)| U_path ... U_1 |label(root)>."""
    return inner(game.nodes[node_id].state, reached_state(game, node_id, profile))


def reach_probability(game: QuantumGame, node_id: str, profile: StrategyProfile) -> float:
    """Squared magnitude of the reach amplitude."""
    return abs(reach_amplitude(game, node_id, profile)) ** 2


def expected_payoff(
    game: QuantumGame, profile: StrategyProfile, player: int, t: int | None = None
) -> float:
    """Payoff after t turns: sum over outcome vertices of |<k|U_t..U_1|root>|^2 g_i(k).

    ``t`` defaults to the full turn order.  The turn order is the profile's
    (falling back to the game's); each entry applies that information set's
    unitary once.
    """
    turn_order = profile.turn_order or game.turn_order
    if t is None:
        t = len(turn_order)
    if t > len(turn_order):
        raise ValueError(f"t={t} exceeds the turn order length {len(turn_order)}")
    chain = []
    for uid in turn_order[:t]:
        u = profile.assignment.get(uid)
        if u is None:
            raise ValueError(f"information set {uid!r} is not covered by the profile")
        chain.append(u)
    evolved = _evolve(game.nodes[game.root_id].state, chain)

    total = 0.0
    for node in game.vertices():
        g = game.payoff(node.id, player)
        total += g * abs(inner(node.state, evolved)) ** 2
    return total


def subgame_expected_payoff(
    game: QuantumGame,
    subgame_root: str,
    profile: StrategyProfile,
    player: int,
    initial_state: np.ndarray | None = None,
) -> float:
    """Expected payoff over the subgame's vertices under the profile.

    The state entering the subgame is recomputed from the game root through
    the profile's prefix chain (pass ``initial_state`` to override).  Within
    the subgame every vertex contributes its reach probability times payoff.
    """
    bad = subgame_closure_violations(game, subgame_root)
    if bad:
        raise ValueError(
            f"{subgame_root!r} is not a valid subgame root; straddling information sets: {bad}"
        )
    if initial_state is None:
        initial_state = reached_state(game, subgame_root, profile)
    inside = subtree_ids(game, subgame_root)

    total = 0.0
    for node in game.vertices():
        if node.id not in inside:
            continue
        sub_path = path_to(game, node.id)
        cut = sub_path.index(subgame_root)
        chain = _path_chain(game, profile, sub_path[cut:])
        amp = inner(node.state, _evolve(initial_state, chain))
        total += game.payoff(node.id, player) * abs(amp) ** 2
    return total


def classical_shadow_distribution(
    game: QuantumGame, profile: StrategyProfile, t: int | None = None
) -> np.ndarray:
    """Compose the profile classically: each unitary becomes its |entries|^2 stochastic matrix.

    Returns the resulting distribution over basis outcomes.  Once a classical
    branch carries probability it can never be cancelled, unlike the quantum
    composition of the same profile.
    """
    turn_order = profile.turn_order or game.turn_order
    if t is None:
        t = len(turn_order)
    dist = np.abs(game.nodes[game.root_id].state) ** 2
    for uid in turn_order[:t]:
        u = profile.assignment[uid]
        dist = (np.abs(u) ** 2) @ dist
    return dist


# -- construction ------------------------------------------------------------


def make_profile(
    game: QuantumGame,
    assignment: dict[str, np.ndarray],
    turn_order=None,
) -> StrategyProfile:
    """Validate unitaries against the game and build a profile."""
    checked: dict[str, np.ndarray] = {}
    for uid, u in assignment.items():
        if uid not in game.info_sets:
            raise ValueError(f"unknown information set {uid!r}")
        u = as_unitary(u)
        if u.shape[0] != game.dim:
            raise ValueError(
                f"strategy for {uid!r} has dim {u.shape[0]}, game dim is {game.dim}"
            )
        checked[uid] = u
    order = tuple(turn_order) if turn_order is not None else tuple(game.turn_order)
    return StrategyProfile(assignment=checked, turn_order=order)


def chain_game(
    name: str,
    dim: int,
    turn_owners,
    payoffs: dict[int, tuple[float, ...]],
    players=None,
    initial_state=None,
) -> QuantumGame:
    """A turn-chain game: one move per turn, then one vertex per basis outcome.

    ``turn_owners[t]`` owns turn t (information set ``u{t}``); ``payoffs``
    maps each basis index to a per-player payoff vector.  Interior move
    labels are bookkeeping and default to the initial state.
    """
    turn_owners = list(turn_owners)
    if not turn_owners:
        raise ValueError("a chain game needs at least one turn")
    if players is None:
        players = tuple(sorted(set(turn_owners)))
    init = as_state(initial_state) if initial_state is not None else None
    if init is None:
        init = np.zeros(dim, dtype=complex)
        init[0] = 1.0

    nodes: dict[str, Node] = {}
    info_sets: dict[str, InformationSet] = {}
    payoff_map: dict[str, tuple[float, ...]] = {}

    vertex_ids = [f"w{k}" for k in range(dim)]
    for k, vid in enumerate(vertex_ids):
        label = np.zeros(dim, dtype=complex)
        label[k] = 1.0
        nodes[vid] = Node(id=vid, kind=VERTEX, state=label)
        vec = payoffs.get(k)
        if vec is None:
            raise ValueError(f"missing payoff for basis outcome {k}")
        payoff_map[vid] = tuple(float(v) for v in vec)

    turn_ids = [f"m{t}" for t in range(len(turn_owners))]
    for t, mid in enumerate(turn_ids):
        children = (turn_ids[t + 1],) if t + 1 < len(turn_ids) else tuple(vertex_ids)
        nodes[mid] = Node(id=mid, kind=MOVE, state=init, owner=turn_owners[t], children=children)
        uid = f"u{t}"
        info_sets[uid] = InformationSet(id=uid, owner=turn_owners[t], moves=frozenset({mid}))

    return QuantumGame(
        name=name,
        dim=dim,
        players=tuple(players),
        nodes=nodes,
        root_id=turn_ids[0],
        info_sets=info_sets,
        payoffs=payoff_map,
        turn_order=tuple(f"u{t}" for t in range(len(turn_owners))),
    )


# -- serialization -----------------------------------------------------------


def _state_to_json(state: np.ndarray) -> list[list[float]]:
    return [[float(a.real), float(a.imag)] for a in state]


def _state_from_json(value, dim: int, where: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != dim:
        raise ValueError(f"{where}: state must be a list of {dim} [re, im] pairs")
    out = np.zeros(dim, dtype=complex)
    for i, pair in enumerate(value):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ValueError(f"{where}: amplitude {i} must be an [re, im] pair")
        out[i] = complex(float(pair[0]), float(pair[1]))
    norm2 = float(np.sum(np.abs(out) ** 2))
    if abs(norm2 - 1.0) > NORM_TOL:
        raise ValueError(f"{where}: state norm^2 = {norm2}, expected 1")
    return out


def game_to_dict(game: QuantumGame) -> dict:
    return {
        "name": game.name,
        "dim": game.dim,
        "players": list(game.players),
        "root": game.root_id,
        "nodes": [
            {
                "id": n.id,
                "kind": n.kind,
                **({"owner": n.owner} if n.kind == MOVE else {}),
                "state": _state_to_json(n.state),
                "children": list(n.children),
            }
            for n in game.nodes.values()
        ],
        "information_sets": [
            {"id": u.id, "owner": u.owner, "moves": sorted(u.moves)}
            for u in game.info_sets.values()
        ],
        "turn_order": list(game.turn_order),
        "payoffs": {vid: list(vec) for vid, vec in game.payoffs.items()},
    }


def game_from_dict(doc: dict) -> QuantumGame:
    """Parse and structurally check a game definition document."""
    if not isinstance(doc, dict):
        raise ValueError("game definition must be a JSON object")
    for key in ("name", "dim", "players", "root", "nodes", "information_sets", "payoffs"):
        if key not in doc:
            raise ValueError(f"game definition missing required key {key!r}")
    dim = int(doc["dim"])
    if dim < 1:
        raise ValueError("dim must be a positive integer")
    players = tuple(int(p) for p in doc["players"])

    nodes: dict[str, Node] = {}
    for entry in doc["nodes"]:
        nid = entry.get("id")
        kind = entry.get("kind")
        if not isinstance(nid, str) or kind not in (MOVE, VERTEX):
            raise ValueError(f"node entry {entry!r} needs a string id and kind move|vertex")
        if nid in nodes:
            raise ValueError(f"duplicate node id {nid!r}")
        owner = entry.get("owner")
        state = _state_from_json(entry.get("state"), dim, f"node {nid!r}")
        children = tuple(entry.get("children", []))
        nodes[nid] = Node(
            id=nid,
            kind=kind,
            state=state,
            owner=int(owner) if owner is not None else None,
            children=children,
        )

    info_sets: dict[str, InformationSet] = {}
    for entry in doc["information_sets"]:
        uid = entry.get("id")
        if not isinstance(uid, str) or uid in info_sets:
            raise ValueError(f"information set entry {entry!r} needs a unique string id")
        info_sets[uid] = InformationSet(
            id=uid, owner=int(entry["owner"]), moves=frozenset(entry["moves"])
        )

    payoffs = {
        vid: tuple(float(v) for v in vec) for vid, vec in dict(doc["payoffs"]).items()
    }

    return QuantumGame(
        name=str(doc["name"]),
        dim=dim,
        players=players,
        nodes=nodes,
        root_id=str(doc["root"]),
        info_sets=info_sets,
        payoffs=payoffs,
        turn_order=tuple(doc.get("turn_order", [])),
    )


def save_game(game: QuantumGame, path) -> None:
    Path(path).write_text(json.dumps(game_to_dict(game), indent=2, sort_keys=True) + "\n")


def load_game(path) -> QuantumGame:
    """Load a game definition file, raising ValueError with a diagnostic on bad input."""
    doc = json.loads(Path(path).read_text())
    return game_from_dict(doc)


def bundled_game(name: str) -> QuantumGame:
    """Load one of the game definitions shipped with the package.

    Available: ``fig3`` (two players, sixteen outcomes, grouped information
    sets), ``two_stage_chain`` (single player, two turns on one qubit),
    ``two_step_two_player`` (coordination game, one turn each).
    """
    ref = resources.files("qefg").joinpath(f"games/{name}.json")
    try:
        text = ref.read_text()
    except FileNotFoundError:
        raise ValueError(f"no bundled game named {name!r}") from None
    return game_from_dict(json.loads(text))
