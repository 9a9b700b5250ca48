"""Shared constructors for the test suite."""

from __future__ import annotations

import numpy as np

from qefg.gametree import MOVE, VERTEX, InformationSet, Node, QuantumGame


def random_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return z / np.linalg.norm(z)


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q @ np.diag(np.diag(r) / np.abs(np.diag(r)))


def basis(dim: int, k: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[k] = 1.0
    return v


def branching_two_player_game() -> QuantumGame:
    """Two-qubit branching tree: P1 root, two P2 moves with own info sets, four outcomes.

    Each depth-1 move roots a valid subgame (its information set is a
    singleton), which is what the subgame/truncation tests need.
    """
    dim = 4
    nodes = {
        "r": Node(id="r", kind=MOVE, state=basis(dim, 0), owner=1, children=("a", "b")),
        "a": Node(id="a", kind=MOVE, state=basis(dim, 0), owner=2, children=("v0", "v1")),
        "b": Node(id="b", kind=MOVE, state=basis(dim, 2), owner=2, children=("v2", "v3")),
    }
    payoffs = {}
    for k, vec in enumerate([(2.0, 1.0), (0.0, 3.0), (1.0, 0.0), (4.0, 2.0)]):
        vid = f"v{k}"
        nodes[vid] = Node(id=vid, kind=VERTEX, state=basis(dim, k))
        payoffs[vid] = vec
    info_sets = {
        "u1": InformationSet(id="u1", owner=1, moves=frozenset({"r"})),
        "u2a": InformationSet(id="u2a", owner=2, moves=frozenset({"a"})),
        "u2b": InformationSet(id="u2b", owner=2, moves=frozenset({"b"})),
    }
    return QuantumGame(
        name="branching_two_player",
        dim=dim,
        players=(1, 2),
        nodes=nodes,
        root_id="r",
        info_sets=info_sets,
        payoffs=payoffs,
        turn_order=("u1", "u2a", "u2b"),
    )
