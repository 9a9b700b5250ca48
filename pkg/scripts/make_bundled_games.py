"""Regenerate the bundled game definition files under src/qefg/games/."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from qefg.gametree import (
    InformationSet,
    MOVE,
    Node,
    QuantumGame,
    VERTEX,
    chain_game,
    save_game,
    validate_game,
)

OUT = Path(__file__).resolve().parents[1] / "src" / "qefg" / "games"


def two_stage_chain() -> QuantumGame:
    # Single player, two turns on one qubit, reward 1 for ending on outcome 0.
    return chain_game(
        name="two_stage_chain",
        dim=2,
        turn_owners=[1, 1],
        payoffs={0: (1.0,), 1: (0.0,)},
    )


def two_step_two_player() -> QuantumGame:
    # Coordination game: both players are rewarded when the qubit returns to 0.
    return chain_game(
        name="two_step_two_player",
        dim=2,
        turn_owners=[1, 2],
        payoffs={0: (1.0, 1.0), 1: (0.0, 0.0)},
    )


def fig3_tree() -> QuantumGame:
    """Two players alternating over four levels, sixteen outcome vertices.

    Player 1 owns the root and the four third-level moves (grouped into three
    information sets); player 2 owns the two second-level and eight
    fourth-level moves (three information sets).
    """
    dim = 16
    nodes: dict[str, Node] = {}
    payoffs: dict[str, tuple[float, ...]] = {}

    def basis(i: int) -> np.ndarray:
        v = np.zeros(dim, dtype=complex)
        v[i] = 1.0
        return v

    root_label = basis(0)

    # Level 4: sixteen outcome vertices on the computational basis.
    for i in range(16):
        vid = f"w{i + 1}"
        nodes[vid] = Node(id=vid, kind=VERTEX, state=basis(i))
        payoffs[vid] = (1.0, 0.0) if i % 2 == 0 else (0.0, 1.0)

    # Level 3: eight player-2 moves, two vertex children each.
    for j in range(8):
        mid = f"p2_{j + 3}"
        children = (f"w{2 * j + 1}", f"w{2 * j + 2}")
        nodes[mid] = Node(id=mid, kind=MOVE, state=root_label, owner=2, children=children)

    # Level 2: four player-1 moves.
    for j in range(4):
        mid = f"p1_{j + 2}"
        children = (f"p2_{2 * j + 3}", f"p2_{2 * j + 4}")
        nodes[mid] = Node(id=mid, kind=MOVE, state=root_label, owner=1, children=children)

    # Level 1: two player-2 moves.
    nodes["p2_1"] = Node(id="p2_1", kind=MOVE, state=root_label, owner=2,
                         children=("p1_2", "p1_3"))
    nodes["p2_2"] = Node(id="p2_2", kind=MOVE, state=root_label, owner=2,
                         children=("p1_4", "p1_5"))

    # Root.
    nodes["p1_1"] = Node(id="p1_1", kind=MOVE, state=root_label, owner=1,
                         children=("p2_1", "p2_2"))

    info_sets = {
        "u1_a": InformationSet(id="u1_a", owner=1, moves=frozenset({"p1_1"})),
        "u1_b": InformationSet(id="u1_b", owner=1, moves=frozenset({"p1_2", "p1_5"})),
        "u1_c": InformationSet(id="u1_c", owner=1, moves=frozenset({"p1_3", "p1_4"})),
        "u2_a": InformationSet(id="u2_a", owner=2, moves=frozenset({"p2_1", "p2_2"})),
        "u2_b": InformationSet(id="u2_b", owner=2,
                               moves=frozenset({f"p2_{j}" for j in range(3, 7)})),
        "u2_c": InformationSet(id="u2_c", owner=2,
                               moves=frozenset({f"p2_{j}" for j in range(7, 11)})),
    }
    return QuantumGame(
        name="fig3",
        dim=dim,
        players=(1, 2),
        nodes=nodes,
        root_id="p1_1",
        info_sets=info_sets,
        payoffs=payoffs,
        turn_order=("u1_a", "u2_a", "u1_b", "u1_c", "u2_b", "u2_c"),
    )


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for game in (two_stage_chain(), two_step_two_player(), fig3_tree()):
        report = validate_game(game)
        if not report.ok:
            raise SystemExit(f"{game.name} failed validation: {report}")
        path = OUT / f"{game.name}.json"
        save_game(game, path)
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
