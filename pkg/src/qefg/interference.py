"""Two-stage interference demo and Grover search as a turn-based process.

The two-stage system compares classical and unitary composition of the same
one-bit transitions.  Writing the first transition as [[a, a'], [b, b']] and
the second as [[c, e], [d, f]] (columns are the images of |0> and |1>):

- classical composition multiplies squared magnitudes along branches, so
  both outcomes stay strictly positive whenever every entry is non-zero;
- unitary composition adds branch amplitudes before squaring, so outcome 0
  carries |ac + be|^2, which cancels exactly whenever the second transition
  undoes the first.  Pick U2 = U1^dagger and the walk returns to outcome 0
  with certainty, leaving outcome 1 with probability zero; compose with a
  bit flip to zero outcome 0 instead.

Grover search is expressed both as a direct statevector iteration and as a
turn-chain game whose two information sets alternate oracle and diffusion
moves.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gametree import (
    MOVE,
    VERTEX,
    InformationSet,
    Node,
    QuantumGame,
    StrategyProfile,
    reach_probability,
)
from .statevector import adjoint, as_unitary


@dataclass(frozen=True)
class TwoStageSystem:
    """Two single-qubit transitions applied in sequence from |0>."""

    u1: np.ndarray
    u2: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "u1", as_unitary(self.u1))
        object.__setattr__(self, "u2", as_unitary(self.u2))
        if self.u1.shape != (2, 2) or self.u2.shape != (2, 2):
            raise ValueError("two-stage transitions must be 2x2")


def one_step_probabilities(sys: TwoStageSystem) -> tuple[float, float]:
    """After one step the classical and quantum pictures agree: (|a|^2, |b|^2)."""
    a, b = sys.u1[0, 0], sys.u1[1, 0]
    return float(abs(a) ** 2), float(abs(b) ** 2)


def classical_two_step(sys: TwoStageSystem) -> tuple[float, float]:
    """Branch probabilities composed classically (squared magnitudes multiply and add)."""
    a, b = sys.u1[0, 0], sys.u1[1, 0]
    c, d = sys.u2[0, 0], sys.u2[1, 0]
    e, f = sys.u2[0, 1], sys.u2[1, 1]
    p0 = abs(a) ** 2 * abs(c) ** 2 + abs(b) ** 2 * abs(e) ** 2
    p1 = abs(a) ** 2 * abs(d) ** 2 + abs(b) ** 2 * abs(f) ** 2
    return float(p0), float(p1)


def quantum_two_step(sys: TwoStageSystem) -> tuple[float, float]:
    """Branch amplitudes composed unitarily: (|ac+be|^2, |ad+bf|^2)."""
    a, b = sys.u1[0, 0], sys.u1[1, 0]
    c, d = sys.u2[0, 0], sys.u2[1, 0]
    e, f = sys.u2[0, 1], sys.u2[1, 1]
    return float(abs(a * c + b * e) ** 2), float(abs(a * d + b * f) ** 2)


def annihilating_partner(u1: np.ndarray) -> np.ndarray:
    """A second transition that cancels every path to the non-initial outcome.

    Returns u1's adjoint: the composed walk then reaches outcome 0 with
    probability exactly 1, while the classically composed counterpart keeps
    both outcomes positive whenever no entry vanishes.
    """
    return adjoint(as_unitary(u1))


# -- Grover search ------------------------------------------------------------


@dataclass(frozen=True)
class GroverInstance:
    """Database of n items (a power of two) with one marked index."""

    n: int
    marked: int
    iterations: int

    def __post_init__(self):
        if self.n < 2 or (self.n & (self.n - 1)) != 0:
            raise ValueError(f"database size must be a power of two >= 2, got {self.n}")
        if not 0 <= self.marked < self.n:
            raise ValueError(f"marked index {self.marked} out of range for n={self.n}")
        if self.iterations < 0:
            raise ValueError("iteration count must be non-negative")


def grover_operators(inst: GroverInstance) -> tuple[np.ndarray, np.ndarray]:
    """(diffusion, oracle): 2|uniform><uniform| - I and I - 2|marked><marked|."""
    uniform = np.full(inst.n, 1.0 / np.sqrt(inst.n), dtype=complex)
    diffusion = 2.0 * np.outer(uniform, uniform.conj()) - np.eye(inst.n, dtype=complex)
    oracle = np.eye(inst.n, dtype=complex)
    oracle[inst.marked, inst.marked] = -1.0
    return diffusion, oracle


def grover_trace(inst: GroverInstance) -> np.ndarray:
    """Success probability |<marked|state>|^2 after 0..iterations rounds (direct path)."""
    diffusion, oracle = grover_operators(inst)
    state = np.full(inst.n, 1.0 / np.sqrt(inst.n), dtype=complex)
    trace = [float(abs(state[inst.marked]) ** 2)]
    for _ in range(inst.iterations):
        state = diffusion @ (oracle @ state)
        trace.append(float(abs(state[inst.marked]) ** 2))
    return np.array(trace)


def grover_closed_form(n: int, t: int) -> float:
    """sin^2((2t+1) * arcsin(1/sqrt(n)))."""
    theta = np.arcsin(1.0 / np.sqrt(n))
    return float(np.sin((2 * t + 1) * theta) ** 2)


def grover_game(inst: GroverInstance) -> QuantumGame:
    """Grover search as a turn-chain game with alternating oracle/diffusion turns.

    Requires iterations >= 1.  Two information sets cover the chain: the
    oracle player owns the even turns, the diffusion player the odd turns.
    Interior moves at even depth 2t are labelled with the marked basis state,
    so their reach probability reads out the success probability after t full
    rounds; the terminal vertices are the basis outcomes with payoff 1 on the
    marked index.
    """
    if inst.iterations < 1:
        raise ValueError("the game form needs at least one iteration")
    n, w, t_max = inst.n, inst.marked, inst.iterations
    uniform = np.full(n, 1.0 / np.sqrt(n), dtype=complex)
    marked = np.zeros(n, dtype=complex)
    marked[w] = 1.0

    nodes: dict[str, Node] = {}
    payoffs: dict[str, tuple[float, ...]] = {}
    vertex_ids = [f"w{k}" for k in range(n)]
    for k, vid in enumerate(vertex_ids):
        label = np.zeros(n, dtype=complex)
        label[k] = 1.0
        nodes[vid] = Node(id=vid, kind=VERTEX, state=label)
        payoffs[vid] = (1.0, 1.0) if k == w else (0.0, 0.0)

    depth = 2 * t_max
    oracle_moves, diffusion_moves = set(), set()
    for d in range(depth):
        mid = f"m{d}"
        children = (f"m{d + 1}",) if d + 1 < depth else tuple(vertex_ids)
        if d % 2 == 0:
            owner = 1
            oracle_moves.add(mid)
            # Even depths mark full-iteration boundaries; label them with the
            # marked state so reach probabilities give the success trace.
            label = uniform if d == 0 else marked
        else:
            owner = 2
            diffusion_moves.add(mid)
            label = uniform
        nodes[mid] = Node(id=mid, kind=MOVE, state=label, owner=owner, children=children)

    info_sets = {
        "oracle": InformationSet(id="oracle", owner=1, moves=frozenset(oracle_moves)),
        "diffusion": InformationSet(id="diffusion", owner=2, moves=frozenset(diffusion_moves)),
    }
    return QuantumGame(
        name=f"grover-n{n}-w{w}-t{t_max}",
        dim=n,
        players=(1, 2),
        nodes=nodes,
        root_id="m0",
        info_sets=info_sets,
        payoffs=payoffs,
        turn_order=("oracle", "diffusion") * t_max,
    )


def grover_profile(inst: GroverInstance, game: QuantumGame | None = None) -> StrategyProfile:
    """The canonical profile for the game form: oracle and diffusion operators."""
    diffusion, oracle = grover_operators(inst)
    turn_order = game.turn_order if game is not None else ("oracle", "diffusion") * inst.iterations
    return StrategyProfile(
        assignment={"oracle": oracle, "diffusion": diffusion}, turn_order=tuple(turn_order)
    )


def grover_trace_via_game(inst: GroverInstance) -> np.ndarray:
    """Success-probability trace computed through tree reachability (iterations >= 1)."""
    game = grover_game(inst)
    profile = grover_profile(inst, game)
    trace = [1.0 / inst.n]
    for t in range(1, inst.iterations):
        trace.append(reach_probability(game, f"m{2 * t}", profile))
    trace.append(reach_probability(game, f"w{inst.marked}", profile))
    return np.array(trace)
