"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines as they complete.  Criterion 10 (the browser client round trip) lives
in the frontend suite: ``cd frontend && npm test``.
"""

import dataclasses
import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from qefg import angelgame as ag
from qefg import walker as qw
from qefg.equilibrium import StrategySpace, check_theorem1, find_nash
from qefg.gametree import bundled_game
from qefg.interference import (
    GroverInstance,
    TwoStageSystem,
    annihilating_partner,
    classical_two_step,
    grover_trace,
    grover_trace_via_game,
    quantum_two_step,
)
from qefg.statevector import H, adjoint, make_rng

from helpers import random_unitary
from oracles import classical_pursuit_outcomes, double_loop_nash, two_step_chain_payoffs


@contextmanager
def criterion(number: int, description: str):
    try:
        yield
    except BaseException:
        print(f"[criterion {number}] FAIL - {description}")
        raise
    print(f"[criterion {number}] PASS - {description}")


def _random_unitary_entries_above(rng, floor):
    while True:
        u = random_unitary(rng, 2)
        if np.min(np.abs(u)) > floor:
            return u


def test_criterion_1_path_annihilation_for_random_unitaries():
    with criterion(1, "path annihilation: 100 random unitaries, quantum (1,0) vs classical > 1e-4"):
        rng = make_rng(1001)
        start = time.perf_counter()
        for _ in range(100):
            u1 = _random_unitary_entries_above(rng, 0.05)
            system = TwoStageSystem(u1, adjoint(u1))
            q0, q1 = quantum_two_step(system)
            assert abs(q0 - 1.0) < 1e-12
            assert abs(q1 - 0.0) < 1e-12
            c0, c1 = classical_two_step(system)
            assert min(c0, c1) > 1e-4
        elapsed = time.perf_counter() - start
        assert elapsed < 1.0, f"took {elapsed:.3f}s"


def test_criterion_2_hadamard_instance():
    with criterion(2, "Hadamard pair: quantum (1,0), classical (0.5,0.5) within 1e-12"):
        system = TwoStageSystem(H, annihilating_partner(H))
        q0, q1 = quantum_two_step(system)
        c0, c1 = classical_two_step(system)
        assert abs(q0 - 1.0) < 1e-12 and abs(q1) < 1e-12
        assert abs(c0 - 0.5) < 1e-12 and abs(c1 - 0.5) < 1e-12


def test_criterion_3_grover_as_game():
    with criterion(3, "Grover: N=4 certainty after 1 round, N=16 closed form, game = direct"):
        inst4 = GroverInstance(n=4, marked=2, iterations=1)
        trace4 = grover_trace(inst4)
        assert abs(trace4[1] - 1.0) <= 1e-12

        inst16 = GroverInstance(n=16, marked=11, iterations=3)
        trace16 = grover_trace(inst16)
        for t, value in enumerate(trace16):
            closed = math.sin((2 * t + 1) * math.asin(1.0 / math.sqrt(16))) ** 2
            assert abs(value - closed) < 1e-10

        for inst, direct in ((inst4, trace4), (inst16, trace16)):
            via_game = grover_trace_via_game(inst)
            assert np.max(np.abs(via_game - direct)) < 1e-12


@pytest.mark.parametrize("k", [1, 2, 3])
def test_criterion_4_walker_correctness(k):
    with criterion(4, f"walker k={k}: 100 random-coin steps, operator = convolution, norms hold"):
        rng = make_rng(2000 + k)
        config = qw.WalkerConfig(power=k, length=64, boundary="wall", initial_position=32)
        state = qw.initial_state(config)
        for _ in range(100):
            coin = random_unitary(rng, 2 * k + 1)
            operator = qw.make_step_operator(config, coin)
            dense = (operator @ state.amplitudes.reshape(-1)).reshape(state.amplitudes.shape)
            state = qw.step(state, config, coin)
            assert np.max(np.abs(state.amplitudes - dense)) < 1e-12
            mu = qw.position_distribution(state)
            assert np.all(mu >= -1e-15)
            assert abs(mu.sum() - 1.0) < 1e-10
        assert abs(state.norm_squared() - 1.0) < 1e-8


def test_criterion_5_ballistic_vs_diffusive_spread():
    with criterion(5, "spread: quantum stddev at n=100 > 2x classical stddev (exact)"):
        n = 100
        length = 2 * n + 25
        center = length // 2
        config = qw.WalkerConfig(
            power=1, length=length, boundary="wall", initial_position=center,
            initial_coin=np.array([1.0, 0.0, 1.0j]) / np.sqrt(2.0),
        )
        coin = qw.hadamard_embed_coin()
        state = qw.initial_state(config)
        for _ in range(n):
            state = qw.step(state, config, coin)
        _, sigma_quantum = qw.spread_stats(qw.position_distribution(state))

        dist = np.zeros(length)
        dist[center] = 1.0
        kernel = np.array([0.5, 0.0, 0.5])
        for _ in range(n):
            dist = qw.classical_step(dist, kernel, "wall")
        _, sigma_classical = qw.spread_stats(dist)
        assert sigma_quantum > 2.0 * sigma_classical, (sigma_quantum, sigma_classical)


def test_criterion_6_devil_circuits():
    with criterion(6, "devil circuits: certain block creation, detection prob = mu, MC within 0.02"):
        rng = make_rng(3000)
        # Block creation ends in |1> with probability 1 for 20 random site qubits.
        for _ in range(20):
            z = rng.normal(size=2) + 1j * rng.normal(size=2)
            alpha, beta = z / np.linalg.norm(z)
            _, block_qubit = ag.block_creation_circuit(alpha, beta, rng)
            assert abs(abs(block_qubit[1]) ** 2 - 1.0) < 1e-12

        # Analytic detection probability equals mu for 20 random walker states.
        config = ag.MatchConfig(
            walker=qw.WalkerConfig(power=1, length=9, initial_position=4), horizon=5
        )
        for trial in range(20):
            amps = rng.normal(size=(9, 3)) + 1j * rng.normal(size=(9, 3))
            amps /= np.linalg.norm(amps)
            match = dataclasses.replace(
                ag.new_match(config), angel=qw.WalkerState(time=0, amplitudes=amps)
            )
            mu = ag.position_distribution(match)
            site = trial % 9
            assert abs(ag.occupancy_outcome_probability(mu[site]) - mu[site]) < 1e-12

        # Monte-Carlo detection frequency at 10^4 seeded shots.
        amps = np.zeros((9, 3), dtype=complex)
        amps[2, 1] = np.sqrt(0.3)
        amps[6, 1] = np.sqrt(0.7)
        match = dataclasses.replace(
            ag.new_match(config), angel=qw.WalkerState(time=0, amplitudes=amps)
        )
        shots_rng = make_rng(3001)
        hits = sum(ag.devil_detect(match, 2, shots_rng)[0] for _ in range(10_000))
        assert abs(hits / 10_000 - 0.3) < 0.02


def test_criterion_7_equilibrium_suite_matches_oracle():
    with criterion(7, "equilibria: G=8 find_nash = double-loop oracle, all pass theorem checks, < 60s"):
        start = time.perf_counter()
        game = bundled_game("two_step_two_player")
        space = StrategySpace(grid_resolution=8)
        epsilon = 1e-9

        reports = find_nash(game, space, epsilon)
        ours = [(r.grid_indices["u0"], r.grid_indices["u1"]) for r in reports]

        tables = two_step_chain_payoffs(8, [(1.0, 1.0), (0.0, 0.0)])
        expected = double_loop_nash(tables, epsilon)
        assert ours == expected

        for report in reports:
            theorem = check_theorem1(game, report, space, epsilon)
            assert theorem.ok, theorem.failures()

        elapsed = time.perf_counter() - start
        assert elapsed < 60.0, f"took {elapsed:.1f}s"
        print(f"  (criterion 7: {len(reports)} equilibria verified in {elapsed:.1f}s)")


def _fixed_strategy(config):
    identity = np.eye(2 * config.walker.power + 1, dtype=complex)
    return ag.AngelStrategy(
        resource_class=config.angel_class,
        select_coin=lambda round_, view: identity,
        name="fixed",
    )


def _random_strategy(config, seed):
    dim = 2 * config.walker.power + 1

    def pick(round_, view):
        rng = make_rng((seed, round_))
        z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        q, r = np.linalg.qr(z)
        return q @ np.diag(np.diag(r) / np.abs(np.diag(r)))

    return ag.AngelStrategy(resource_class="universal", select_coin=pick, name="random")


def test_criterion_8_match_determinism_and_invariants():
    with criterion(8, "match engine: byte-identical 200-round replay, 500-match invariant fuzz"):
        # Byte-identical transcripts over a 200-round horizon.
        config = ag.MatchConfig(
            walker=qw.WalkerConfig(power=1, length=25, initial_position=12),
            horizon=200, seed=88,
        )
        strategy = _random_strategy(config, seed=88)

        def drive():
            rng = make_rng(config.seed)
            match = ag.new_match(config)
            while match.status == ag.ONGOING:
                site = (7 * match.round + 3) % config.walker.length
                match = ag.play_round(match, ag.DevilAction(site=site), strategy, rng)
            return ag.transcript(match)

        first, second = drive(), drive()
        assert first == second
        assert len(first) > 100

        # Invariant fuzz over 500 seeded matches.
        for i in range(500):
            angel_class = "classical" if i % 3 == 2 else "universal"
            config = ag.MatchConfig(
                walker=qw.WalkerConfig(power=1 + i % 2, length=9 + 2 * (i % 3),
                                       initial_position=(9 + 2 * (i % 3)) // 2),
                horizon=8, seed=5000 + i, angel_class=angel_class,
            )
            strategy = (
                _fixed_strategy(config) if angel_class == "classical"
                else _random_strategy(config, seed=i)
            )
            rng = make_rng(config.seed)
            match = ag.new_match(config)
            ever_blocked: set[int] = set()
            while match.status == ag.ONGOING:
                site = int(rng.integers(config.walker.length))
                match = ag.play_round(match, ag.DevilAction(site=site), strategy, rng)
                blocked = {x for x in range(config.walker.length)
                           if match.board.is_blocked(x)}
                assert ever_blocked <= blocked  # blocks are absorbing
                ever_blocked = blocked
                mu = ag.position_distribution(match)
                for x in blocked:
                    assert mu[x] < 1e-12  # exclusion
                if match.status == ag.ONGOING:
                    assert abs(match.angel.norm_squared() - 1.0) < 1e-10
                actors = [e["actor"] for e in match.history
                          if e["round"] == match.round - 1 and e["actor"] != "referee"]
                assert actors and actors[0] == "angel"
                assert all(a == "devil" for a in actors[1:])


def test_criterion_9_classical_reduction_exact():
    with criterion(9, "classical vs classical: engine enumeration = pursuit oracle at 1e-12"):
        length, horizon = 7, 3
        config = ag.MatchConfig(
            walker=qw.WalkerConfig(power=1, length=length, initial_position=3),
            horizon=horizon, angel_class="classical", devil_class="classical",
        )
        strategy = _fixed_strategy(config)

        def engine_policy(round_, view):
            free = [c["site"] for c in view["board"] if not c["blocked"]]
            return free[(2 * round_) % len(free)] if free else 0

        outcomes = ag.enumerate_outcomes(config, engine_policy, strategy)
        assert abs(sum(p for p, _ in outcomes) - 1.0) < 1e-12
        engine: dict[tuple[str, int], float] = {}
        for prob, final in outcomes:
            key = (final.status, final.round)
            engine[key] = engine.get(key, 0.0) + prob

        def oracle_policy(round_, blocked, history):
            free = [x for x in range(length) if x not in blocked]
            return free[(2 * round_) % len(free)] if free else 0

        kernel = ag.classical_hop_kernel(config, np.eye(3, dtype=complex))
        oracle = classical_pursuit_outcomes(
            length=length, power=1, horizon=horizon, initial_position=3,
            hop_kernel=kernel.tolist(), devil_policy=oracle_policy,
        )
        assert set(engine) == set(oracle)
        for key, prob in oracle.items():
            assert abs(engine[key] - prob) < 1e-12
