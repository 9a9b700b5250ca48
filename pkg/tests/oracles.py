"""Independent oracle implementations.

Everything here is deliberately written with plain Python loops and dicts so
it shares no code path with the package: matrix-vector products, inner
products, sequential game evaluation, the exhaustive double-loop equilibrium
scan, and the classical pursuit enumeration.
"""

from __future__ import annotations

import cmath
import math


def naive_matvec(matrix, vector) -> list[complex]:
    n = len(vector)
    out = []
    for i in range(n):
        acc = 0j
        for j in range(n):
            acc += complex(matrix[i][j]) * complex(vector[j])
        out.append(acc)
    return out


def naive_inner(phi, psi) -> complex:
    acc = 0j
    for a, b in zip(phi, psi):
        acc += complex(a).conjugate() * complex(b)
    return acc


def naive_matmul(a, b) -> list[list[complex]]:
    n, m, p = len(a), len(b), len(b[0])
    return [
        [sum(complex(a[i][k]) * complex(b[k][j]) for k in range(m)) for j in range(p)]
        for i in range(n)
    ]


def chain_amplitude(unitaries, initial, target) -> complex:
    """<target| U_n ... U_1 |initial> with everything as plain lists."""
    state = [complex(z) for z in initial]
    for u in unitaries:
        state = naive_matvec(u, state)
    return naive_inner(target, state)


def euler_matrix(theta: float, phi: float, lam: float) -> list[list[complex]]:
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return [
        [complex(c), -cmath.exp(1j * lam) * s],
        [cmath.exp(1j * phi) * s, cmath.exp(1j * (phi + lam)) * c],
    ]


def euler_grid(g: int) -> list[tuple[float, float, float]]:
    thetas = [math.pi * i / (g - 1) for i in range(g)]
    phis = [2.0 * math.pi * i / g for i in range(g)]
    lams = [2.0 * math.pi * i / g for i in range(g)]
    return [(t, p, l) for t in thetas for p in phis for l in lams]


def two_step_chain_payoffs(g: int, payoffs_by_outcome):
    """Payoff tables M[player][i][j] for a two-turn one-qubit chain over the grid.

    Turn 1 uses grid index i, turn 2 grid index j; the game starts in |0> and
    pays ``payoffs_by_outcome[k][player]`` on basis outcome k.
    """
    grid = [euler_matrix(*angles) for angles in euler_grid(g)]
    size = len(grid)
    n_players = len(payoffs_by_outcome[0])
    tables = [[[0.0] * size for _ in range(size)] for _ in range(n_players)]
    for i, u1 in enumerate(grid):
        mid = naive_matvec(u1, [1.0 + 0j, 0j])
        for j, u2 in enumerate(grid):
            final = naive_matvec(u2, mid)
            p0 = abs(final[0]) ** 2
            p1 = abs(final[1]) ** 2
            for player in range(n_players):
                tables[player][i][j] = (
                    p0 * payoffs_by_outcome[0][player] + p1 * payoffs_by_outcome[1][player]
                )
    return tables


def double_loop_nash(tables, epsilon: float):
    """Exhaustive equilibrium scan over the two-axis payoff tables.

    Returns (i, j) index pairs, i-major, exactly as two nested loops visit
    them.  Player 0 deviates along axis 0, player 1 along axis 1; the
    per-context deviation maxima are themselves built by exhaustive loops.
    """
    size = len(tables[0])
    best_0 = [max(tables[0][i2][j] for i2 in range(size)) for j in range(size)]
    best_1 = [max(tables[1][i][j2] for j2 in range(size)) for i in range(size)]
    out = []
    for i in range(size):
        for j in range(size):
            slack_0 = best_0[j] - tables[0][i][j]
            slack_1 = best_1[i] - tables[1][i][j]
            if slack_0 <= epsilon and slack_1 <= epsilon:
                out.append((i, j))
    return out


# -- classical pursuit enumeration ---------------------------------------------


def classical_pursuit_outcomes(
    length: int,
    power: int,
    horizon: int,
    initial_position: int,
    hop_kernel,
    devil_policy,
    caught_epsilon: float = 1e-9,
    boundary: str = "wall",
):
    """Exact outcome distribution of the classical pursuit game.

    A from-scratch re-implementation of the round rules on plain dicts:
    Angel's distribution hops by the kernel (walls reflect), blocked sites
    lose their mass (total below caught_epsilon = caught), Devil detects one
    site (branching on both outcomes with exact probabilities), places a
    block on outcome 0, and wins immediately on outcome 1 if every site
    within ``power`` of the reveal (except it) is blocked.  Returns a dict
    {status: probability}.
    """
    k = power

    def hop(dist):
        out = {x: 0.0 for x in range(length)}
        for x, mass in dist.items():
            if mass == 0.0:
                continue
            for mi, w in enumerate(hop_kernel):
                if w == 0.0:
                    continue
                target = x + (mi - k)
                if boundary == "periodic":
                    target %= length
                else:
                    if target < 0:
                        target = -target - 1
                    elif target >= length:
                        target = 2 * length - 1 - target
                out[target] += mass * w
        return out

    def surrounded(blocked, site):
        for offset in range(-k, k + 1):
            if offset == 0:
                continue
            t = site + offset
            if boundary == "periodic":
                t %= length
            elif not 0 <= t < length:
                continue
            if t not in blocked:
                return False
        return True

    results: dict[tuple[str, int], float] = {}

    def record(status, rounds_played, prob):
        key = (status, rounds_played)
        results[key] = results.get(key, 0.0) + prob

    def descend(prob, round_, dist, blocked, history):
        # Angel hops, then loses mass on blocked sites.
        dist = hop(dist)
        survived_mass = sum(m for x, m in dist.items() if x not in blocked)
        if survived_mass < caught_epsilon:
            record("angelCaught", round_ + 1, prob)
            return
        dist = {
            x: (m / survived_mass if x not in blocked else 0.0) for x, m in dist.items()
        }
        site = devil_policy(round_, blocked, history)
        mu = dist.get(site, 0.0)
        # Outcome 0: site cleared, block placed.
        p0 = 1.0 - mu
        if p0 > 1e-15:
            dist0 = dict(dist)
            dist0[site] = 0.0
            rest = sum(dist0.values())
            dist0 = {x: m / rest for x, m in dist0.items()}
            next_round = round_ + 1
            if next_round >= horizon:
                record("angelSurvived", horizon, prob * p0)
            else:
                descend(
                    prob * p0, next_round, dist0, blocked | {site},
                    history + ((round_, site, 0),),
                )
        # Outcome 1: Angel revealed at the site.
        if mu > 1e-15:
            if surrounded(blocked, site):
                record("angelCaught", round_ + 1, prob * mu)
            else:
                dist1 = {x: 0.0 for x in range(length)}
                dist1[site] = 1.0
                next_round = round_ + 1
                if next_round >= horizon:
                    record("angelSurvived", horizon, prob * mu)
                else:
                    descend(
                        prob * mu, next_round, dist1, blocked,
                        history + ((round_, site, 1),),
                    )

    start = {x: 0.0 for x in range(length)}
    start[initial_position] = 1.0
    descend(1.0, 0, start, frozenset(), ())
    return results
