"""Command-line interface.

Report-producing subcommands print delimited output and, when ``--out DIR``
is given, also write the CSV plus a rendered PNG figure into the directory.
All outputs are deterministic functions of the flags and seeds.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import click
import numpy as np

from .. import angelgame, equilibrium, gametree, interference
from .. import walker as qw
from ..statevector import H, make_rng
from . import plots
from .strategies import (
    ANGEL_STRATEGY_NAMES,
    DEVIL_POLICY_NAMES,
    make_angel_strategy,
    make_devil_policy,
)


@click.group()
def main():
    """Quantum extensive-form game engine."""


@main.group()
def demo():
    """Interference demonstrations."""


def _random_two_stage(rng: np.random.Generator) -> np.ndarray:
    theta = rng.uniform(0.0, np.pi)
    phi = rng.uniform(0.0, 2 * np.pi)
    lam = rng.uniform(0.0, 2 * np.pi)
    return equilibrium.euler_unitary(theta, phi, lam)


@demo.command("two-stage")
@click.option("--hadamard", is_flag=True, help="Use the Hadamard pair instead of random draws.")
@click.option("--seed", default=0, show_default=True, help="Seed for random transition draws.")
@click.option("--count", default=3, show_default=True, help="Number of random cases.")
@click.option("--out", type=click.Path(file_okay=False), default=None,
              help="Directory for two_stage.csv and two_stage.png.")
def demo_two_stage(hadamard: bool, seed: int, count: int, out: str | None):
    """Classical vs quantum two-step outcome tables (second step annihilates)."""
    cases: list[tuple[str, np.ndarray]] = []
    if hadamard:
        cases.append(("hadamard", H))
    else:
        rng = make_rng(seed)
        for i in range(count):
            cases.append((f"random-{i}", _random_two_stage(rng)))

    rows = []
    for name, u1 in cases:
        system = interference.TwoStageSystem(u1, interference.annihilating_partner(u1))
        cp0, cp1 = interference.classical_two_step(system)
        qp0, qp1 = interference.quantum_two_step(system)
        rows.append({
            "case": name,
            "classical_p0": cp0, "classical_p1": cp1,
            "quantum_p0": qp0, "quantum_p1": qp1,
        })

    header = f"{'case':<12} {'cl P(0)':>9} {'cl P(1)':>9} {'qu P(0)':>9} {'qu P(1)':>9}"
    click.echo(header)
    for r in rows:
        click.echo(
            f"{r['case']:<12} {r['classical_p0']:>9.6f} {r['classical_p1']:>9.6f} "
            f"{r['quantum_p0']:>9.6f} {r['quantum_p1']:>9.6f}"
        )
    if out:
        out_dir = Path(out)
        out_dir.mkdir(parents=True, exist_ok=True)
        csv_path = out_dir / "two_stage.csv"
        with csv_path.open("w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)
        plots.render_two_stage(out_dir / "two_stage.png", rows)
        click.echo(f"wrote {csv_path} and two_stage.png")


@demo.command("grover")
@click.option("--n", default=4, show_default=True, help="Database size (power of two).")
@click.option("--w", default=0, show_default=True, help="Marked index.")
@click.option("--iters", default=1, show_default=True, help="Grover iterations.")
@click.option("--out", type=click.Path(file_okay=False), default=None,
              help="Directory for grover_trace.csv and grover_trace.png.")
def demo_grover(n: int, w: int, iters: int, out: str | None):
    """Success-probability trace of the search iteration (CSV: t, probability)."""
    inst = interference.GroverInstance(n=n, marked=w, iterations=iters)
    trace = interference.grover_trace(inst)
    click.echo("t,probability")
    for t, p in enumerate(trace):
        click.echo(f"{t},{p:.12f}")
    if out:
        out_dir = Path(out)
        out_dir.mkdir(parents=True, exist_ok=True)
        csv_path = out_dir / "grover_trace.csv"
        with csv_path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "probability"])
            for t, p in enumerate(trace):
                writer.writerow([t, f"{p:.12f}"])
        closed = np.array([interference.grover_closed_form(n, t) for t in range(iters + 1)])
        plots.render_grover_trace(out_dir / "grover_trace.png", trace, closed)
        click.echo(f"wrote {csv_path} and grover_trace.png")


_COINS = {
    "grover": lambda k: qw.grover_coin(k),
    "hadamard": lambda k: qw.hadamard_embed_coin(),
    "shift": lambda k: qw.coin_shift_permutation(k),
}


@main.command("walk")
@click.option("--k", default=1, show_default=True, help="Walker power.")
@click.option("--l", "length", default=64, show_default=True, help="Lattice length.")
@click.option("--steps", default=50, show_default=True)
@click.option("--coin", type=click.Choice(sorted(_COINS)), default="grover", show_default=True)
@click.option("--boundary", type=click.Choice(qw.BOUNDARIES), default="wall", show_default=True)
@click.option("--x0", default=None, type=int, help="Initial site (defaults to the center).")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Walker config JSON (overrides the geometry flags).")
@click.option("--out", type=click.Path(file_okay=False), default=None,
              help="Directory for walk_trace.csv and walk_heatmap.png.")
def walk(k: int, length: int, steps: int, coin: str, boundary: str, x0: int | None,
         config_path: str | None, out: str | None):
    """Evolve the power-k walk and report the occupation trace (CSV: n, x, mu)."""
    if config_path is not None:
        doc = json.loads(Path(config_path).read_text())
        initial_coin_doc = doc.get("initial_coin")
        config = qw.WalkerConfig(
            power=int(doc.get("power", k)),
            length=int(doc.get("length", length)),
            boundary=str(doc.get("boundary", boundary)),
            initial_position=int(doc.get("initial_position", doc.get("length", length) // 2)),
            initial_coin=(
                np.array([complex(re, im) for re, im in initial_coin_doc])
                if initial_coin_doc is not None else None
            ),
        )
        k = config.power
        if coin == "hadamard" and k != 1:
            raise click.UsageError("the hadamard coin is defined for k=1 only")
    else:
        if coin == "hadamard" and k != 1:
            raise click.UsageError("the hadamard coin is defined for k=1 only")
        initial_coin = None
        if coin == "hadamard":
            initial_coin = np.array([1.0, 0.0, 1.0j]) / np.sqrt(2.0)
        config = qw.WalkerConfig(
            power=k, length=length, boundary=boundary,
            initial_position=length // 2 if x0 is None else x0,
            initial_coin=initial_coin,
        )
    coin_matrix = _COINS[coin](k)
    state = qw.initial_state(config)
    mu_rows = [qw.position_distribution(state)]
    for _ in range(steps):
        state = qw.step(state, config, coin_matrix)
        mu_rows.append(qw.position_distribution(state))
    mu_by_step = np.stack(mu_rows)

    mean, std = qw.spread_stats(mu_by_step[-1])
    click.echo(f"after {steps} steps: mean site {mean:.3f}, spread (stddev) {std:.3f}")
    if out:
        out_dir = Path(out)
        out_dir.mkdir(parents=True, exist_ok=True)
        csv_path = out_dir / "walk_trace.csv"
        with csv_path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "x", "mu"])
            for n, row in enumerate(mu_by_step):
                for x, value in enumerate(row):
                    writer.writerow([n, x, f"{value:.12e}"])
        plots.render_walk_heatmap(out_dir / "walk_heatmap.png", mu_by_step)
        click.echo(f"wrote {csv_path} and walk_heatmap.png")


@main.group("angel")
def angel():
    """Angel-vs-Devil matches."""


@angel.command("run")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Match config JSON (defaults bundled in).")
@click.option("--matches", default=20, show_default=True)
@click.option("--angel-strategy", "angel_name", type=click.Choice(ANGEL_STRATEGY_NAMES),
              default="fixed-coin", show_default=True)
@click.option("--devil-policy", "devil_name", type=click.Choice(DEVIL_POLICY_NAMES),
              default="sweep", show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", type=click.Path(file_okay=False), required=True,
              help="Directory for transcripts, win_rates.csv and outcome figure.")
def angel_run(config_path: str | None, matches: int, angel_name: str, devil_name: str,
              seed: int, out: str):
    """Run a seeded batch of matches; write transcripts and win-rate reports."""
    if config_path is not None:
        config_doc = json.loads(Path(config_path).read_text())
    else:
        config_doc = {"walker": {"power": 1, "length": 11, "initial_position": 5},
                      "horizon": 40}
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)

    summaries = []
    for i in range(matches):
        doc = dict(config_doc)
        doc["seed"] = seed + i
        config = angelgame.config_from_dict(doc)
        strategy = make_angel_strategy(angel_name, config)
        policy = make_devil_policy(devil_name, config.walker.length, seed=config.seed)
        final = angelgame.run_match(config, policy, strategy)
        (out_dir / f"match_{i:04d}.json").write_text(angelgame.transcript(final))
        summaries.append(angelgame.match_summary(final))

    caught = sum(1 for s in summaries if s["status"] == angelgame.ANGEL_CAUGHT)
    survived = len(summaries) - caught
    click.echo(f"matches: {len(summaries)}  devil wins: {caught}  angel wins: {survived}")
    csv_path = out_dir / "win_rates.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["match", "status", "winner", "rounds", "blocks_placed"])
        for i, s in enumerate(summaries):
            writer.writerow([i, s["status"], s["winner"], s["rounds"], s["blocks_placed"]])
    plots.render_match_outcomes(out_dir / "outcomes.png", summaries)
    click.echo(f"wrote {matches} transcripts, {csv_path} and outcomes.png")


@main.command("nash")
@click.option("--game", "game_ref", required=True,
              help="Game definition path or a bundled name (e.g. two_step_two_player).")
@click.option("--grid", default=4, show_default=True, help="Grid resolution G.")
@click.option("--eps", default=1e-9, show_default=True, help="Equilibrium tolerance.")
@click.option("--out", type=click.Path(file_okay=False), default=None,
              help="Directory for equilibria.json/.csv and payoff_landscape.png.")
def nash(game_ref: str, grid: int, eps: float, out: str | None):
    """Exhaustive grid equilibrium search over a game definition."""
    path = Path(game_ref)
    game = gametree.load_game(path) if path.exists() else gametree.bundled_game(game_ref)
    report = gametree.validate_game(game)
    if not report.ok:
        raise click.ClickException(f"game definition invalid: {report}")
    space = equilibrium.StrategySpace(grid_resolution=grid)
    results = equilibrium.find_nash(game, space, eps)
    click.echo(
        f"{game.name}: {len(results)} grid profiles are {eps:g}-Nash at resolution G={grid}"
    )
    for r in results[:10]:
        angles = {
            uid: equilibrium.enumerate_angles(space)[idx][0]
            for uid, idx in (r.grid_indices or {}).items()
        }
        click.echo("  " + "; ".join(
            f"{uid}: theta={a[0]:.3f} phi={a[1]:.3f} lambda={a[2]:.3f}"
            for uid, a in sorted(angles.items())
        ))
    if len(results) > 10:
        click.echo(f"  ... and {len(results) - 10} more")

    if out:
        out_dir = Path(out)
        out_dir.mkdir(parents=True, exist_ok=True)
        json_path = out_dir / "equilibria.json"
        json_path.write_text(json.dumps(
            [equilibrium.report_to_dict(r, space) for r in results], indent=2
        ) + "\n")
        csv_path = out_dir / "equilibria.csv"
        order = [uid for uid in game.turn_order if uid in game.info_sets]
        with csv_path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["profile"] + [f"{uid}_grid_index" for uid in order]
                            + [f"slack_p{p}" for p in game.players])
            for i, r in enumerate(results):
                writer.writerow(
                    [i] + [r.grid_indices[uid] for uid in order]
                    + [f"{r.per_player_slack[p]:.3e}" for p in game.players]
                )
        if len(order) == 2:
            values = equilibrium.grid_payoff_table(game, game.players[0], space)
            plots.render_payoff_landscape(
                out_dir / "payoff_landscape.png", values, game.players[0]
            )
        click.echo(f"wrote {json_path} and equilibria.csv")


@main.command("serve")
@click.option("--port", default=None, type=int, help="Defaults to QEFG_PORT or 8000.")
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port: int | None, host: str):
    """Start the devil-play HTTP session service."""
    import uvicorn

    from .service import DEFAULT_PORT, create_app

    uvicorn.run(create_app(), host=host, port=port if port is not None else DEFAULT_PORT)


if __name__ == "__main__":
    main()
