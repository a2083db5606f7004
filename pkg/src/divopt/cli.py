"""Command-line interface: indicator evaluation, subset selection, the
clique reduction, property-table regeneration, and the benchmark suite."""

from __future__ import annotations

import sys
from pathlib import Path

import click
import numpy as np

from . import bench as bench_mod
from .contributions import all_contributions
from .indicators import evaluate, parse_indicator
from .noah import NoahConfig, parse_config_file
from .properties import regenerate_property_table
from .selection import (
    CliqueInstance,
    brute_force_select,
    clique_via_energy,
    greedy_select,
)
from .spaces import DistanceMatrix, load_graph, load_matrix_csv


def _fmt(value) -> str:
    if value is None:
        return "Undefined"
    return f"{value:.12g}"


def _parse_subset(text: str) -> tuple:
    return tuple(int(t) for t in text.split(",") if t.strip() != "")


@click.group()
def main():
    """Diversity indicators for finite similarity spaces."""


@main.group(name="indicators")
def indicators_group():
    """Evaluate indicators and contribution vectors."""


@indicators_group.command(name="eval")
@click.option("--matrix", "matrix_path", required=True, type=click.Path(exists=True))
@click.option("--subset", default=None, help="comma-separated indices; default: all points")
@click.option("--indicator", "indicator_name", required=True)
@click.option("--s", default=2.0, show_default=True, type=float)
@click.option("--theta", default=1.0, show_default=True, type=float)
def indicators_eval(matrix_path, subset, indicator_name, s, theta):
    """Print the indicator value on a subset with 12 significant digits."""
    dm = load_matrix_csv(matrix_path)
    ind = parse_indicator(indicator_name, s=s, theta=theta)
    idx = _parse_subset(subset) if subset is not None else tuple(range(dm.n))
    try:
        value = evaluate(ind, dm, idx)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    click.echo(_fmt(value))


@indicators_group.command(name="contrib")
@click.option("--matrix", "matrix_path", required=True, type=click.Path(exists=True))
@click.option("--indicator", "indicator_name", required=True)
@click.option("--s", default=2.0, show_default=True, type=float)
@click.option("--theta", default=1.0, show_default=True, type=float)
def indicators_contrib(matrix_path, indicator_name, s, theta):
    """Print the all-elements contribution vector as one CSV line."""
    dm = load_matrix_csv(matrix_path)
    ind = parse_indicator(indicator_name, s=s, theta=theta)
    try:
        contribs = all_contributions(ind, dm, range(dm.n))
    except ValueError as exc:
        raise click.ClickException(str(exc))
    click.echo(",".join(_fmt(c) for c in contribs))


@main.command(name="select")
@click.option("--matrix", "matrix_path", required=True, type=click.Path(exists=True))
@click.option("--indicator", "indicator_name", required=True)
@click.option("-k", "k", required=True, type=int)
@click.option("--method", type=click.Choice(["brute", "greedy"]), default="brute", show_default=True)
@click.option("--s", default=2.0, show_default=True, type=float)
@click.option("--theta", default=1.0, show_default=True, type=float)
def select_cmd(matrix_path, indicator_name, k, method, s, theta):
    """Pick the k most diverse points under an indicator."""
    dm = load_matrix_csv(matrix_path)
    ind = parse_indicator(indicator_name, s=s, theta=theta)
    try:
        if method == "brute":
            result = brute_force_select(ind, dm, k)
        else:
            result = greedy_select(ind, dm, k)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    click.echo("subset: " + ",".join(str(i) for i in result.subset))
    click.echo("value: " + _fmt(result.value))


@main.command(name="clique")
@click.option("--graph", "graph_path", required=True, type=click.Path(exists=True))
@click.option("-k", "k", required=True, type=int)
@click.option("--s", default=1.0, show_default=True, type=float)
def clique_cmd(graph_path, k, s):
    """Decide k-clique existence via the Riesz-energy bound."""
    g = load_graph(graph_path)
    try:
        result = clique_via_energy(CliqueInstance(graph=g, k=k, s=s))
    except ValueError as exc:
        raise click.ClickException(str(exc))
    if result.has_clique:
        click.echo("HasClique: " + ",".join(str(i) for i in result.witness))
    else:
        click.echo("NoClique")
    click.echo("energy: " + _fmt(result.energy))
    click.echo(f"bounds: [{_fmt(result.lower_bound)}, {_fmt(result.upper_bound)}]")


@main.command(name="properties")
@click.option("--table", "table_only", is_flag=True, help="emit only the regenerated table")
@click.option("--csv", "csv_path", default=None, type=click.Path(), help="also write the table as CSV")
@click.option("--seed", default=0, show_default=True, type=int)
def properties_cmd(table_only, csv_path, seed):
    """Regenerate the indicator property table on the standard battery."""
    table = regenerate_property_table(rng_seed=seed)
    click.echo(table.render_text(include_notes=not table_only))
    if csv_path is not None:
        Path(csv_path).write_text(table.render_csv() + "\n")


@main.group(name="bench")
def bench_group():
    """Case-study reproduction experiments."""


@bench_group.command(name="reproduce")
@click.option("--indicator", "indicator_name", type=click.Choice(["maxmin", "riesz", "sp"]), default=None,
              help="single indicator variant; default: all three")
@click.option("-R", "replicates", default=30, show_default=True, type=int)
@click.option("--config", "config_path", default=None, type=click.Path(exists=True),
              help="NOAH config file (flat key = value)")
@click.option("--out", "out_dir", default="out/reproduce", show_default=True, type=click.Path())
@click.option("--base-seed", default=1000, show_default=True, type=int)
def bench_reproduce(indicator_name, replicates, config_path, out_dir, base_seed):
    """Run the replicated NOAH comparison and emit traces, stats, and plots."""
    cfg = parse_config_file(config_path) if config_path else NoahConfig()
    names = (indicator_name,) if indicator_name else ("maxmin", "riesz", "sp")
    results = bench_mod.run_experiment(
        cfg, replicates, out_dir=out_dir, indicators=names, base_seed=base_seed
    )
    click.echo(bench_mod.trend_report(results), nl=False)
    click.echo(f"outputs written under {out_dir}")


@bench_group.command(name="efficient-set")
@click.option("--eps", default=1.0, show_default=True, type=float)
@click.option("--resolution", default=100, show_default=True, type=int)
@click.option("--out", "out_path", default=None, type=click.Path(), help="write members as CSV")
def bench_efficient_set(eps, resolution, out_path):
    """Compute the epsilon-dominance efficient set on the grid."""
    grid = bench_mod.efficient_set(resolution=resolution, eps=eps)
    members = grid.members
    click.echo(f"members: {len(members)}")
    click.echo(f"connected components: {grid.connected_components()}")
    if out_path is not None:
        np.savetxt(out_path, members, delimiter=",", fmt="%.17g")
        click.echo(f"written to {out_path}")


@bench_group.command(name="ttest")
@click.option("--a", "a_path", required=True, type=click.Path(exists=True))
@click.option("--b", "b_path", required=True, type=click.Path(exists=True))
@click.option("--welch", is_flag=True, help="Welch form instead of pooled variance")
def bench_ttest(a_path, b_path, welch):
    """Two-sample t-test between two one-column CSV samples."""
    try:
        a = np.loadtxt(a_path, delimiter=",").ravel()
        b = np.loadtxt(b_path, delimiter=",").ravel()
        result = bench_mod.two_sample_ttest(a, b, welch=welch)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    if result.undefined:
        click.echo("t: Undefined (zero variance, equal means)")
        return
    click.echo("t: " + _fmt(result.t))
    click.echo("p: " + _fmt(result.p))
    click.echo("df: " + _fmt(result.df))


@bench_group.command(name="modified-maxmin")
@click.option("-R", "replicates", default=1000, show_default=True, type=int)
@click.option("--target", default=1.9, show_default=True, type=float)
@click.option("--gen-cap", default=2000, show_default=True, type=int)
@click.option("--base-seed", default=5000, show_default=True, type=int)
def bench_modified_maxmin(replicates, target, gen_cap, base_seed):
    """Compare contributor-biased and uniform parent selection."""
    report = bench_mod.run_modified_maxmin_experiment(
        replicates, target=target, gen_cap=gen_cap, base_seed=base_seed
    )
    click.echo(report.summary(), nl=False)


if __name__ == "__main__":
    sys.exit(main())
