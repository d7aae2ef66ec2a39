"""Command-line front end for running studies.

Exit codes: 0 on success, 2 for configuration problems, 3 for runtime
failures.
"""

from __future__ import annotations

import dataclasses
import sys

import click

from .harness import (
    PRESET_DESCRIPTIONS,
    ConfigError,
    dumps_config,
    preset_config,
    preset_names,
    read_config_file,
    run_experiment,
    validate_config,
    write_results,
)


@click.group()
def main():
    """Variance-reduced Monte Carlo estimation studies."""


def _apply_overrides(cfg, **overrides):
    changes = {k: v for k, v in overrides.items() if v is not None}
    if changes:
        cfg = dataclasses.replace(cfg, **changes)
        validate_config(cfg)
    return cfg


def _execute(cfg):
    try:
        result = run_experiment(cfg)
        paths = write_results(result)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    except Exception as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(3)
    click.echo(f"reference mean: {result.reference!r}")
    width = max(len(r.estimator) for r in result.rows)
    current = None
    for row in result.rows:
        if row.n != current:
            current = row.n
            click.echo(f"n = {row.n} ({row.trials} trials)")
        click.echo(
            f"  {row.estimator:<{width}}  mse {row.mse:12.6g}  "
            f"stderr {row.stderr:12.6g}"
        )
    for fmt, path in paths.items():
        click.echo(f"wrote {path}")


def _parse_n_grid(_ctx, _param, value):
    if value is None:
        return None
    try:
        return tuple(int(part) for part in value.split(",") if part.strip())
    except ValueError:
        raise click.BadParameter("expected a comma-separated list of integers")


@main.command()
@click.option(
    "--config", "config_path", required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="YAML study configuration.",
)
@click.option("--seed", type=int, default=None, help="Override the config seed.")
@click.option("--threads", type=int, default=None, help="Override worker count.")
@click.option("--out", type=str, default=None, help="Override the output directory.")
def run(config_path, seed, threads, out):
    """Run the study described by a config file."""
    try:
        cfg = read_config_file(config_path)
        cfg = _apply_overrides(cfg, seed=seed, threads=threads, out=out)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    except Exception as exc:
        click.echo(f"error reading config: {exc}", err=True)
        sys.exit(2)
    _execute(cfg)


@main.command()
@click.argument("name")
@click.option("--trials", type=int, default=None, help="Override the trial count.")
@click.option("--seed", type=int, default=None, help="Override the preset seed.")
@click.option("--threads", type=int, default=None, help="Override worker count.")
@click.option("--out", type=str, default=None, help="Override the output directory.")
@click.option(
    "--n-grid", callback=_parse_n_grid, default=None,
    help="Override sample sizes, e.g. 40,160,640.",
)
@click.option(
    "--print-config", is_flag=True,
    help="Print the resolved config as YAML instead of running.",
)
def preset(name, trials, seed, threads, out, n_grid, print_config):
    """Run (or print) a named preset study."""
    try:
        cfg = preset_config(name)
        cfg = _apply_overrides(
            cfg, trials=trials, seed=seed, threads=threads, out=out, n_grid=n_grid
        )
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    if print_config:
        click.echo(dumps_config(cfg), nl=False)
        return
    _execute(cfg)


@main.command("list-presets")
def list_presets():
    """List the available preset studies."""
    for name in preset_names():
        click.echo(f"{name}: {PRESET_DESCRIPTIONS[name]}")
