"""Command line entry point: ``lppkit <command> --config FILE [overrides]``."""
from __future__ import annotations

import json
import sys

import click
from pydantic import ValidationError

from .config import config_schema, load_config
from .runner import EXIT_USAGE, run

COMMANDS = ("simulate", "exact", "two-time", "asymptotic", "validate", "diagnostic", "schema")


def _format_errors(err: ValidationError) -> str:
    return "\n".join(f"  {'.'.join(str(p) for p in e['loc']) or '<root>'}: {e['msg']}"
                     for e in err.errors())


@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.argument("command", type=click.Choice(COMMANDS))
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              help="JSON run configuration.")
@click.option("--seed", type=int, help="Override the RNG seed.")
@click.option("--samples", type=int, help="Override the Monte Carlo sample count.")
@click.option("--out", type=click.Path(dir_okay=False), help="Output file (default stdout).")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), help="Output format.")
@click.option("--workers", type=int, help="Worker processes for Monte Carlo.")
@click.option("--suite", help="Validation suite (validate only).")
def cli(command, config_path, seed, samples, out, fmt, workers, suite):
    """Run COMMAND; 'schema' prints the JSON schema of the config file."""
    if command == "schema":
        click.echo(json.dumps(config_schema(), indent=2))
        return 0
    try:
        cfg = load_config(config_path, command=command, seed=seed, sample_count=samples,
                          out=out, format=fmt, workers=workers, suite=suite)
    except ValidationError as e:
        click.echo(f"invalid configuration:\n{_format_errors(e)}", err=True)
        return EXIT_USAGE
    except json.JSONDecodeError as e:
        click.echo(f"config is not valid JSON: {e}", err=True)
        return EXIT_USAGE
    return run(cfg)


def main(argv=None) -> None:
    """Console entry point; click usage errors exit with status 1."""
    try:
        code = cli.main(args=argv, standalone_mode=False)
    except click.ClickException as e:
        e.show()
        code = EXIT_USAGE
    except click.Abort:
        code = EXIT_USAGE
    sys.exit(code or 0)
