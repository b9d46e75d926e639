import contextlib
import logging
from pathlib import Path
from typing import Optional

import click
from rich.console import Console
from rich.logging import RichHandler

from ..errors import ConfigError, ExpressionError, FpsymError
from . import handlers
from .config import FORMATS, load_config
from .handlers.determining import SYSTEMS
from .handlers.verify import ALL, TARGETS
from .report import Report, emit

LOG_LEVELS = {0: logging.WARNING, 1: logging.INFO}


def configure_logging(verbosity: int) -> None:
    """Rich log records on stderr so stdout stays a clean report."""
    level = LOG_LEVELS.get(verbosity, logging.DEBUG)
    root = logging.getLogger()
    for handler in list(root.handlers):
        if isinstance(handler, RichHandler):
            root.removeHandler(handler)
    root.addHandler(RichHandler(console=Console(stderr=True), show_path=False))
    root.setLevel(level)


@contextlib.contextmanager
def usage_errors():
    """Library errors as click errors: bad input exits 2, everything else 1."""
    try:
        yield
    except (ConfigError, ExpressionError) as exc:
        raise click.UsageError(str(exc)) from exc
    except KeyError as exc:
        raise click.UsageError(str(exc.args[0]) if exc.args else str(exc)) from exc
    except FpsymError as exc:
        raise click.ClickException(str(exc)) from exc


def _finish(ctx: click.Context, report: Report) -> None:
    emit(report, ctx.obj["CONFIG"].structured)
    ctx.exit(report.exit_code)


@click.group()
@click.option(
    "--config",
    "config_path",
    type=click.Path(path_type=Path),
    default=None,
    help="Path to the fpsym config file.",
)
@click.option("--a1", type=str, default=None, help="Value of a1: a rational or 'symbolic'.")
@click.option("--a2", type=str, default=None, help="Value of a2: a nonzero rational or 'symbolic'.")
@click.option("--grid", type=str, default=None, help="Finite-difference grid as x0,x1,t0,t1,h,L.")
@click.option("--tol", "tolerance", type=float, default=None, help="Numeric residual tolerance.")
@click.option("--seed-rng", "seed", type=int, default=None, help="Seed for randomized checks.")
@click.option(
    "--format",
    "output_format",
    type=click.Choice(FORMATS),
    default=None,
    help="Report format.",
)
@click.option("--strict", is_flag=True, help="Treat informational mismatches as failures.")
@click.option("-v", "--verbose", count=True, help="Log progress (-vv for debug detail).")
@click.pass_context
def main(ctx, config_path, a1, a2, grid, tolerance, seed, output_format, strict, verbose) -> None:
    """Symmetry and solution checks for the Fokker-Planck equation family."""
    ctx.ensure_object(dict)
    configure_logging(verbose)
    overrides = {
        "a1": a1,
        "a2": a2,
        "grid": grid,
        "tolerance": tolerance,
        "seed": seed,
        "format": output_format,
        "strict": strict,
    }
    try:
        ctx.obj["CONFIG"] = load_config(config_path, overrides)
    except ConfigError as exc:
        raise click.UsageError(str(exc)) from exc


@main.command(help="Verify the catalog generators against their systems.")
@click.option(
    "--target",
    type=click.Choice(TARGETS),
    default=ALL,
    help="Which catalog to verify.",
)
@click.pass_context
def verify(ctx, target: str) -> None:
    """Verify the catalog generators against their systems."""
    with usage_errors():
        report = handlers.verify_generators(ctx.obj["CONFIG"], target)
    _finish(ctx, report)


@main.command(help="Compute the commutator table and diff it against golden data.")
@click.option(
    "--golden",
    "golden_path",
    type=click.Path(path_type=Path, exists=True, dir_okay=False),
    default=None,
    help="Golden table YAML to compare against instead of the built-in one.",
)
@click.pass_context
def table(ctx, golden_path: Optional[Path]) -> None:
    """Compute the commutator table and diff it against golden data."""
    with usage_errors():
        report = handlers.compare_table(ctx.obj["CONFIG"], golden_path)
    _finish(ctx, report)


@main.command(help="Generate a chain of solutions from a seed.")
@click.option("--seed", "seed_expr", type=str, required=True, help="Seed solution, e.g. 'exp(-a2*t)'.")
@click.option("--ops", type=str, required=True, help="Comma separated operator ids, e.g. F1,F1.")
@click.pass_context
def generate(ctx, seed_expr: str, ops: str) -> None:
    """Generate a chain of solutions from a seed."""
    with usage_errors():
        report = handlers.generate_chain(ctx.obj["CONFIG"], seed_expr, handlers.split_ops(ops))
    _finish(ctx, report)


@main.command(help="Check a closed-form solution of the FPE.")
@click.option("--expr", type=str, default=None, help="Solution expression in x and t.")
@click.option("--claim", "claim_id", type=str, default=None, help="Id of a registry claim.")
@click.option("--numeric/--no-numeric", default=True, help="Run the finite-difference oracle as well.")
@click.pass_context
def check(ctx, expr: Optional[str], claim_id: Optional[str], numeric: bool) -> None:
    """Check a closed-form solution of the FPE."""
    if (expr is None) == (claim_id is None):
        raise click.UsageError("Exactly one of --expr or --claim is required.")
    with usage_errors():
        try:
            report = handlers.check_solution(ctx.obj["CONFIG"], expr, claim_id, numeric)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
    _finish(ctx, report)


@main.command(help="Derive a determining system and compare it with the printed one.")
@click.option(
    "--system",
    type=click.Choice(SYSTEMS),
    default="fpe",
    help="Which system to derive.",
)
@click.pass_context
def determining(ctx, system: str) -> None:
    """Derive a determining system and compare it with the printed one."""
    with usage_errors():
        report = handlers.compare_determining(ctx.obj["CONFIG"], system)
    _finish(ctx, report)


@main.command(name="claims", help="List the shipped claim registry.")
@click.option("--kind", type=str, default=None, help="Only claims of this kind.")
@click.pass_context
def claims_command(ctx, kind: Optional[str]) -> None:
    """List the shipped claim registry."""
    _finish(ctx, handlers.list_claims(kind))


if __name__ == "__main__":
    main()
