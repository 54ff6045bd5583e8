"""
Command line interface.

    pgroup-verify build   --family A -p 3 -n 4
    pgroup-verify analyze --family B -p 3
    pgroup-verify verify  --family A -p 3 -n 4 --json
    pgroup-verify oracle  --family heisenberg -p 3
    pgroup-verify fixtures --family C -p 3

Exit status: 0 every check passed, 1 usage or input error, 2 a claim
failed or a counterexample was found, 3 inconclusive.
"""

from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple
import functools
import logging
import sys

import click

from .app import create_app
from .models.family import FamilyKind, FamilySpec
from .models.presentation import PcPresentation
from .models.report import EXIT_USAGE, Report
from .services.family_service import FamilyFactory
from .services.report_service import render, stamp, write_report
from .services.solver_service import ORDERINGS, SolverOptions
from .utils.validation import CapExceededError, PreconditionError, ValidationError

logger = logging.getLogger(__name__)

INPUT_ERRORS = (ValidationError, PreconditionError, CapExceededError)


class ExitCodeGroup(click.Group):
    """Group whose usage errors exit with status 1 instead of click's 2."""

    def main(
        self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra
    ):
        try:
            rv = super().main(
                args, prog_name, complete_var, standalone_mode=False, **extra
            )
        except click.ClickException as e:
            e.show()
            rv = EXIT_USAGE
        except click.Abort:
            click.echo("Aborted!", err=True)
            rv = EXIT_USAGE
        rv = rv if isinstance(rv, int) else 0
        if standalone_mode:
            sys.exit(rv)
        return rv


def input_options(func: Callable) -> Callable:
    """--family/-p/-n/--orders or --file."""

    @click.option(
        "--family",
        type=click.Choice(FamilyFactory.available(), case_sensitive=False),
        help="Group family to build.",
    )
    @click.option("-p", "prime", type=int, help="The prime p.")
    @click.option("-n", "n", type=int, help="Order exponent of x_1 (family A, n >= 4).")
    @click.option(
        "--orders",
        help="Comma-separated order exponents (abelian family), e.g. 1,1.",
    )
    @click.option(
        "--file",
        "path",
        type=click.Path(dir_okay=False),
        help="Presentation file (.pcp or .json), or a bundled presentation name.",
    )
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        return func(*args, **kwargs)

    return wrapper


def budget_options(func: Callable) -> Callable:
    @click.option("--budget-nodes", type=int, help="Search node budget [PGV_BUDGET_NODES].")
    @click.option(
        "--budget-seconds", type=float, help="Wall-clock budget [PGV_BUDGET_SECONDS]."
    )
    @click.option("--workers", type=int, help="Solver worker processes [PGV_WORKERS].")
    @click.option(
        "--ordering",
        type=click.Choice(ORDERINGS),
        default="constrained",
        show_default=True,
        help="Variable ordering of the mod-p search.",
    )
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        return func(*args, **kwargs)

    return wrapper


def report_options(func: Callable) -> Callable:
    @click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of Markdown.")
    @click.option(
        "--output", type=click.Path(dir_okay=False), help="Write the report to a file."
    )
    @click.option(
        "--no-timestamp", is_flag=True, help="Omit generated_at for reproducible output."
    )
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        return func(*args, **kwargs)

    return wrapper


def _parse_orders(orders: Optional[str]) -> Tuple[int, ...]:
    if not orders:
        return ()
    try:
        return tuple(int(part) for part in orders.split(","))
    except ValueError:
        raise click.BadParameter(f"expected integers, got {orders!r}", param_hint="--orders")


def resolve_spec(
    family: Optional[str], prime: Optional[int], n: Optional[int], orders: Optional[str]
) -> FamilySpec:
    if prime is None:
        raise click.UsageError("-p is required with --family")
    kind = FamilyKind(family)
    if n is not None and kind != FamilyKind.A:
        raise click.UsageError("-n applies to family A only")
    if orders and kind != FamilyKind.ABELIAN:
        raise click.UsageError("--orders applies to the abelian family only")
    if kind == FamilyKind.A and n is None:
        n = 4
    return FamilySpec(kind, prime, n, _parse_orders(orders))


def load_input(
    ctx: click.Context,
    family: Optional[str],
    prime: Optional[int],
    n: Optional[int],
    orders: Optional[str],
    path: Optional[str],
) -> Tuple[PcPresentation, Optional[FamilySpec], str]:
    """The presentation, its family (None for files) and a report label."""
    if (family is None) == (path is None):
        raise click.UsageError("give exactly one of --family or --file")
    if path is not None:
        if prime is not None or n is not None:
            raise click.UsageError("-p and -n cannot be combined with --file")
        repository = ctx.obj.get("presentation_repository")
        presentation = _guard(lambda: repository.load(path))
        return presentation, None, Path(path).name
    spec = resolve_spec(family, prime, n, orders)
    families = ctx.obj.get("family_factory")
    return _guard(lambda: families.build(spec)), spec, spec.label


def _guard(compute: Callable):
    """Turn input errors into click errors (exit status 1)."""
    try:
        return compute()
    except INPUT_ERRORS as e:
        raise click.ClickException(str(e))
    except FileNotFoundError as e:
        raise click.ClickException(f"no such file: {e.filename}")


def solver_options(
    ctx: click.Context,
    budget_nodes: Optional[int],
    budget_seconds: Optional[float],
    workers: Optional[int],
    ordering: str,
) -> SolverOptions:
    config = ctx.obj.get("config")
    return SolverOptions(
        max_nodes=budget_nodes if budget_nodes is not None else config.get_budget_nodes(),
        max_seconds=(
            budget_seconds if budget_seconds is not None else config.get_budget_seconds()
        ),
        workers=workers if workers is not None else config.get_workers(),
        ordering=ordering,
    )


def emit(
    ctx: click.Context,
    report: Report,
    as_json: bool,
    output: Optional[str],
    no_timestamp: bool,
) -> None:
    """Print or write the report, then exit with its status."""
    if not no_timestamp:
        stamp(report)
    fmt = "json" if as_json else "markdown"
    if output:
        write_report(report, output, fmt)
    else:
        click.echo(render(report, fmt), nl=False)
    for check in report.failed:
        logger.warning(f"Claim failed: {check.claim} ({check.check}): {check.detail}")
    ctx.exit(report.exit_code)


@click.group(cls=ExitCodeGroup)
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    help="Logging level (logs go to stderr).",
)
@click.option("--env", help="Configuration environment [PGV_ENV].")
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str], env: Optional[str]) -> None:
    """Verification toolkit for class-2 p-groups given by pc presentations."""
    ctx.obj = create_app(env, log_level)


@cli.command()
@input_options
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["pcp", "json"]),
    default="pcp",
    show_default=True,
)
@click.option("--output", type=click.Path(dir_okay=False), help="Write to a file.")
@click.pass_context
def build(ctx, family, prime, n, orders, path, fmt, output):
    """Emit the presentation of a family."""
    presentation, _, label = load_input(ctx, family, prime, n, orders, path)
    repository = ctx.obj.get("presentation_repository")
    if fmt == "json":
        text = repository.serialize_json(presentation)
    else:
        text = repository.serialize(presentation, comments=[label])
    if output:
        target = Path(output)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {label} to {target}")
    else:
        click.echo(text, nl=False)


@cli.command()
@input_options
@click.option("--seed", type=int, help="Seed of the sampling checks [PGV_SEED].")
@click.option(
    "--count-central",
    is_flag=True,
    help="Also sweep every x -> x f(x) and count the automorphisms among them.",
)
@click.option("--workers", type=int, help="Worker processes for the sweep [PGV_WORKERS].")
@report_options
@click.pass_context
def analyze(
    ctx, family, prime, n, orders, path, seed, count_central, workers,
    as_json, output, no_timestamp,
):
    """Structure and criteria, with the claims for the family."""
    presentation, spec, label = load_input(ctx, family, prime, n, orders, path)
    service = ctx.obj.get("verification_service")
    report = _guard(
        lambda: service.analyze(
            presentation,
            spec,
            label,
            seed,
            count_central=count_central,
            workers=workers,
        )
    )
    emit(ctx, report, as_json, output, no_timestamp)


@cli.command()
@input_options
@click.option("--seed", type=int, help="Seed of the sampling checks [PGV_SEED].")
@budget_options
@report_options
@click.pass_context
def verify(
    ctx, family, prime, n, orders, path, seed, budget_nodes, budget_seconds,
    workers, ordering, as_json, output, no_timestamp,
):
    """Full pipeline: structure, criteria and the all-central search."""
    presentation, spec, label = load_input(ctx, family, prime, n, orders, path)
    options = solver_options(ctx, budget_nodes, budget_seconds, workers, ordering)
    service = ctx.obj.get("verification_service")
    report = _guard(lambda: service.verify(presentation, spec, label, options, seed))
    emit(ctx, report, as_json, output, no_timestamp)


@cli.command()
@input_options
@budget_options
@report_options
@click.pass_context
def oracle(
    ctx, family, prime, n, orders, path, budget_nodes, budget_seconds,
    workers, ordering, as_json, output, no_timestamp,
):
    """Count Aut(G) by brute force and compare with the solver (small groups)."""
    presentation, spec, label = load_input(ctx, family, prime, n, orders, path)
    options = solver_options(ctx, budget_nodes, budget_seconds, workers, ordering)
    service = ctx.obj.get("verification_service")
    report = _guard(lambda: service.oracle(presentation, spec, label, options))
    emit(ctx, report, as_json, output, no_timestamp)


@cli.command()
@click.option(
    "--family",
    type=click.Choice(["A", "B", "C"], case_sensitive=False),
    required=True,
)
@click.option("-p", "prime", type=int, required=True, help="The prime p.")
@click.option("-n", "n", type=int, help="Order exponent of x_1 (family A).")
@click.option(
    "--all-solutions",
    is_flag=True,
    help="Check every solution mod p, not only the invertible ones.",
)
@budget_options
@report_options
@click.pass_context
def fixtures(
    ctx, family, prime, n, all_solutions, budget_nodes, budget_seconds, workers,
    ordering, as_json, output, no_timestamp,
):
    """Check the hand-derived equation tables against the generated system."""
    spec = resolve_spec(family, prime, n, None)
    options = solver_options(ctx, budget_nodes, budget_seconds, workers, ordering)
    service = ctx.obj.get("verification_service")
    report = _guard(lambda: service.check_fixtures(spec, options, not all_solutions))
    emit(ctx, report, as_json, output, no_timestamp)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line and return its exit status."""
    args: List[str] = list(argv) if argv is not None else sys.argv[1:]
    return cli.main(args=args, prog_name="pgroup-verify", standalone_mode=False)


def main() -> None:
    sys.exit(run())
