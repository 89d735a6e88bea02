"""Options and execution shared by every experiment command."""

import logging
from pathlib import Path
from typing import Any, Callable, Optional, TypeVar

import click
from pydantic import ValidationError

from quantum_fragments.constants import (
    DEFAULT_DISPLACEMENT,
    DEFAULT_M,
    DEFAULT_PAIRS,
    DEFAULT_RESOLUTION,
    DEFAULT_RR_SCALE,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_SQUEEZE,
    DEFAULT_TRIALS,
    REPORT_FORMATS,
)
from quantum_fragments.exceptions import FragmentsError
from quantum_fragments.models.experiment import ExperimentConfig
from quantum_fragments.services import experiment_service
from quantum_fragments.utils.reporting import emit

logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])

_DEFAULT_RESOLUTION_TEXT = f"{DEFAULT_RESOLUTION[0]}x{DEFAULT_RESOLUTION[1]}"

_OPTIONS = [
    click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True, help="Random seed"),
    click.option(
        "--samples",
        type=int,
        default=DEFAULT_SAMPLES,
        show_default=True,
        help="Monte Carlo samples or game rounds",
    ),
    click.option(
        "--format",
        "fmt",
        type=click.Choice(REPORT_FORMATS),
        default="json",
        show_default=True,
        help="Report format",
    ),
    click.option(
        "--resolution",
        default=_DEFAULT_RESOLUTION_TEXT,
        show_default=True,
        help="Sphere quadrature grid as N_THETAxN_PHI",
    ),
    click.option(
        "--m", "m", type=int, default=DEFAULT_M, show_default=True, help="Hardy family size M"
    ),
    click.option(
        "--rr-scale",
        type=float,
        default=DEFAULT_RR_SCALE,
        show_default=True,
        help="Phase-space resolution scale lambda",
    ),
    click.option(
        "--squeeze", type=float, default=DEFAULT_SQUEEZE, show_default=True, help="EPR width s"
    ),
    click.option(
        "--displacement",
        type=float,
        default=DEFAULT_DISPLACEMENT,
        show_default=True,
        help="EPR offset c",
    ),
    click.option(
        "--trials", type=int, default=DEFAULT_TRIALS, show_default=True, help="Random sweep size"
    ),
    click.option(
        "--pairs", type=int, default=DEFAULT_PAIRS, show_default=True, help="Random state pairs"
    ),
    click.option(
        "--model",
        type=click.Path(path_type=Path),
        default=None,
        help="Ontological model file (JSON)",
    ),
    click.option("--state", default="a", show_default=True, help="Initial toy macrostate"),
    click.option(
        "--sequence", default="", help="Comma-separated toy measurements, e.g. A,B,A"
    ),
]


def experiment_options(func: F) -> F:
    """Attach the long-form flags every experiment accepts."""
    for option in reversed(_OPTIONS):
        func = option(func)
    return func


def _validation_message(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first.get("loc", ()))
    message = str(first.get("msg", "invalid value"))
    return f"{location}: {message}" if location else message


def execute(experiment: str, mode: Optional[str], fmt: str, **options: Any) -> None:
    """Build the config, run the experiment and write its report to stdout.

    Exits with status 1 when any result row fails.
    """
    try:
        config = ExperimentConfig(experiment=experiment, mode=mode, format=fmt, **options)
        report = experiment_service.run(config)
        output = emit(report, config.format)
    except ValidationError as e:
        raise click.ClickException(_validation_message(e))
    except (FragmentsError, OSError) as e:
        raise click.ClickException(str(e))

    click.echo(output, nl=not output.endswith("\n"))
    if not report.passed:
        logger.warning(f"{experiment}: report contains failing rows")
        click.get_current_context().exit(1)
