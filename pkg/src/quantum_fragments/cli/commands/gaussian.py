"""Gaussian command: the phase-space fragment."""

import click

from quantum_fragments.cli.common import execute, experiment_options
from quantum_fragments.services.experiment_service import MODES


@click.command()
@click.argument(
    "mode", type=click.Choice(MODES["gaussian"]), default=MODES["gaussian"][0], required=False
)
@experiment_options
def gaussian(mode, fmt, **options):
    """Gaussian phase space: uncertainty, no-cloning or epr."""
    execute("gaussian", mode, fmt, **options)
