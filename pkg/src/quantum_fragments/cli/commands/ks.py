"""KS command: the Kochen-Specker sphere model of a qubit."""

import click

from quantum_fragments.cli.common import execute, experiment_options
from quantum_fragments.services.experiment_service import MODES


@click.command()
@click.argument("mode", type=click.Choice(MODES["ks"]), default=MODES["ks"][0], required=False)
@experiment_options
def ks(mode, fmt, **options):
    """Sphere model: born, born-check, overlap or convergence."""
    execute("ks", mode, fmt, **options)
