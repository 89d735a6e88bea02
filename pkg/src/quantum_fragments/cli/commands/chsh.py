"""CHSH command: game value under classical, local and quantum strategies."""

import click

from quantum_fragments.cli.common import execute, experiment_options
from quantum_fragments.services.experiment_service import MODES


@click.command()
@click.argument("mode", type=click.Choice(MODES["chsh"]), default=MODES["chsh"][0], required=False)
@experiment_options
def chsh(mode, fmt, **options):
    """CHSH game: enumerate, quantum, lhv-sweep or simulate."""
    execute("chsh", mode, fmt, **options)
