"""Toy command: toy-theory statistics and the qubit correspondence table."""

import click

from quantum_fragments.cli.common import execute, experiment_options


@click.command()
@experiment_options
def toy(fmt, **options):
    """Toy theory: correspondence table, disturbance and measurement sequences."""
    execute("toy", None, fmt, **options)
