"""PBR command: preparation independence against overlapping preparations."""

import click

from quantum_fragments.cli.common import execute, experiment_options


@click.command()
@experiment_options
def pbr(fmt, **options):
    """Measure the PBR deficit of --model, or of a seeded sweep of overlapping models."""
    execute("pbr", None, fmt, **options)
