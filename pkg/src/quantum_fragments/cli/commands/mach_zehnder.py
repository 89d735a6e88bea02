"""Mach-Zehnder command."""

import click

from quantum_fragments.cli.common import execute, experiment_options


@click.command(name="mach-zehnder")
@experiment_options
def mach_zehnder(fmt, **options):
    """Detector statistics with and without the second beamsplitter."""
    execute("mach-zehnder", None, fmt, **options)
