"""Hardy command: ontic state counting for M nonorthogonal qubit states."""

import click

from quantum_fragments.cli.common import execute, experiment_options


@click.command()
@experiment_options
def hardy(fmt, **options):
    """Check Hardy's 2^N >= M bound on the orthodox model, or on --model."""
    execute("hardy", None, fmt, **options)
