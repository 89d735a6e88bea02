"""Main CLI entry point for the quantum fragments toolkit."""

import click

from quantum_fragments.cli.commands.chsh import chsh
from quantum_fragments.cli.commands.gaussian import gaussian
from quantum_fragments.cli.commands.hardy import hardy
from quantum_fragments.cli.commands.ks import ks
from quantum_fragments.cli.commands.mach_zehnder import mach_zehnder
from quantum_fragments.cli.commands.pbr import pbr
from quantum_fragments.cli.commands.toy import toy
from quantum_fragments.utils.logging import setup_logging


@click.group()
def cli():
    """Classical fragments of quantum theory and the no-go theorems that bound them."""
    setup_logging()


# Register commands
cli.add_command(toy)
cli.add_command(chsh)
cli.add_command(ks)
cli.add_command(gaussian)
cli.add_command(hardy)
cli.add_command(pbr)
cli.add_command(mach_zehnder)


if __name__ == "__main__":
    cli()
