"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.
"""
# app.py
import argparse
import logging
import sys

from components import (DynamicsCommand, ExportInterface, GroundCommand, SteadyCommand,
                        ValidateCommand)
from errors import EXIT_INVALID, EXIT_OK, CoherenceError, DomainError, exit_code_for
from utils.config import Settings

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors mapped to the invalid-input exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_INVALID)


class SweepApp:
    commands = (ValidateCommand, GroundCommand, SteadyCommand, DynamicsCommand)

    def __init__(self, settings=None):
        self.settings = settings or Settings()
        self.parser = self.build()

    def build(self):
        """Create the parser with one subcommand per component."""
        parser = ArgumentParser(
            prog='coupled-coherence',
            description='Coherence of two bilinearly coupled bosonic modes.',
        )
        parser.add_argument('--verbose', action='store_true', help='debug logging on stderr')
        subparsers = parser.add_subparsers(dest='command', required=True)
        for command_class in self.commands:
            command = command_class(self.settings)
            sub = subparsers.add_parser(command.name, help=command.help)
            command.setup_parser(sub)
            sub.set_defaults(handler=command)
        return parser

    def run(self, argv=None):
        """Parse argv, run the command and write its table; returns the exit code."""
        args = self.parser.parse_args(argv)
        if args.verbose:
            logging.getLogger().setLevel(logging.DEBUG)
        try:
            if getattr(args, 'workers', 1) < 1:
                raise DomainError(f"--workers must be >= 1, got {args.workers}")
            table = args.handler.perform(args)
            ExportInterface(args.fmt).perform_export(table, args.out)
        except CoherenceError as e:
            logger.debug("%s failed", args.command, exc_info=True)
            sys.stderr.write(f"error: {e}\n")
            return exit_code_for(e)
        return table.exit_code if table.has_errors else EXIT_OK
