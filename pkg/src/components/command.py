"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.
"""
# components/command.py
import logging
from dataclasses import replace

from coupled_modes import ModelParams
from errors import CoherenceError, DomainError
from results import FORMATS
from utils.sweep import parse_sweep, run_sweep

logger = logging.getLogger(__name__)

# CLI names of the model fields
FIELD_NAMES = {'lambda': 'lam', 'mu': 'mu'}
FLAG_NAMES = {'lam': 'lambda', 'fmt': 'format'}
# Settings that do not change the data rows
NOT_RECORDED = ('command', 'handler', 'workers', 'verbose')


def with_value(params, name, value):
    """Copy of params with one coupling replaced."""
    return replace(params, **{FIELD_NAMES[name]: value})


def evaluate_points(func, values, workers=1):
    """
    Run func over values in a worker pool; each result is (value, result, error)
    so failing points can be reported row by row.
    """
    def guarded(value):
        try:
            return value, func(value), None
        except CoherenceError as e:
            return value, None, e
    return run_sweep(guarded, values, workers)


def provenance(command, args):
    """One-line record of the full flag set, in a fixed order."""
    flags = ' '.join(
        f"--{FLAG_NAMES.get(key, key).replace('_', '-')}={value}"
        for key, value in sorted(vars(args).items())
        if key not in NOT_RECORDED and value is not None and value is not False
    )
    return f"coupled-coherence {command} {flags}".strip()


class Command:
    """A subcommand: registers its flags and turns parsed arguments into a ResultTable."""
    name = ''
    help = ''

    def __init__(self, settings):
        self.settings = settings

    def setup_parser(self, parser):
        """Flags shared by every subcommand."""
        parser.add_argument('--omega', type=float, default=1.0,
                            help='mode frequency used to rescale displayed quantities')
        parser.add_argument('--lambda', dest='lam', type=float, default=0.0,
                            help='exchange coupling in units of omega')
        parser.add_argument('--mu', type=float, default=0.0,
                            help='two-mode squeezing coupling in units of omega')
        parser.add_argument('--format', dest='fmt', choices=FORMATS, default='csv')
        parser.add_argument('--out', default=None, help='output file (default: stdout)')
        parser.add_argument('--workers', type=int, default=self.settings.workers)

    def add_sweep_argument(self, parser, example):
        parser.add_argument('--sweep', default=None,
                            help=f'name:start:stop:count, e.g. {example}')

    def model_params(self, args):
        if args.omega <= 0:
            raise DomainError(f"--omega must be positive, got {args.omega}")
        # Everything is computed in units of omega
        return ModelParams(1.0, args.lam, args.mu)

    def sweep_spec(self, args):
        if args.sweep is None:
            return None
        return parse_sweep(args.sweep, out=args.out, fmt=args.fmt,
                           fixed={'lambda': args.lam, 'mu': args.mu})

    def perform(self, args):
        raise NotImplementedError
