"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.
"""
# components/steady.py
import logging

from components.command import Command, evaluate_points, provenance
from coupled_modes import validate_params
from errors import CoherenceError, DomainError
from results import ResultTable
from thermal_steady import coherence_infinite_T, steady_coherence

logger = logging.getLogger(__name__)

COLUMNS = ('T', 'coherence', 'coherence_infinite_T')


def cmd_steady(params, sweep=None, T=1.0, workers=1, omega=1.0, header=''):
    """Steady-state coherence over a temperature grid, next to its infinite-T plateau."""
    if sweep is None:
        values = [T]
    elif sweep.name == 'T':
        values = sweep.values()
    else:
        raise DomainError(f"steady sweeps T, not {sweep.name!r}")

    table = ResultTable(COLUMNS, header)
    try:
        plateau = coherence_infinite_T(validate_params(params))
    except CoherenceError as e:
        for value in values:
            table.add_error(e, T=value * omega)
        return table

    for value, result, error in evaluate_points(lambda t: steady_coherence(params, t), values, workers):
        if error is None:
            table.add_row(T=value * omega, coherence=result, coherence_infinite_T=plateau)
        else:
            table.add_error(error, T=value * omega)
    return table


class SteadyCommand(Command):
    name = 'steady'
    help = 'thermal steady-state coherence as a function of temperature'

    def setup_parser(self, parser):
        super().setup_parser(parser)
        parser.add_argument('--T', dest='T', type=float, default=self.settings.temperature,
                            help='bath temperature in units of omega (ignored with --sweep T:...)')
        self.add_sweep_argument(parser, 'T:0:20:81')

    def perform(self, args):
        return cmd_steady(self.model_params(args), self.sweep_spec(args), args.T, args.workers,
                          omega=args.omega, header=provenance(self.name, args))
