"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.
"""
# components/ground.py
import logging

from components.command import Command, evaluate_points, provenance, with_value
from coupled_modes import ground_state_coherence
from errors import DomainError
from results import ResultTable

logger = logging.getLogger(__name__)

COLUMNS = ('param', 'coherence')


def cmd_ground(params, sweep=None, workers=1, omega=1.0, header=''):
    """
    Ground-state coherence over a grid of mu or lambda, the other coupling fixed.

    Without a sweep a single row is produced for the given mu.
    """
    if sweep is None:
        name, values = 'mu', [params.mu]
    elif sweep.name in ('mu', 'lambda'):
        name, values = sweep.name, sweep.values()
    else:
        raise DomainError(f"ground sweeps mu or lambda, not {sweep.name!r}")

    table = ResultTable(COLUMNS, header)
    points = evaluate_points(lambda v: ground_state_coherence(with_value(params, name, v)), values, workers)
    for value, result, error in points:
        if error is None:
            table.add_row(param=value * omega, coherence=result)
        else:
            table.add_error(error, param=value * omega)
    return table


class GroundCommand(Command):
    name = 'ground'
    help = 'ground-state coherence as a function of the couplings'

    def setup_parser(self, parser):
        super().setup_parser(parser)
        self.add_sweep_argument(parser, 'mu:0:0.45:46')

    def perform(self, args):
        return cmd_ground(self.model_params(args), self.sweep_spec(args), args.workers,
                          omega=args.omega, header=provenance(self.name, args))
