"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.
"""
# components/validate.py
import logging

from components.command import Command, provenance
from coupled_modes import (diagonalize, ground_energy, ground_state_coherence, validate_params,
                           wavefunction_norm)
from fock_oracle import FockConfig, ground_state_fock, thermal_reference_coherence_fock
from results import ResultTable
from thermal_steady import coherence_infinite_T, plateau_terms

logger = logging.getLogger(__name__)

COLUMNS = ('quantity', 'value')
FREQUENCIES = ('omega_plus', 'omega_minus', 'Lambda_plus', 'Lambda_minus', 'normal_plus',
               'normal_minus', 'theta_plus', 'theta_minus', 'zeta_plus', 'zeta_minus')


def cmd_validate(params, omega=1.0, header='', fock_cutoff=None):
    """
    Stability check followed by every intermediate quantity of the diagonalization.

    With fock_cutoff the ground-state coherence is recomputed from the
    truncated number basis and the deviation is reported.
    """
    validate_params(params)
    table = ResultTable(COLUMNS, header)
    table.add_row(quantity='status', value='ok')
    table.add_row(quantity='omega', value=params.omega * omega)
    table.add_row(quantity='lambda', value=params.lam * omega)
    table.add_row(quantity='mu', value=params.mu * omega)

    for name, value in diagonalize(params).as_dict().items():
        table.add_row(quantity=name, value=value * omega if name in FREQUENCIES else value)

    table.add_row(quantity='ground_energy', value=ground_energy(params) * omega)
    gaussian = ground_state_coherence(params)
    table.add_row(quantity='ground_coherence', value=gaussian)
    if fock_cutoff is not None:
        fock = thermal_reference_coherence_fock(ground_state_fock(params, FockConfig(fock_cutoff)))
        logger.info("Fock ground coherence at cutoff %d: %.12g (Gaussian %.12g)", fock_cutoff, fock, gaussian)
        table.add_row(quantity='fock_ground_coherence', value=fock)
        table.add_row(quantity='fock_ground_deviation', value=abs(fock - gaussian))
    table.add_row(quantity='wavefunction_norm', value=wavefunction_norm(params))
    table.add_row(quantity='coherence_infinite_T', value=coherence_infinite_T(params))

    printed = plateau_terms(params)
    for name in ('delta_plus', 'delta_minus', 'Delta1', 'Delta2', 'Delta3', 'Delta4'):
        table.add_row(quantity=f'printed_{name}', value=getattr(printed, name))
    table.add_row(quantity='printed_plateau', value=printed.value)
    return table


class ValidateCommand(Command):
    name = 'validate'
    help = 'check the stability conditions and print the normal-mode data'

    def setup_parser(self, parser):
        super().setup_parser(parser)
        parser.add_argument('--fock-check', action='store_true',
                            help='recompute the ground-state coherence in a truncated number basis')
        parser.add_argument('--cutoff', type=int, default=self.settings.fock_cutoff,
                            help='maximum occupation per mode for --fock-check')

    def perform(self, args):
        return cmd_validate(self.model_params(args), omega=args.omega,
                            header=provenance(self.name, args),
                            fock_cutoff=args.cutoff if args.fock_check else None)
