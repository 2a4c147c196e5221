"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.
"""
# components/dynamics.py
import logging

import numpy as np

from components.command import Command, provenance
from errors import DomainError
from fock_oracle import MAX_STEP, FockConfig, evolve_lindblad_fock
from open_dynamics import FRAMES, MODES, BathParams, InitialCondition, dissipative_evolution
from results import ResultTable

logger = logging.getLogger(__name__)

COLUMNS = ('t', 'coherence', 'fidelity', 'Xa', 'Pa', 'sigma_xx', 'sigma_pp', 'sigma_xp')
VERIFY_TOL = 1e-4


def parse_init(text):
    """'x,y,z,w' -> four quadrature means."""
    parts = [part for part in text.split(',') if part.strip()]
    if len(parts) != 4:
        raise DomainError(f"--init needs four comma-separated numbers, got {text!r}")
    return tuple(float(part) for part in parts)


def sampling_from_sweep(sweep, dt):
    """Turn a t:start:stop:count sweep into (t_max, record_every, start)."""
    if sweep.name != 't':
        raise DomainError(f"dynamics sweeps t, not {sweep.name!r}")
    if sweep.start < 0 or sweep.stop <= sweep.start:
        raise DomainError(f"Time sweep needs 0 <= start < stop, got {sweep.start}:{sweep.stop}")
    spacing = (sweep.stop - sweep.start) / (sweep.count - 1)
    return sweep.stop, max(1, int(round(spacing / dt))), sweep.start


def verify_dynamics(p, bath, init, window, cutoff, dt=MAX_STEP):
    """Largest deviation of the two-mode moments from the Fock-space master equation."""
    dt = min(dt, MAX_STEP / p.omega)
    window = max(window, dt)
    record_every = max(1, int(round(0.1 / (p.omega * dt))))
    gaussian = dissipative_evolution(p, bath, init, window, dt, record_every)
    fock = evolve_lindblad_fock(p, bath, init, window, dt, FockConfig(cutoff), record_every)
    deviation = 0.0
    for state, mean, sigma in zip(gaussian.two_mode, fock.means, fock.covariances):
        deviation = max(deviation, np.max(np.abs(state.d - mean)), np.max(np.abs(state.sigma - sigma)))
    logger.info("Fock verification over t <= %g at cutoff %d: max deviation %.3e", window, cutoff, deviation)
    return float(deviation)


def cmd_dynamics(params, bath, init, t_max, dt, mode='full', record_every=None, sweep=None,
                 verify_window=None, cutoff=30, omega=1.0, header=''):
    """Mode-a coherence, fidelity and moments along one trajectory."""
    start = 0.0
    if sweep is not None:
        t_max, record_every, start = sampling_from_sweep(sweep, dt)
    traj = dissipative_evolution(params, bath, init, t_max, dt, record_every, mode)

    table = ResultTable(COLUMNS, header)
    for t, state, coh, fid in zip(traj.times, traj.states, traj.coherence, traj.fidelity):
        if t < start - 0.5 * dt:
            continue
        table.add_row(t=t / omega, coherence=coh, fidelity=fid, Xa=state.d[0], Pa=state.d[1],
                      sigma_xx=state.sigma[0, 0], sigma_pp=state.sigma[1, 1],
                      sigma_xp=state.sigma[0, 1])
    if traj.reference_kind != 'asymptotic':
        table.add_note(f"fidelity reference={traj.reference_kind}")

    if verify_window is not None:
        if mode != 'full':
            raise DomainError("--verify compares the full two-mode model; use --mode full")
        deviation = verify_dynamics(params, bath, init, min(verify_window, t_max), cutoff, dt)
        table.add_note(f"verify window={min(verify_window, t_max):g} cutoff={cutoff} "
                       f"max_deviation={deviation:.6e}")
        if deviation > VERIFY_TOL:
            logger.warning("Gaussian and Fock dynamics differ by %.3e (> %g)", deviation, VERIFY_TOL)
    return table


class DynamicsCommand(Command):
    name = 'dynamics'
    help = 'coherence and fidelity of the mode coupled to a Markovian bath'

    def setup_parser(self, parser):
        super().setup_parser(parser)
        s = self.settings
        parser.add_argument('--T', dest='T', type=float, default=s.temperature, help='bath temperature')
        parser.add_argument('--gamma', type=float, default=s.gamma, help='bath coupling rate')
        parser.add_argument('--init', type=parse_init, default=(1.0, 1.0, 1.0, 1.0),
                            help='initial quadrature means x,y,z,w')
        parser.add_argument('--interacting-init', action='store_true',
                            help='start from the displaced interacting ground state')
        parser.add_argument('--init-frame', choices=FRAMES, default='normal',
                            help='coordinates of --init: normal modes (X+,P+,X-,P-) or bare (Xa,Pa,Xb,Pb)')
        parser.add_argument('--t-max', type=float, default=60.0)
        parser.add_argument('--dt', type=float, default=s.dt)
        parser.add_argument('--record-every', type=int, default=None,
                            help='steps between samples (default: one sample per 0.1/omega)')
        parser.add_argument('--mode', choices=MODES, default='full')
        parser.add_argument('--verify', action='store_true',
                            help='compare against the Fock-space master equation')
        parser.add_argument('--verify-window', type=float, default=2.0)
        parser.add_argument('--cutoff', type=int, default=s.fock_dynamics_cutoff)
        self.add_sweep_argument(parser, 't:0:60:601')

    def perform(self, args):
        init = InitialCondition(args.init, interacting=args.interacting_init, frame=args.init_frame)
        return cmd_dynamics(
            self.model_params(args), BathParams(args.gamma, args.T), init, args.t_max, args.dt,
            mode=args.mode, record_every=args.record_every, sweep=self.sweep_spec(args),
            verify_window=args.verify_window if args.verify else None, cutoff=args.cutoff,
            omega=args.omega, header=provenance(self.name, args),
        )
