"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.

Dynamics when only mode a touches a Markovian bath. The bath is a local
quantum-optical dissipator on mode a (rate gamma, occupation n_bar(omega)),
which keeps the state Gaussian:

    d' = A d,   sigma' = A sigma + sigma A^T + D
    A = Omega H - (gamma/2) P_a,   D = gamma (2 n_bar + 1) P_a
"""
# open_dynamics.py
import logging
from dataclasses import dataclass, field, replace
from typing import List, Tuple

import numpy as np
from scipy.linalg import solve_continuous_lyapunov

from coupled_modes import (diagonalize, ground_state_covariance, hamiltonian_hessian,
                           normal_mode_transform, validate_params)
from errors import (DegenerateError, DimensionError, DomainError, IntegratorError,
                    UnphysicalStateError)
from gaussian_core import (SingleModeGaussianState, TwoModeGaussianState, coherence,
                           gaussian_fidelity, reduced_state, symplectic_form, thermal_state)

logger = logging.getLogger(__name__)

MODES = ('full', 'reduce-then-dissipate')
FRAMES = ('normal', 'bare')
SAMPLE_SPACING = 0.1
HURWITZ_TOL = 1e-12


def thermal_occupation(omega, T):
    """Bose-Einstein occupation 1/(exp(omega/T) - 1); zero at T = 0."""
    if T == 0:
        return 0.0
    return float(1.0 / np.expm1(omega / T))


@dataclass(frozen=True)
class BathParams:
    """Markovian bath attached to mode a: coupling rate gamma and temperature T (units of omega)."""
    gamma: float = 0.1
    T: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.gamma) or self.gamma < 0:
            raise DomainError(f"Bath coupling gamma must be >= 0, got {self.gamma}")
        if not np.isfinite(self.T) or self.T < 0:
            raise DomainError(f"Bath temperature must be >= 0, got {self.T}")

    def n_bar(self, omega=1.0):
        return thermal_occupation(omega, self.T)


@dataclass(frozen=True)
class InitialCondition:
    """
    Quadrature means d0 of the initial state.

    With frame='normal' d0 holds the normal-mode coordinates (X+, P+, X-, P-)
    and is mapped back to the bare quadratures; frame='bare' takes d0 as
    (X_a, P_a, X_b, P_b) directly. The covariance is the decoupled vacuum
    unless interacting is set, in which case the interacting ground state of
    the model is displaced instead.
    """
    d0: Tuple[float, float, float, float] = (1.0, 1.0, 1.0, 1.0)
    interacting: bool = False
    frame: str = 'normal'

    def __post_init__(self):
        d0 = tuple(float(v) for v in self.d0)
        if len(d0) != 4:
            raise DimensionError(f"Initial displacement needs 4 entries, got {len(d0)}")
        if not np.all(np.isfinite(d0)):
            raise DomainError(f"Initial displacement must be finite, got {d0}")
        if self.frame not in FRAMES:
            raise DomainError(f"Unknown initial frame {self.frame!r}; expected one of {FRAMES}")
        object.__setattr__(self, 'd0', d0)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled evolution of mode a with its coherence and fidelity series."""
    times: np.ndarray
    states: List[SingleModeGaussianState]
    coherence: np.ndarray
    fidelity: np.ndarray
    reference: SingleModeGaussianState
    two_mode: List[TwoModeGaussianState] = field(default_factory=list)
    mode: str = 'full'
    reference_kind: str = 'asymptotic'

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        if len(times) != len(self.states):
            raise DimensionError(f"{len(times)} times but {len(self.states)} states")
        if len(times) > 1 and np.any(np.diff(times) <= 0):
            raise DomainError("Trajectory times must be strictly increasing")
        for series in (self.coherence, self.fidelity):
            if len(series) not in (0, len(times)):
                raise DimensionError(f"Observable series of length {len(series)} for {len(times)} samples")
        object.__setattr__(self, 'times', times)


def initial_displacement(p, init):
    """Bare quadrature means (X_a, P_a, X_b, P_b) at t = 0."""
    d0 = np.array(init.d0)
    if init.frame == 'bare':
        return d0
    return np.linalg.solve(normal_mode_transform(diagonalize(p)), d0)


def initial_state(p, init):
    sigma = ground_state_covariance(p).sigma if init.interacting else np.eye(4)
    return TwoModeGaussianState(initial_displacement(p, init), sigma)


def drift_diffusion(p, bath):
    """Drift matrix A and diffusion matrix D of the moment equations."""
    projector = np.diag([1.0, 1.0, 0.0, 0.0])
    drift = symplectic_form(2) @ hamiltonian_hessian(p) - 0.5 * bath.gamma * projector
    diffusion = bath.gamma * (2.0 * bath.n_bar(p.omega) + 1.0) * projector
    return drift, diffusion


def closed_propagator(p, t):
    """Linear map M(t) on quadratures: rotation of each normal mode by its frequency."""
    d = diagonalize(p)
    s = normal_mode_transform(d)
    rotation = np.zeros((4, 4))
    for block, freq in ((0, d.normal_plus), (2, d.normal_minus)):
        c, sn = np.cos(freq * t), np.sin(freq * t)
        rotation[block:block + 2, block:block + 2] = [[c, sn], [-sn, c]]
    return np.linalg.solve(s, rotation @ s)


def closed_evolution(p, init, t):
    validate_params(p)
    if t < 0:
        raise DomainError(f"Evolution time must be >= 0, got {t}")
    start = initial_state(p, init)
    m = closed_propagator(p, t)
    return TwoModeGaussianState(m @ start.d, m @ start.sigma @ m.T)


def normal_mode_energies(p, state):
    """Mean energies of the two normal modes, Omega/4 <X^2 + P^2> in normal quadratures."""
    d = diagonalize(p)
    s = normal_mode_transform(d)
    sigma = s @ state.sigma @ s.T
    mean = s @ state.d
    second = np.diag(sigma) + mean ** 2
    return (d.normal_plus * (second[0] + second[1]) / 4.0,
            d.normal_minus * (second[2] + second[3]) / 4.0)


def _taylor_propagator(matrix, h, order=4):
    """sum_{k<=order} (h M)^k / k!, the step map of classical RK4 on x' = M x."""
    step = h * matrix
    term = np.eye(matrix.shape[0])
    total = term.copy()
    for k in range(1, order + 1):
        term = term @ step / k
        total = total + term
    return total


def _source_propagator(matrix, h):
    """h sum_{k<=3} (h M)^k / (k+1)!, the RK4 weight of a constant source term."""
    step = h * matrix
    term = np.eye(matrix.shape[0])
    total = term.copy()
    for k in range(1, 4):
        term = term @ step
        total = total + term / np.prod(np.arange(2, k + 2))
    return h * total


def _checked_state(d, sigma, t, dt):
    sigma = 0.5 * (sigma + sigma.T)
    if not (np.all(np.isfinite(d)) and np.all(np.isfinite(sigma))):
        raise IntegratorError(f"Non-finite moments at t={t:.6g}; retry with dt <= {dt / 2:.3g}")
    try:
        return TwoModeGaussianState(d, sigma)
    except UnphysicalStateError as e:
        raise IntegratorError(f"Unphysical state at t={t:.6g} ({e}); retry with dt <= {dt / 2:.3g}") from e


def _sample_grid(p, t_max, dt, record_every):
    if dt <= 0 or not np.isfinite(dt):
        raise DomainError(f"Step size must be positive, got dt={dt}")
    if t_max < dt:
        raise DomainError(f"t_max must be >= dt (t_max={t_max}, dt={dt})")
    n_steps = int(round(t_max / dt))
    if record_every is None:
        record_every = max(1, int(round(SAMPLE_SPACING / (p.omega * dt))))
    if record_every < 1:
        raise DomainError(f"record_every must be >= 1, got {record_every}")
    steps = list(range(0, n_steps + 1, record_every))
    if steps[-1] != n_steps:
        steps.append(n_steps)
    return n_steps, steps


def fidelity_reference(p, bath):
    """
    State the fidelity series is measured against, with its kind.

    The asymptotic state when the drift relaxes; otherwise (no bath, or a
    drift without a fixed point) the thermal state of the bath.
    """
    if bath.gamma > 0:
        try:
            return asymptotic_state(p, bath), 'asymptotic'
        except DegenerateError as e:
            logger.warning("No asymptotic state for %s (%s); fidelity is measured "
                           "against the thermal bath state", p, e)
    return thermal_state(bath.n_bar(p.omega)), 'thermal'


def dissipative_evolution(p, bath, init, t_max, dt, record_every=None, mode='full'):
    """
    Integrate the moment equations with fixed-step RK4 and sample mode a.

    mode='reduce-then-dissipate' switches to the comparison model in which the
    closed two-mode evolution is traced down to mode a before the bath acts.
    """
    validate_params(p)
    if mode not in MODES:
        raise DomainError(f"Unknown dynamics mode {mode!r}; expected one of {MODES}")
    if mode == 'reduce-then-dissipate':
        return reduce_then_dissipate(p, bath, init, t_max, dt, record_every)

    n_steps, steps = _sample_grid(p, t_max, dt, record_every)
    drift, diffusion = drift_diffusion(p, bath)
    generator = np.kron(drift, np.eye(4)) + np.kron(np.eye(4), drift)
    mean_step = _taylor_propagator(drift, dt)
    cov_step = _taylor_propagator(generator, dt)
    cov_source = _source_propagator(generator, dt) @ diffusion.reshape(-1)

    start = initial_state(p, init)
    d, y = start.d.copy(), start.sigma.reshape(-1).copy()
    two_mode = [start]
    wanted = iter(steps[1:])
    target = next(wanted, None)
    for step in range(1, n_steps + 1):
        d = mean_step @ d
        y = cov_step @ y + cov_source
        if step == target:
            two_mode.append(_checked_state(d, y.reshape(4, 4), step * dt, dt))
            target = next(wanted, None)
    logger.debug("Integrated %s %s for %d steps, %d samples", p, bath, n_steps, len(two_mode))

    reference, kind = fidelity_reference(p, bath)
    partial = Trajectory(
        times=np.array(steps) * dt,
        states=[reduced_state(s, 0) for s in two_mode],
        coherence=np.empty(0),
        fidelity=np.empty(0),
        reference=reference,
        two_mode=two_mode,
        mode=mode,
        reference_kind=kind,
    )
    coh, fid = trajectory_observables(partial)
    return replace(partial, coherence=coh, fidelity=fid)


def reduce_then_dissipate(p, bath, init, t_max, dt, record_every=None):
    """
    Trace the closed evolution down to mode a, then relax it in closed form:
    sigma_a(t) = e^{-gamma t} sigma_a^closed(t) + (1 - e^{-gamma t})(2 n_bar + 1) I,
    d_a(t) = e^{-gamma t/2} d_a^closed(t).
    """
    validate_params(p)
    _, steps = _sample_grid(p, t_max, dt, record_every)
    times = np.array(steps) * dt
    n_bar = bath.n_bar(p.omega)
    states = []
    for t in times:
        closed = reduced_state(closed_evolution(p, init, t), 0)
        decay = np.exp(-bath.gamma * t)
        sigma = decay * closed.sigma + (1.0 - decay) * (2.0 * n_bar + 1.0) * np.eye(2)
        states.append(SingleModeGaussianState(np.exp(-0.5 * bath.gamma * t) * closed.d, sigma))

    partial = Trajectory(times, states, np.empty(0), np.empty(0),
                         reference=thermal_state(n_bar), mode='reduce-then-dissipate',
                         reference_kind='thermal')
    coh, fid = trajectory_observables(partial)
    return replace(partial, coherence=coh, fidelity=fid)


def asymptotic_covariance(p, bath):
    """Fixed point of A sigma + sigma A^T + D = 0 (two-mode, or mode a alone when decoupled)."""
    validate_params(p)
    if bath.gamma <= 0:
        raise DomainError(f"The asymptotic state needs gamma > 0, got {bath.gamma}")
    drift, diffusion = drift_diffusion(p, bath)
    if p.lam == 0 and p.mu == 0:
        # Mode b never relaxes; only the mode-a block has a fixed point
        drift, diffusion = drift[:2, :2], diffusion[:2, :2]
    rate = np.max(np.linalg.eigvals(drift).real)
    if rate >= -HURWITZ_TOL:
        raise DegenerateError(f"Drift matrix is not stable (max real eigenvalue {rate:.3e})")
    sigma = solve_continuous_lyapunov(drift, -diffusion)
    return 0.5 * (sigma + sigma.T)


def asymptotic_state(p, bath):
    sigma = asymptotic_covariance(p, bath)
    return SingleModeGaussianState(np.zeros(2), sigma[:2, :2])


def trajectory_observables(traj):
    """Coherence and fidelity (against traj.reference) of every sampled mode-a state."""
    coh = np.array([coherence(s) for s in traj.states])
    fid = np.array([gaussian_fidelity(s, traj.reference) for s in traj.states])
    return coh, fid


def local_extrema(series, tol=1e-12):
    """Indices and kinds ('max' / 'min') of the interior turning points of a sampled series."""
    values = np.asarray(series, dtype=float)
    steps = np.diff(values)
    moving = [(i, np.sign(s)) for i, s in enumerate(steps) if abs(s) > tol]
    extrema = []
    for (_, before), (i, after) in zip(moving, moving[1:]):
        if before != after:
            extrema.append((i, 'max' if before > 0 else 'min'))
    return extrema
