"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.

Brute-force reference in a truncated number basis |n_a, n_b>, index
n_a * (cutoff + 1) + n_b. Quadratic operators are assembled in normal order
so every matrix element inside the truncated space is exact.
"""
# fock_oracle.py
import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy import sparse
from scipy.linalg import eigh, expm
from scipy.sparse.linalg import expm_multiply
from scipy.special import gammaln, xlogy

from coupled_modes import diagonalize, normal_mode_amplitudes, validate_params
from errors import DomainError, IntegratorError, TruncationError, UnphysicalStateError
from gaussian_core import reference_entropy
from open_dynamics import initial_displacement, thermal_occupation

logger = logging.getLogger(__name__)

LEAKAGE_TOL = 1e-6
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-8
MAX_STEP = 1e-3
SINGLE_MODE_MARGIN = 40


@dataclass(frozen=True)
class FockConfig:
    """Maximum occupation per mode; the two-mode space has (cutoff + 1)^2 states."""
    cutoff: int = 40

    def __post_init__(self):
        if int(self.cutoff) != self.cutoff or self.cutoff < 2:
            raise DomainError(f"Fock cutoff must be an integer >= 2, got {self.cutoff}")

    @property
    def levels(self):
        return self.cutoff + 1

    @property
    def dim(self):
        return self.levels ** 2


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Unit-trace Hermitian matrix in the product number basis."""
    matrix: np.ndarray
    cfg: FockConfig

    def __post_init__(self):
        rho = np.asarray(self.matrix)
        if rho.shape != (self.cfg.dim, self.cfg.dim):
            raise UnphysicalStateError(f"Density matrix shape {rho.shape} does not match cutoff {self.cfg.cutoff}")
        if abs(np.trace(rho) - 1.0) > TRACE_TOL:
            raise UnphysicalStateError(f"Density matrix trace {np.trace(rho).real:.12g} != 1")
        if np.max(np.abs(rho - rho.conj().T)) > TRACE_TOL:
            raise UnphysicalStateError("Density matrix is not Hermitian")
        rho = 0.5 * (rho + rho.conj().T)
        rho.setflags(write=False)
        object.__setattr__(self, 'matrix', rho)

    def eigenvalues(self):
        values = eigh(self.matrix, eigvals_only=True)
        if values.min() < -1e-10:
            raise UnphysicalStateError(f"Density matrix has eigenvalue {values.min():.3e} < 0")
        return np.clip(values, 0.0, None)


@dataclass(frozen=True, eq=False)
class FockTrajectory:
    """Sampled quadrature moments of a Fock-space evolution."""
    times: np.ndarray
    means: List[np.ndarray]
    covariances: List[np.ndarray]
    leakage: List[float] = field(default_factory=list)


def _single_mode_lowering(levels):
    return sparse.diags(np.sqrt(np.arange(1, levels)), 1, format='csr')


def ladder_operators(cfg):
    """Annihilation operators a and b on the two-mode truncated space."""
    lower = _single_mode_lowering(cfg.levels)
    eye = sparse.identity(cfg.levels, format='csr')
    return sparse.kron(lower, eye, format='csr'), sparse.kron(eye, lower, format='csr')


def build_hamiltonian(p, cfg):
    """H = w(a^dag a + b^dag b) + lam(a^dag b + b^dag a) + mu(a^dag b^dag + a b), sparse and real."""
    validate_params(p)
    a, b = ladder_operators(cfg)
    ad, bd = a.T.tocsr(), b.T.tocsr()
    h = (p.omega * (ad @ a + bd @ b)
         + p.lam * (ad @ b + bd @ a)
         + p.mu * (ad @ bd + a @ b))
    return h.tocsr()


def leakage(rho, cfg):
    """Population on the top two levels of either mode."""
    matrix = rho.matrix if isinstance(rho, DensityOperator) else np.asarray(rho)
    populations = np.real(np.diag(matrix)).reshape(cfg.levels, cfg.levels)
    edge = populations.copy()
    edge[:-2, :-2] = 0.0
    return float(edge.sum())


def check_leakage(rho, cfg):
    value = leakage(rho, cfg)
    logger.debug("Fock leakage at cutoff %d: %.3e", cfg.cutoff, value)
    if value >= LEAKAGE_TOL:
        raise TruncationError(f"Population {value:.3e} in the top two levels at cutoff {cfg.cutoff}")
    return value


def pure_density(psi, cfg):
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return DensityOperator(np.outer(psi, psi.conj()), cfg)


def _lowest_eigenpair(p, cfg):
    """Lowest eigenvalue and eigenvector of the truncated Hamiltonian, by dense diagonalization."""
    values, vectors = eigh(build_hamiltonian(p, cfg).toarray(), subset_by_index=[0, 0])
    return float(values[0]), vectors[:, 0]


def ground_state_fock(p, cfg):
    energy, vector = _lowest_eigenpair(p, cfg)
    logger.debug("Fock ground energy %.12g for %s", energy, p)
    rho = pure_density(vector, cfg)
    check_leakage(rho, cfg)
    return rho


def ground_energy_fock(p, cfg):
    return _lowest_eigenpair(p, cfg)[0]


def _normal_mode_number(u, p_coef, q_coef):
    """
    gamma^dag gamma for gamma = p u + q u^dag with [u, u^dag] = 2, in normal order:
    p^2 u^dag u + p q (u^dag^2 + u^2) + q^2 (u^dag u + 2).
    """
    ud = u.T.tocsr()
    number = ud @ u
    identity = sparse.identity(u.shape[0], format='csr')
    return (p_coef ** 2 * number + p_coef * q_coef * (ud @ ud + u @ u)
            + q_coef ** 2 * (number + 2.0 * identity))


def normal_mode_numbers(p, cfg):
    """alpha^dag alpha and beta^dag beta built from the bare ladder operators."""
    d = diagonalize(p)
    (pa, qa), (pb, qb) = normal_mode_amplitudes(d)
    a, b = ladder_operators(cfg)
    return _normal_mode_number(a + b, pa, qa), _normal_mode_number(a - b, pb, qb)


def steady_state_fock(p, T, cfg):
    """Product of normal-mode Gibbs states weighted by Lambda+-/T, exponentiated exactly."""
    validate_params(p)
    if not np.isfinite(T) or T <= 0:
        raise DomainError(f"Fock steady state needs T > 0, got {T}")
    d = diagonalize(p)
    occupation = thermal_occupation(d.Lambda_minus, T)
    if occupation > cfg.cutoff / 10.0:
        raise TruncationError(
            f"Occupation {occupation:.3g} of the slow normal mode too large for cutoff {cfg.cutoff}"
        )
    n_plus, n_minus = normal_mode_numbers(p, cfg)
    exponent = (d.Lambda_plus / T * n_plus + d.Lambda_minus / T * n_minus).toarray()
    values, vectors = eigh(exponent)
    weights = np.exp(-(values - values.min()))
    rho = (vectors * weights) @ vectors.T
    rho = DensityOperator(rho / np.trace(rho), cfg)
    check_leakage(rho, cfg)
    return rho


def _entropy(values):
    return float(-np.sum(xlogy(values, values)))


def coherence_fock(rho):
    """S(diag rho) - S(rho) in the product number basis."""
    populations = np.clip(np.real(np.diag(rho.matrix)), 0.0, None)
    value = _entropy(populations) - _entropy(rho.eigenvalues())
    return max(value, 0.0)


def mode_occupations(rho):
    a, b = ladder_operators(rho.cfg)
    populations = np.real(np.diag(rho.matrix))
    return (float(populations @ (a.T @ a).diagonal()),
            float(populations @ (b.T @ b).diagonal()))


def thermal_reference_coherence_fock(rho):
    """Relative entropy of rho to the product thermal state with the same mode occupations."""
    n_a, n_b = mode_occupations(rho)
    value = reference_entropy(n_a) + reference_entropy(n_b) - _entropy(rho.eigenvalues())
    return max(value, 0.0)


def reduced_density(rho, mode=0):
    """Single-mode density matrix of mode a (0) or b (1)."""
    levels = rho.cfg.levels
    tensor = np.asarray(rho.matrix).reshape(levels, levels, levels, levels)
    if mode == 0:
        return np.einsum('ikjk->ij', tensor)
    return np.einsum('kikj->ij', tensor)


def _quadratures(cfg):
    a, b = ladder_operators(cfg)
    ops = []
    for lower in (a, b):
        raise_ = lower.T.tocsr()
        ops.append((lower + raise_).astype(complex))
        ops.append(-1j * (lower - raise_))
    return ops


def _moments(matrix, quadratures):
    # Tr(rho R_i) and Re Tr(rho R_i R_j) via dense-sparse products
    rho_r = [np.asarray((r.T @ matrix.T).T) for r in quadratures]
    mean = np.array([np.real(np.trace(m)) for m in rho_r])
    second = np.empty((4, 4))
    for i, m in enumerate(rho_r):
        for j, r in enumerate(quadratures):
            second[i, j] = np.real(r.T.multiply(m).sum())
    sigma = 0.5 * (second + second.T) - np.outer(mean, mean)
    return mean, sigma


def quadrature_moments(rho):
    """Means and dimensionless covariance matrix of (X_a, P_a, X_b, P_b)."""
    return _moments(np.asarray(rho.matrix), _quadratures(rho.cfg))


def coherent_amplitude(x, p):
    return complex(x, p) / 2.0


def _coherent_vector(alpha, levels):
    n = np.arange(levels)
    with np.errstate(divide='ignore'):
        log_mag = n * np.log(abs(alpha)) if alpha != 0 else np.where(n == 0, 0.0, -np.inf)
    amplitudes = np.exp(-abs(alpha) ** 2 / 2.0 + log_mag - 0.5 * gammaln(n + 1))
    return amplitudes * np.exp(1j * n * np.angle(alpha))


def coherent_product_state(d0, cfg):
    """Vacuum of both modes displaced to quadrature means d0 = (X_a, P_a, X_b, P_b)."""
    psi = np.kron(_coherent_vector(coherent_amplitude(d0[0], d0[1]), cfg.levels),
                  _coherent_vector(coherent_amplitude(d0[2], d0[3]), cfg.levels))
    return psi / np.linalg.norm(psi)


def displace_fock(psi, d0, cfg):
    """Apply D_a(alpha) D_b(beta) to a state vector."""
    a, b = ladder_operators(cfg)
    alpha, beta = coherent_amplitude(d0[0], d0[1]), coherent_amplitude(d0[2], d0[3])
    generator = (alpha * a.T - np.conj(alpha) * a + beta * b.T - np.conj(beta) * b).tocsr()
    return expm_multiply(generator, np.asarray(psi, dtype=complex))


def initial_state_fock(p, init, cfg):
    """State vector matching open_dynamics.initial_state."""
    d0 = initial_displacement(p, init)
    if init.interacting:
        return displace_fock(_lowest_eigenpair(p, cfg)[1], d0, cfg)
    return coherent_product_state(d0, cfg)


def unitary_evolve_fock(p, cfg, psi0, times):
    """State vectors exp(-iHt) psi0 for each t."""
    h = build_hamiltonian(p, cfg).astype(complex)
    psi0 = np.asarray(psi0, dtype=complex)
    return [expm_multiply(-1j * t * h, psi0) for t in times]


class LindbladGenerator:
    """
    rho' = -i[H, rho] + gamma (n+1) D[a] rho + gamma n D[a^dag] rho, written as
    -i(H_eff rho - rho H_eff^dag) + jump terms with
    H_eff = H - (i/2) gamma [(n+1) a^dag a + n a a^dag], with a a^dag taken from the
    truncated matrices so the generator is traceless inside the cut space.
    """

    def __init__(self, p, bath, cfg):
        validate_params(p)
        self.cfg = cfg
        a, _ = ladder_operators(cfg)
        self.a = a.astype(complex)
        self.ad = self.a.T.tocsr()
        n_bar = bath.n_bar(p.omega)
        self.down = bath.gamma * (n_bar + 1.0)
        self.up = bath.gamma * n_bar
        damping = 0.5 * (self.down * (self.ad @ self.a) + self.up * (self.a @ self.ad))
        self.h_eff = (build_hamiltonian(p, cfg).astype(complex) - 1j * damping).tocsr()

    def __call__(self, rho):
        left = self.h_eff @ rho
        out = -1j * (left - left.conj().T)
        if self.down:
            out += self.down * (self.a @ (self.a @ rho).conj().T)
        if self.up:
            out += self.up * (self.ad @ (self.ad @ rho).conj().T)
        return out

    def step(self, rho, dt):
        k1 = self(rho)
        k2 = self(rho + 0.5 * dt * k1)
        k3 = self(rho + 0.5 * dt * k2)
        k4 = self(rho + dt * k3)
        return rho + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _check_step_size(p, dt):
    if dt <= 0 or dt > MAX_STEP / p.omega * (1.0 + 1e-12):
        raise DomainError(f"Fock Lindblad step must satisfy 0 < dt <= {MAX_STEP / p.omega:g}, got {dt}")


def _check_positivity(rho, t, dt):
    smallest = eigh(rho, eigvals_only=True, subset_by_index=[0, 0])[0]
    if smallest < -POSITIVITY_TOL:
        raise IntegratorError(f"Density matrix eigenvalue {smallest:.3e} at t={t:.6g}; retry with dt <= {dt / 2:.3g}")


def _check_trace(rho, expected, t, dt):
    drift = np.trace(rho).real - expected
    if abs(drift) > TRACE_TOL:
        raise IntegratorError(f"Trace changed by {drift:.3e} at t={t:.6g}; retry with dt <= {dt / 2:.3g}")


def lindblad_step_fock(p, bath, rho, dt):
    """One RK4 step of the local-bath master equation."""
    _check_step_size(p, dt)
    generator = LindbladGenerator(p, bath, rho.cfg)
    matrix = generator.step(np.asarray(rho.matrix, dtype=complex), dt)
    _check_positivity(matrix, t=dt, dt=dt)
    _check_trace(matrix, np.trace(rho.matrix).real, t=dt, dt=dt)
    return DensityOperator(matrix / np.trace(matrix).real, rho.cfg)


def evolve_lindblad_fock(p, bath, init, t_max, dt, cfg, record_every=None):
    """Evolve the initial state of open_dynamics and sample its quadrature moments."""
    _check_step_size(p, dt)
    if t_max < dt:
        raise DomainError(f"t_max must be >= dt (t_max={t_max}, dt={dt})")
    n_steps = int(round(t_max / dt))
    if record_every is None:
        record_every = max(1, int(round(0.1 / (p.omega * dt))))
    generator = LindbladGenerator(p, bath, cfg)
    quadratures = _quadratures(cfg)
    psi = initial_state_fock(p, init, cfg)
    rho = np.outer(psi, psi.conj())

    times, means, covariances, leaks = [], [], [], []

    def record(step):
        mean, sigma = _moments(rho, quadratures)
        times.append(step * dt)
        means.append(mean)
        covariances.append(sigma)
        leaks.append(leakage(rho, cfg))

    record(0)
    for step in range(1, n_steps + 1):
        rho = generator.step(rho, dt)
        if step % record_every == 0 or step == n_steps:
            _check_positivity(rho, step * dt, dt)
            _check_trace(rho, 1.0, step * dt, dt)
            record(step)
    logger.debug("Fock Lindblad run: %d steps, max leakage %.3e", n_steps, max(leaks))
    if max(leaks) >= LEAKAGE_TOL:
        raise TruncationError(f"Population {max(leaks):.3e} in the top two levels at cutoff {cfg.cutoff}")
    return FockTrajectory(np.array(times), means, covariances, leaks)


def _psd_sqrt(matrix):
    values, vectors = eigh(matrix)
    return (vectors * np.sqrt(np.clip(values, 0.0, None))) @ vectors.conj().T


def fidelity_fock(rho1, rho2):
    """Uhlmann fidelity (Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2 of two density matrices."""
    root = _psd_sqrt(np.asarray(rho1, dtype=complex))
    inner = root @ np.asarray(rho2, dtype=complex) @ root
    values = eigh(0.5 * (inner + inner.conj().T), eigvals_only=True)
    value = np.sum(np.sqrt(np.clip(values, 0.0, None))) ** 2
    return float(min(max(value, 0.0), 1.0))


def single_mode_gaussian_fock(state, cutoff):
    """
    Density matrix of a single-mode Gaussian state on levels 0..cutoff.

    sigma = nu S S^T with S symmetric symplectic; the state is
    D(alpha) U_S rho_thermal(nu) U_S^dag D(alpha)^dag, built on a larger space and cut.
    """
    levels = cutoff + 1 + SINGLE_MODE_MARGIN
    lower = _single_mode_lowering(levels).toarray().astype(complex)
    raise_ = lower.conj().T
    x, p = lower + raise_, -1j * (lower - raise_)

    sigma = np.asarray(state.sigma)
    nu = np.sqrt(np.linalg.det(sigma))
    values, vectors = np.linalg.eigh(sigma / nu)
    log_root = vectors @ np.diag(0.5 * np.log(values)) @ vectors.T
    # U^dag R U = S R for U = exp(-i R^T K R / 4), S = exp(Omega K)
    omega = np.array([[0.0, 1.0], [-1.0, 0.0]])
    k = -omega @ log_root
    generator = 0.25 * (k[0, 0] * x @ x + k[0, 1] * (x @ p + p @ x) + k[1, 1] * p @ p)
    squeeze = expm(-1j * generator)

    n_bar = (nu - 1.0) / 2.0
    n = np.arange(levels)
    if n_bar <= 0:
        populations = np.where(n == 0, 1.0, 0.0)
    else:
        populations = (n_bar / (n_bar + 1.0)) ** n / (n_bar + 1.0)
    alpha = coherent_amplitude(state.d[0], state.d[1])
    displacement = expm(alpha * raise_ - np.conj(alpha) * lower)
    unitary = displacement @ squeeze
    rho = unitary @ np.diag(populations) @ unitary.conj().T
    rho = rho[:cutoff + 1, :cutoff + 1]
    return rho / np.trace(rho).real
