"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.

Covariance-matrix algebra for one- and two-mode Gaussian states.

Convention: dimensionless quadratures X = a + a^dagger, P = -i(a - a^dagger),
sigma_ij = <{dR_i, dR_j}>/2 and d = <R>, so the vacuum has sigma = identity,
a thermal state has sigma = (2 nbar + 1) identity and entropies are in nats.
"""
# gaussian_core.py
import logging
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from scipy.special import xlogy

from errors import DegenerateError, DimensionError, UnphysicalStateError

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-12
PURITY_TOL = 1e-9
PHYSICAL_TOL = 1e-6
COHERENCE_CLAMP = 1e-10


def symplectic_form(n_modes):
    """Block-diagonal symplectic form for n modes."""
    return np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _as_covariance(sigma, n_modes=None):
    """Validate shape and symmetry of a covariance matrix and return it as float array."""
    sigma = np.asarray(sigma, dtype=float)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or sigma.shape[0] not in (2, 4):
        raise DimensionError(f"Covariance matrix must be 2x2 or 4x4, got shape {sigma.shape}")
    if n_modes is not None and sigma.shape[0] != 2 * n_modes:
        raise DimensionError(
            f"Expected a {2 * n_modes}x{2 * n_modes} covariance matrix, got {sigma.shape}"
        )
    asym = np.max(np.abs(sigma - sigma.T))
    if asym > SYMMETRY_TOL * max(1.0, np.max(np.abs(sigma))):
        raise DimensionError(f"Covariance matrix is not symmetric (max asymmetry {asym:.3e})")
    return 0.5 * (sigma + sigma.T)


def _frozen(array):
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Symplectic eigenvalues, one per mode, in descending order."""
    nu: Tuple[float, ...]

    def __post_init__(self):
        if min(self.nu) < 1.0 - PHYSICAL_TOL:
            raise UnphysicalStateError(f"Symplectic eigenvalue below 1: {min(self.nu):.12g}")

    @property
    def is_pure(self):
        return all(abs(v - 1.0) <= PURITY_TOL for v in self.nu)


@dataclass(frozen=True, eq=False)
class SingleModeGaussianState:
    d: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        sigma = _as_covariance(self.sigma, n_modes=1)
        d = np.asarray(self.d, dtype=float).reshape(-1)
        if d.shape != (2,):
            raise DimensionError(f"Single-mode displacement must have 2 entries, got {d.shape}")
        if np.trace(sigma) <= 0 or np.linalg.det(sigma) < 1.0 - PHYSICAL_TOL:
            raise UnphysicalStateError(
                f"Single-mode covariance violates det(sigma) >= 1 (det = {np.linalg.det(sigma):.12g})"
            )
        object.__setattr__(self, 'sigma', _frozen(sigma))
        object.__setattr__(self, 'd', _frozen(d))


@dataclass(frozen=True, eq=False)
class TwoModeGaussianState:
    d: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        sigma = _as_covariance(self.sigma, n_modes=2)
        d = np.asarray(self.d, dtype=float).reshape(-1)
        if d.shape != (4,):
            raise DimensionError(f"Two-mode displacement must have 4 entries, got {d.shape}")
        object.__setattr__(self, 'sigma', _frozen(sigma))
        object.__setattr__(self, 'd', _frozen(d))
        # Raises for unphysical input
        symplectic_eigenvalues(sigma)


GaussianState = Union[SingleModeGaussianState, TwoModeGaussianState]


def vacuum(n_modes=2):
    """Vacuum state of one or two modes."""
    if n_modes == 1:
        return SingleModeGaussianState(np.zeros(2), np.eye(2))
    return TwoModeGaussianState(np.zeros(4), np.eye(4))


def thermal_state(n_bar, d=(0.0, 0.0)):
    """Single-mode (displaced) thermal state with mean occupation n_bar."""
    return SingleModeGaussianState(np.asarray(d, dtype=float), (2.0 * n_bar + 1.0) * np.eye(2))


def _check_positive(sigma):
    smallest = np.linalg.eigvalsh(sigma)[0]
    if smallest <= 0:
        raise UnphysicalStateError(f"Covariance matrix is not positive definite (eigenvalue {smallest:.6g})")


def symplectic_eigenvalues(sigma):
    """
    Symplectic spectrum of a one- or two-mode covariance matrix.

    The moduli of the eigenvalues of i*Omega*sigma come in equal pairs; one
    value per pair is kept. Values in [1 - 1e-6, 1) are rounded up to 1.
    """
    sigma = _as_covariance(sigma)
    _check_positive(sigma)
    n_modes = sigma.shape[0] // 2
    moduli = np.sort(np.abs(np.linalg.eigvals(1j * symplectic_form(n_modes) @ sigma)))[::-1]
    nu = moduli[::2]
    if nu.min() < 1.0 - PHYSICAL_TOL:
        raise UnphysicalStateError(f"Unphysical covariance matrix: symplectic eigenvalue {nu.min():.12g} < 1")
    return SymplecticSpectrum(tuple(float(max(v, 1.0)) for v in nu))


def _is_identical_block_pattern(a_block, b_block, c_block):
    off_diagonal = (a_block[0, 1], b_block[0, 1], c_block[0, 1], c_block[1, 0])
    return np.array_equal(a_block, b_block) and not any(off_diagonal)


def block_symplectic_eigenvalues(sigma):
    """
    Closed form for two-mode matrices with no X-P correlations.

    For identical modes with diagonal blocks the sum and difference
    quadratures decouple: nu^2 = (<Xa^2> +- <XaXb>)(<Pa^2> +- <PaPb>).
    Otherwise nu_+^2 = (Delta + sqrt(Delta^2 - 4 det sigma)) / 2 with
    Delta = det A + det B + 2 det C, and nu_- = sqrt(det sigma) / nu_+.
    """
    sigma = _as_covariance(sigma, n_modes=2)
    _check_positive(sigma)
    a_block, b_block, c_block = sigma[:2, :2], sigma[2:, 2:], sigma[:2, 2:]
    if _is_identical_block_pattern(a_block, b_block, c_block):
        xx, pp, xaxb, papb = a_block[0, 0], a_block[1, 1], c_block[0, 0], c_block[1, 1]
        products = sorted(((xx + xaxb) * (pp + papb), (xx - xaxb) * (pp - papb)), reverse=True)
        if products[1] < 0:
            raise UnphysicalStateError(f"Negative symplectic eigenvalue squared {products[1]:.12g}")
        nu_plus, nu_minus = np.sqrt(products[0]), np.sqrt(products[1])
    else:
        delta = np.linalg.det(a_block) + np.linalg.det(b_block) + 2.0 * np.linalg.det(c_block)
        det_sigma = max(np.linalg.det(sigma), 0.0)
        disc = np.sqrt(max(delta * delta - 4.0 * det_sigma, 0.0))
        nu_plus = np.sqrt(max((delta + disc) / 2.0, 0.0))
        nu_minus = np.sqrt(det_sigma) / nu_plus if nu_plus > 0 else 0.0
    if nu_minus < 1.0 - PHYSICAL_TOL:
        raise UnphysicalStateError(f"Unphysical covariance matrix: symplectic eigenvalue {nu_minus:.12g} < 1")
    return SymplecticSpectrum((float(max(nu_plus, 1.0)), float(max(nu_minus, 1.0))))


def _mode_entropy(nu):
    upper = (nu + 1.0) / 2.0
    lower = max((nu - 1.0) / 2.0, 0.0)
    return xlogy(upper, upper) - xlogy(lower, lower)


def von_neumann_entropy(spectrum):
    """Entropy in nats of a Gaussian state with the given symplectic spectrum."""
    nu = spectrum.nu if isinstance(spectrum, SymplecticSpectrum) else tuple(np.atleast_1d(spectrum))
    if min(nu) < 1.0 - PURITY_TOL:
        raise UnphysicalStateError(f"Symplectic eigenvalue below 1: {min(nu):.12g}")
    return float(sum(_mode_entropy(v) for v in nu))


def mean_excitation(state):
    """Mean occupation of the thermal reference state of a single mode."""
    sigma, d = state.sigma, state.d
    value = (sigma[0, 0] + sigma[1, 1] + d[0] ** 2 + d[1] ** 2 - 2.0) / 4.0
    if value < -PURITY_TOL:
        raise UnphysicalStateError(f"Negative mean excitation {value:.12g}")
    return max(float(value), 0.0)


def reference_entropy(eps_bar):
    """Entropy of a thermal state with mean occupation eps_bar."""
    return float(xlogy(eps_bar + 1.0, eps_bar + 1.0) - xlogy(eps_bar, eps_bar))


def reduced_state(state, mode):
    """Single-mode marginal of a two-mode state; mode is 0 (a) or 1 (b)."""
    block = slice(2 * mode, 2 * mode + 2)
    return SingleModeGaussianState(state.d[block], state.sigma[block, block])


def partial_trace_mode_a(state):
    """Trace out mode b."""
    return reduced_state(state, 0)


def _clamp_coherence(value):
    if value < -COHERENCE_CLAMP:
        raise UnphysicalStateError(f"Negative coherence {value:.3e}")
    return max(value, 0.0)


def coherence(state):
    """Relative entropy of coherence of a one- or two-mode Gaussian state."""
    if isinstance(state, TwoModeGaussianState):
        modes = [reduced_state(state, 0), reduced_state(state, 1)]
    else:
        modes = [state]
    entropy = von_neumann_entropy(symplectic_eigenvalues(state.sigma))
    reference = sum(reference_entropy(mean_excitation(m)) for m in modes)
    return _clamp_coherence(reference - entropy)


def explicit_two_mode_coherence(sigma):
    """Two-mode coherence of a centred block-patterned state written out term by term."""
    spectrum = block_symplectic_eigenvalues(sigma)
    sigma = np.asarray(sigma, dtype=float)
    total = 0.0
    for nu in spectrum.nu:
        lower, upper = max((nu - 1.0) / 2.0, 0.0), (nu + 1.0) / 2.0
        total += xlogy(lower, lower) - xlogy(upper, upper)
    for idx in (0, 2):
        eps = max((sigma[idx, idx] + sigma[idx + 1, idx + 1] - 2.0) / 4.0, 0.0)
        total += xlogy(eps + 1.0, eps + 1.0) - xlogy(eps, eps)
    return _clamp_coherence(float(total))


def gaussian_fidelity(s1, s2):
    """Uhlmann fidelity between two single-mode Gaussian states."""
    sigma_sum = s1.sigma + s2.sigma
    delta_det = np.linalg.det(sigma_sum)
    if delta_det <= 1e-14:
        raise DegenerateError(f"Singular covariance sum in fidelity (det = {delta_det:.3e})")
    lam = max((np.linalg.det(s1.sigma) - 1.0) * (np.linalg.det(s2.sigma) - 1.0), 0.0)
    delta = s1.d - s2.d
    exponent = -0.5 * delta @ np.linalg.solve(sigma_sum, delta)
    value = 2.0 * np.exp(exponent) / (np.sqrt(delta_det + lam) - np.sqrt(lam))
    return float(min(max(value, 0.0), 1.0))


def gaussian_density(sigma, mean, point):
    """Density of a normal distribution with covariance sigma, evaluated at point(s)."""
    sigma = np.asarray(sigma, dtype=float)
    diff = np.asarray(point, dtype=float) - np.asarray(mean, dtype=float)
    dim = sigma.shape[0]
    quad = np.einsum('...i,ij,...j->...', diff, np.linalg.inv(sigma), diff)
    norm = (2.0 * np.pi) ** (dim / 2.0) * np.sqrt(np.linalg.det(sigma))
    return np.exp(-0.5 * quad) / norm
