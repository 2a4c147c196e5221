"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.

Steady state of the coupled modes when each one sits in an identical
Markovian bath at temperature T: a product of thermal states of the normal
modes with frequencies Lambda+-. Temperatures are in units of omega
(k_B = hbar = 1).
"""
# thermal_steady.py
import logging
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.hermite import hermgauss

from coupled_modes import (block_covariance, diagonalize, natural_covariance,
                           natural_moments, validate_params)
from errors import DomainError
from gaussian_core import TwoModeGaussianState, coherence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EtaFactors:
    """Squared widths of the steady-state Wigner function."""
    eta1_sq: float
    eta2_sq: float
    eta3_sq: float
    eta4_sq: float


@dataclass(frozen=True)
class PlateauTerms:
    """The infinite-temperature combination exactly as printed, for comparison reports."""
    delta_plus: float
    delta_minus: float
    Delta1: float
    Delta2: float
    Delta3: float
    Delta4: float
    value: float


def validate_temperature(T):
    if not np.isfinite(T) or T < 0:
        raise DomainError(f"Temperature must be finite and >= 0, got {T}")
    return float(T)


def tanh_factor(frequency, T):
    """tanh(frequency / 2T), with the T = 0 limit taken analytically."""
    T = validate_temperature(T)
    if T == 0:
        return 1.0
    return float(np.tanh(frequency / (2.0 * T)))


def sector_tanh(p, T):
    d = diagonalize(p)
    return tanh_factor(d.Lambda_plus, T), tanh_factor(d.Lambda_minus, T)


def steady_state_covariance(p, T):
    validate_params(p)
    t_plus, t_minus = sector_tanh(p, T)
    moments = natural_moments(p, 1.0 / t_plus, 1.0 / t_minus)
    return TwoModeGaussianState(np.zeros(4), block_covariance(p.omega, *moments))


def steady_coherence(p, T):
    value = coherence(steady_state_covariance(p, T))
    logger.debug("Steady coherence %s T=%g -> %.12g", p, T, value)
    return value


def coherence_infinite_T(p):
    """
    Exact T -> infinity limit of steady_coherence, in omega = 1 units:

        C = 2 ln[D1 + D2] - (1/2) ln[D3]
        D1 = (1/16)(1/(Lambda+ k1) + 1/(Lambda- k2)),  D2 = k1/Lambda+ + k2/Lambda-,
        D3 = 1/(Lambda+ Lambda-)^2
    """
    d = diagonalize(validate_params(p).scaled())
    lp, lm, k1, k2 = d.Lambda_plus, d.Lambda_minus, d.kappa1, d.kappa2
    d1 = (1.0 / (lp * k1) + 1.0 / (lm * k2)) / 16.0
    d2 = k1 / lp + k2 / lm
    d3 = 1.0 / (lp * lm) ** 2
    value = 2.0 * np.log(d1 + d2) - 0.5 * np.log(d3)
    return max(float(value), 0.0) if value > -1e-10 else float(value)


def plateau_terms(p):
    """Evaluate the printed Delta_1..Delta_4 combination (omega = 1 units)."""
    q = validate_params(p).scaled()
    lam, mu = q.lam, q.mu
    delta_plus, delta_minus = lam + mu, lam - mu
    quartic = lam ** 4 + (mu ** 2 - 1.0) ** 2 - 2.0 * lam ** 2 * (mu ** 2 + 1.0)
    Delta1 = 1.0 / (2.0 * (1.0 + delta_plus)) + 1.0 / (2.0 * (1.0 + delta_minus))
    # sqrt(delta+ - 1)/sqrt(delta- - 1): both radicands negative, paired into one real root
    paired = np.sqrt((1.0 - delta_plus) / (1.0 - delta_minus))
    Delta2 = (paired / (4.0 * np.sqrt((lam - 1.0) ** 2 - mu ** 2))
              + 1.0 / (4.0 * abs(1.0 - delta_plus)))
    Delta3 = 4.0 * (1.0 - lam ** 2 - mu ** 2) / quartic
    Delta4 = -8.0 * lam / abs(quartic)
    radicand = Delta3 ** 2 - Delta4 ** 2
    value = float('nan')
    if radicand > 0:
        value = 2.0 * np.log(Delta1 + Delta2) - 0.5 * np.log(radicand)
    return PlateauTerms(delta_plus, delta_minus, Delta1, Delta2, Delta3, Delta4, float(value))


def eta_factors(p):
    validate_params(p)
    omega, lam, mu = p.omega, p.lam, p.mu
    return EtaFactors(
        eta1_sq=np.sqrt(omega + lam - mu) / (2.0 * omega * np.sqrt(omega + lam + mu)),
        eta2_sq=omega * np.sqrt(omega + lam + mu) / (2.0 * np.sqrt(omega + lam - mu)),
        eta3_sq=np.sqrt(omega - lam + mu) / (2.0 * omega * np.sqrt(omega - lam - mu)),
        eta4_sq=omega * np.sqrt(omega - lam - mu) / (2.0 * np.sqrt(omega - lam + mu)),
    )


def wigner_steady(p, T, point):
    """
    Steady-state Wigner function at point(s) (x_a, p_a, x_b, p_b) in natural units.

    Accepts a single 4-vector or an array of shape (..., 4).
    """
    eta = eta_factors(p)
    t_plus, t_minus = sector_tanh(p, T)
    r = np.asarray(point, dtype=float)
    x_a, p_a, x_b, p_b = r[..., 0], r[..., 1], r[..., 2], r[..., 3]
    exponent = (
        (x_a + x_b) ** 2 * t_plus / (4.0 * eta.eta1_sq)
        + (p_a + p_b) ** 2 * t_plus / (4.0 * eta.eta2_sq)
        + (x_a - x_b) ** 2 * t_minus / (4.0 * eta.eta3_sq)
        + (p_a - p_b) ** 2 * t_minus / (4.0 * eta.eta4_sq)
    )
    return t_plus * t_minus / np.pi ** 2 * np.exp(-exponent)


def _hermite_grid(p, T, nodes):
    """Gauss-Hermite nodes mapped through the Cholesky factor of the steady covariance."""
    sigma = natural_covariance(steady_state_covariance(p, T).sigma, p.omega)
    chol = np.linalg.cholesky(sigma)
    y, w = hermgauss(nodes)
    grids = np.meshgrid(y, y, y, y, indexing='ij')
    ys = np.stack([g.reshape(-1) for g in grids], axis=-1)
    weights = np.prod(np.stack(np.meshgrid(w, w, w, w, indexing='ij'), axis=-1).reshape(-1, 4), axis=1)
    points = np.sqrt(2.0) * ys @ chol.T
    jacobian = 4.0 * np.linalg.det(chol)
    factor = jacobian * weights * np.exp(np.sum(ys ** 2, axis=1))
    return points, factor


def wigner_normalization(p, T, nodes=10):
    """Integral of the steady Wigner function by 4-D Gauss-Hermite quadrature."""
    points, factor = _hermite_grid(p, T, nodes)
    return float(np.sum(factor * wigner_steady(p, T, points)))


def wigner_moments(p, T, nodes=10):
    """Second-moment matrix of the steady Wigner function in natural units."""
    points, factor = _hermite_grid(p, T, nodes)
    values = factor * wigner_steady(p, T, points)
    return np.einsum('n,ni,nj->ij', values, points, points)
