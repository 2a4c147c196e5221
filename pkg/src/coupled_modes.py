"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)

This code is part of the Coupled Mode Coherence Simulator, a project that
computes the coherence of Gaussian states of two bilinearly coupled bosonic
modes, closed or in contact with Markovian thermal baths.

Model parameters, exact diagonalization of

    H = w a^dag a + w b^dag b + lam (a^dag b + a b^dag) + mu (a^dag b^dag + a b)

through centre-of-mass / relative coordinates followed by a Bogoliubov
rotation in each sector, and the closed-system ground state.
"""
# coupled_modes.py
import logging
from dataclasses import dataclass

import numpy as np
from scipy.integrate import dblquad

from errors import DegenerateError, InstabilityError
from gaussian_core import TwoModeGaussianState, coherence

logger = logging.getLogger(__name__)

BOUNDARY_TOL = 1e-9
REBUILD_TOL = 1e-10


@dataclass(frozen=True)
class ModelParams:
    """Mode frequency omega, exchange coupling lam and two-mode squeezing coupling mu."""
    omega: float = 1.0
    lam: float = 0.0
    mu: float = 0.0

    def scaled(self):
        """Same model in units of omega."""
        return ModelParams(1.0, self.lam / self.omega, self.mu / self.omega)

    def as_dict(self):
        return {'omega': self.omega, 'lambda': self.lam, 'mu': self.mu}


@dataclass(frozen=True)
class DiagonalizationResult:
    omega_plus: float
    omega_minus: float
    Lambda_plus: float
    Lambda_minus: float
    normal_plus: float
    normal_minus: float
    kappa1: float
    kappa2: float
    r_a: float
    r_b: float
    c1: float
    c2: float
    c3: float
    c4: float
    theta_plus: float
    theta_minus: float
    zeta_plus: float
    zeta_minus: float

    def as_dict(self):
        return dict(self.__dict__)


def validate_params(p):
    """Return p unchanged when it lies strictly inside the stable region."""
    omega, lam, mu = p.omega, p.lam, p.mu
    if not np.all(np.isfinite([omega, lam, mu])):
        raise InstabilityError(f"Non-finite parameters: omega={omega}, lambda={lam}, mu={mu}")
    if omega <= 0:
        raise InstabilityError(f"omega must be positive, got {omega}")
    if lam < 0 or mu < 0:
        raise InstabilityError(f"Negative coupling: lambda={lam}, mu={mu} (both must be >= 0)")
    margin = BOUNDARY_TOL * omega
    if omega <= lam + mu + margin:
        raise InstabilityError(f"Unstable: omega <= lambda + mu ({omega} <= {lam} + {mu})")
    if 2.0 * lam >= omega - margin:
        raise InstabilityError(f"Unstable: 2*lambda >= omega (2*{lam} >= {omega})")
    for sign in (1.0, -1.0):
        if omega ** 2 + lam ** 2 - mu ** 2 + sign * 2.0 * lam * mu <= 0:
            raise InstabilityError(f"Non-positive normal-mode frequency squared for {p}")
    return p


def hamiltonian_hessian(p):
    """Hessian of H in the quadratures (X_a, P_a, X_b, P_b) with a = (X + iP)/sqrt(2)."""
    omega, lam, mu = p.omega, p.lam, p.mu
    return np.array([
        [omega, 0.0, lam + mu, 0.0],
        [0.0, omega, 0.0, lam - mu],
        [lam + mu, 0.0, omega, 0.0],
        [0.0, lam - mu, 0.0, omega],
    ])


def diagonalize(p):
    """All intermediate quantities of the two-step diagonalization."""
    validate_params(p)
    omega, lam, mu = p.omega, p.lam, p.mu

    omega_plus = np.sqrt(omega ** 2 + 2.0 * lam * omega)
    omega_minus = np.sqrt(omega ** 2 - 2.0 * lam * omega)

    c1 = np.sqrt(omega_plus / omega) + np.sqrt(omega / omega_plus)
    c2 = np.sqrt(omega_plus / omega) - np.sqrt(omega / omega_plus)
    c3 = np.sqrt(omega_minus / omega) + np.sqrt(omega / omega_minus)
    c4 = np.sqrt(omega_minus / omega) - np.sqrt(omega / omega_minus)

    theta = {}
    zeta = {}
    r = {}
    for name, sign in (('plus', 1.0), ('minus', -1.0)):
        root = np.sqrt(omega * (omega + sign * 2.0 * lam))
        theta[name] = (lam ** 2 + omega ** 2 - lam * mu + sign * 2.0 * lam * omega) / root
        zeta[name] = (mu - lam) * (lam + sign * omega) / (2.0 * root)
        arg = (lam - mu) * (lam + sign * omega) / (lam ** 2 - lam * mu + sign * 2.0 * lam * omega + omega ** 2)
        if not -1.0 < arg < 1.0:
            raise InstabilityError(f"Squeezing angle undefined: arctanh argument {arg} outside (-1, 1)")
        r[name] = -0.5 * np.arctanh(arg)

    result = DiagonalizationResult(
        omega_plus=float(omega_plus),
        omega_minus=float(omega_minus),
        Lambda_plus=float(np.sqrt(omega ** 2 + lam ** 2 - mu ** 2 + 2.0 * lam * mu)),
        Lambda_minus=float(np.sqrt(omega ** 2 + lam ** 2 - mu ** 2 - 2.0 * lam * mu)),
        normal_plus=float(np.sqrt((omega + lam) ** 2 - mu ** 2)),
        normal_minus=float(np.sqrt((omega - lam) ** 2 - mu ** 2)),
        kappa1=float(omega * np.sqrt(omega + lam + mu) / (4.0 * np.sqrt(omega + lam - mu))),
        kappa2=float(omega * np.sqrt(omega - lam - mu) / (4.0 * np.sqrt(omega - lam + mu))),
        r_a=float(r['plus']),
        r_b=float(r['minus']),
        c1=float(c1), c2=float(c2), c3=float(c3), c4=float(c4),
        theta_plus=float(theta['plus']),
        theta_minus=float(theta['minus']),
        zeta_plus=float(zeta['plus']),
        zeta_minus=float(zeta['minus']),
    )

    error = np.max(np.abs(rebuild_hessian(result) - hamiltonian_hessian(p)))
    if error > REBUILD_TOL * omega:
        raise DegenerateError(f"Rebuilt Hamiltonian deviates from the model by {error:.3e}")
    logger.debug("Diagonalized %s: Lambda=(%.12g, %.12g) normal=(%.12g, %.12g) kappa=(%.12g, %.12g)",
                 p, result.Lambda_plus, result.Lambda_minus, result.normal_plus,
                 result.normal_minus, result.kappa1, result.kappa2)
    return result


def normal_mode_amplitudes(d):
    """
    Coefficients (p, q) of alpha = p (a + b) + q (a^dag + b^dag) and
    beta = p' (a - b) + q' (a^dag - b^dag).
    """
    ch_a, sh_a = np.cosh(d.r_a), np.sinh(d.r_a)
    ch_b, sh_b = np.cosh(d.r_b), np.sinh(d.r_b)
    root8 = np.sqrt(8.0)
    alpha = ((d.c1 * ch_a + d.c2 * sh_a) / root8, (d.c2 * ch_a + d.c1 * sh_a) / root8)
    beta = ((d.c3 * ch_b + d.c4 * sh_b) / root8, (d.c4 * ch_b + d.c3 * sh_b) / root8)
    return alpha, beta


def normal_mode_transform(d):
    """Symplectic map S with (X+, P+, X-, P-) = S (X_a, P_a, X_b, P_b)."""
    (pa, qa), (pb, qb) = normal_mode_amplitudes(d)
    return np.array([
        [pa + qa, 0.0, pa + qa, 0.0],
        [0.0, pa - qa, 0.0, pa - qa],
        [pb + qb, 0.0, -(pb + qb), 0.0],
        [0.0, pb - qb, 0.0, -(pb - qb)],
    ])


def rebuild_hessian(d):
    """Hessian of normal_plus*alpha^dag alpha + normal_minus*beta^dag beta in the bare quadratures."""
    s = normal_mode_transform(d)
    freqs = np.diag([d.normal_plus, d.normal_plus, d.normal_minus, d.normal_minus])
    return s.T @ freqs @ s


def ground_energy(p):
    """Ground-state energy relative to omega (a^dag a + b^dag b)."""
    d = diagonalize(p)
    return 0.5 * (d.normal_plus + d.normal_minus) - p.omega


def natural_moments(p, weight_plus=1.0, weight_minus=1.0):
    """
    Second moments <x_a^2>, <x_a x_b>, <p_a^2>, <p_a p_b> in natural units.

    The weights multiply the centre-of-mass and relative sectors; they are 1
    for the ground state and coth(Lambda/2T) for the thermal steady state.
    """
    d = diagonalize(p)
    k1, k2 = d.kappa1, d.kappa2
    xx = (weight_plus / k1 + weight_minus / k2) / 16.0
    xaxb = (weight_plus / k1 - weight_minus / k2) / 16.0
    pp = weight_plus * k1 + weight_minus * k2
    papb = weight_plus * k1 - weight_minus * k2
    return xx, xaxb, pp, papb


def block_covariance(omega, xx, xaxb, pp, papb):
    """Dimensionless covariance matrix from natural-unit moments of identical modes."""
    sxx, sxaxb = 2.0 * omega * xx, 2.0 * omega * xaxb
    spp, spapb = 2.0 * pp / omega, 2.0 * papb / omega
    return np.array([
        [sxx, 0.0, sxaxb, 0.0],
        [0.0, spp, 0.0, spapb],
        [sxaxb, 0.0, sxx, 0.0],
        [0.0, spapb, 0.0, spp],
    ])


def natural_covariance(sigma, omega):
    """Convert a dimensionless two-mode covariance back to natural units (x, p)."""
    scale = np.array([1.0 / np.sqrt(2.0 * omega), np.sqrt(omega / 2.0)] * 2)
    return np.asarray(sigma) * np.outer(scale, scale)


def ground_state_covariance(p):
    """Ground state of the coupled modes (zero displacement)."""
    moments = natural_moments(p)
    return TwoModeGaussianState(np.zeros(4), block_covariance(p.omega, *moments))


def ground_state_coherence(p):
    return coherence(ground_state_covariance(p))


def ground_wavefunction_params(p):
    """Exponents (kappa1, kappa2) of the ground-state wave function."""
    d = diagonalize(p)
    return d.kappa1, d.kappa2


def ground_wavefunction(p, x_a, x_b):
    k1, k2 = ground_wavefunction_params(p)
    x_a, x_b = np.asarray(x_a, dtype=float), np.asarray(x_b, dtype=float)
    prefactor = 2.0 * (k1 * k2) ** 0.25 / np.sqrt(np.pi)
    return prefactor * np.exp(-k1 * (x_a + x_b) ** 2 - k2 * (x_a - x_b) ** 2)


def wavefunction_norm(p):
    """Integral of |Psi|^2 over the plane by adaptive quadrature."""
    k1, k2 = ground_wavefunction_params(p)
    half_width = 10.0 * max(np.sqrt(1.0 / (4.0 * k1)), np.sqrt(1.0 / (4.0 * k2)))
    value, _ = dblquad(
        lambda x_b, x_a: float(ground_wavefunction(p, x_a, x_b)) ** 2,
        -half_width, half_width, -half_width, half_width,
        epsabs=1e-11, epsrel=1e-10,
    )
    return value
