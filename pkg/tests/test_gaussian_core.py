"""
Coupled Mode Coherence Simulator
Licensed under CC BY-SA 4.0 (https://creativecommons.org/licenses/by-sa/4.0/)
"""
# tests/test_gaussian_core.py
import numpy as np
import pytest
from scipy.stats import multivariate_normal

from errors import DegenerateError, DimensionError, UnphysicalStateError
from gaussian_core import (SingleModeGaussianState, SymplecticSpectrum, TwoModeGaussianState,
                           block_symplectic_eigenvalues, coherence, explicit_two_mode_coherence,
                           gaussian_density, gaussian_fidelity, mean_excitation,
                           partial_trace_mode_a, symplectic_eigenvalues, thermal_state, vacuum,
                           von_neumann_entropy)


def thermal_entropy(n):
    return (n + 1) * np.log(n + 1) - (n * np.log(n) if n > 0 else 0.0)


def two_mode_squeezed(r):
    c, s = np.cosh(2 * r), np.sinh(2 * r)
    z = np.diag([1.0, -1.0])
    return np.block([[c * np.eye(2), s * z], [s * z, c * np.eye(2)]])


def random_block_covariance(rng, identical):
    """Physical two-mode covariance with no X-P correlations and independent random entries."""
    blocks = []
    for _ in range(2):
        first = rng.uniform(0.5, 4.0)
        second = first if identical else rng.uniform(0.5, 4.0)
        cross = rng.uniform(-0.95, 0.95) * np.sqrt(first * second)
        blocks.append(np.array([[first, cross], [cross, second]]))
    x_block, p_block = blocks
    smallest = np.min(np.linalg.eigvals(x_block @ p_block).real)
    p_block = p_block * rng.uniform(1.0, 3.0) / smallest
    sigma = np.zeros((4, 4))
    sigma[np.ix_([0, 2], [0, 2])] = x_block
    sigma[np.ix_([1, 3], [1, 3])] = p_block
    return sigma


class TestSymplecticSpectrum:
    def test_vacuum(self):
        assert symplectic_eigenvalues(np.eye(4)).nu == pytest.approx((1.0, 1.0), abs=1e-12)

    def test_single_mode_thermal(self):
        assert symplectic_eigenvalues(3.0 * np.eye(2)).nu == pytest.approx((3.0,))

    def test_descending_order(self):
        sigma = np.diag([5.0, 5.0, 2.0, 2.0])
        assert symplectic_eigenvalues(sigma).nu == pytest.approx((5.0, 2.0))

    def test_two_mode_squeezed_vacuum_is_pure(self):
        spectrum = symplectic_eigenvalues(two_mode_squeezed(0.7))
        assert spectrum.is_pure

    def test_non_symmetric_rejected(self):
        sigma = np.eye(4)
        sigma[0, 2] = 0.1
        with pytest.raises(DimensionError):
            symplectic_eigenvalues(sigma)

    @pytest.mark.parametrize('shape', [(3, 3), (4, 2), (6, 6)])
    def test_wrong_shape_rejected(self, shape):
        with pytest.raises(DimensionError):
            symplectic_eigenvalues(np.ones(shape))

    def test_unphysical_rejected(self):
        with pytest.raises(UnphysicalStateError):
            symplectic_eigenvalues(0.5 * np.eye(2))

    @pytest.mark.parametrize('identical', [True, False])
    def test_closed_form_matches_generic_routine(self, identical):
        rng = np.random.default_rng(7)
        for _ in range(500):
            sigma = random_block_covariance(rng, identical)
            generic = symplectic_eigenvalues(sigma).nu
            closed = block_symplectic_eigenvalues(sigma).nu
            np.testing.assert_allclose(closed, generic, rtol=1e-9, atol=1e-10)

    def test_closed_form_stays_accurate_for_pure_states(self):
        for r in (0.05, 0.4, 1.2):
            assert block_symplectic_eigenvalues(two_mode_squeezed(r)).nu == pytest.approx((1.0, 1.0), abs=1e-13)

    def test_indefinite_matrix_rejected(self):
        sigma = np.diag([12.0, -0.1, 12.0, -0.1])
        with pytest.raises(UnphysicalStateError):
            symplectic_eigenvalues(sigma)
        with pytest.raises(UnphysicalStateError):
            block_symplectic_eigenvalues(sigma)


class TestEntropy:
    def test_pure(self):
        assert von_neumann_entropy(SymplecticSpectrum((1.0, 1.0))) == 0.0

    def test_thermal_value(self):
        assert von_neumann_entropy(SymplecticSpectrum((3.0,))) == pytest.approx(2 * np.log(2))

    def test_continuity_at_pure_boundary(self):
        eps = 1e-8
        assert von_neumann_entropy(SymplecticSpectrum((1.0 + 2 * eps,))) < 1e-6

    def test_below_one_rejected(self):
        with pytest.raises(UnphysicalStateError):
            von_neumann_entropy([0.9])


class TestMeanExcitation:
    @pytest.mark.parametrize('sigma, d, expected', [
        (np.eye(2), (0.0, 0.0), 0.0),
        (np.eye(2), (1.0, 1.0), 0.5),
        (3.0 * np.eye(2), (0.0, 0.0), 1.0),
    ])
    def test_examples(self, sigma, d, expected):
        assert mean_excitation(SingleModeGaussianState(np.array(d), sigma)) == pytest.approx(expected)


class TestCoherence:
    def test_thermal_product_is_incoherent(self):
        state = TwoModeGaussianState(np.zeros(4), np.diag([3.0, 3.0, 1.5, 1.5]))
        assert coherence(state) == pytest.approx(0.0, abs=1e-12)

    def test_displaced_vacuum(self):
        state = SingleModeGaussianState(np.array([1.0, 1.0]), np.eye(2))
        assert coherence(state) == pytest.approx(1.5 * np.log(1.5) - 0.5 * np.log(0.5))
        assert coherence(state) == pytest.approx(0.9548, abs=1e-4)

    def test_coherent_state_value(self):
        state = SingleModeGaussianState(np.array([2.0, 0.0]), np.eye(2))
        assert coherence(state) == pytest.approx(2 * np.log(2))

    def test_depends_on_displacement_only_through_its_norm(self):
        sigma = np.array([[2.0, 0.4], [0.4, 1.5]])
        a = SingleModeGaussianState(np.array([1.0, 0.0]), sigma)
        b = SingleModeGaussianState(np.array([0.0, 1.0]), sigma)
        assert coherence(a) == pytest.approx(coherence(b), abs=1e-14)

    def test_two_mode_squeezed_vacuum(self):
        r = 0.4
        n = np.sinh(r) ** 2
        state = TwoModeGaussianState(np.zeros(4), two_mode_squeezed(r))
        assert coherence(state) == pytest.approx(2 * thermal_entropy(n), abs=1e-10)

    def test_explicit_expansion_agrees(self):
        sigma = two_mode_squeezed(0.3) + np.diag([0.5, 0.5, 0.2, 0.2])
        state = TwoModeGaussianState(np.zeros(4), sigma)
        assert explicit_two_mode_coherence(sigma) == pytest.approx(coherence(state), abs=1e-10)


class TestStates:
    def test_states_are_immutable(self):
        state = vacuum(2)
        with pytest.raises(ValueError):
            state.sigma[0, 0] = 2.0

    def test_partial_trace_of_vacuum(self):
        reduced = partial_trace_mode_a(vacuum(2))
        np.testing.assert_array_equal(reduced.sigma, np.eye(2))
        np.testing.assert_array_equal(reduced.d, np.zeros(2))

    def test_partial_trace_of_product(self):
        sigma = np.diag([2.0, 2.0, 5.0, 5.0])
        state = TwoModeGaussianState(np.array([1.0, 2.0, 3.0, 4.0]), sigma)
        reduced = partial_trace_mode_a(state)
        np.testing.assert_array_equal(reduced.sigma, 2.0 * np.eye(2))
        np.testing.assert_array_equal(reduced.d, [1.0, 2.0])

    def test_single_mode_physicality(self):
        with pytest.raises(UnphysicalStateError):
            SingleModeGaussianState(np.zeros(2), np.diag([2.0, 0.3]))


class TestFidelity:
    def test_identical_states(self):
        s = SingleModeGaussianState(np.array([0.3, -0.2]), np.array([[2.0, 0.3], [0.3, 1.2]]))
        assert gaussian_fidelity(s, s) == pytest.approx(1.0, abs=1e-12)

    def test_vacuum_vs_vacuum(self):
        assert gaussian_fidelity(vacuum(1), vacuum(1)) == pytest.approx(1.0)

    def test_coherent_overlap(self):
        displaced = SingleModeGaussianState(np.array([2.0, 0.0]), np.eye(2))
        assert gaussian_fidelity(vacuum(1), displaced) == pytest.approx(np.exp(-1.0))

    def test_vacuum_vs_thermal(self):
        assert gaussian_fidelity(vacuum(1), thermal_state(1.0)) == pytest.approx(0.5)

    def test_thermal_vs_same_thermal(self):
        assert gaussian_fidelity(thermal_state(0.7), thermal_state(0.7)) == pytest.approx(1.0)

    def test_symmetric(self):
        s1 = SingleModeGaussianState(np.array([0.5, -0.3]), np.array([[2.0, 0.3], [0.3, 1.2]]))
        s2 = thermal_state(0.5, d=(0.2, 0.1))
        assert gaussian_fidelity(s1, s2) == pytest.approx(gaussian_fidelity(s2, s1))

    def test_singular_sum_rejected(self):
        # Bypasses validation to reach the degenerate branch
        s = SingleModeGaussianState(np.zeros(2), np.eye(2))
        object.__setattr__(s, 'sigma', np.zeros((2, 2)))
        with pytest.raises(DegenerateError):
            gaussian_fidelity(s, s)


def test_gaussian_density_matches_scipy():
    sigma = np.array([[1.5, 0.2, 0.1, 0.0], [0.2, 0.8, 0.0, 0.05],
                      [0.1, 0.0, 1.1, 0.3], [0.0, 0.05, 0.3, 0.9]])
    mean = np.array([0.1, -0.2, 0.3, 0.0])
    points = np.random.default_rng(3).normal(size=(5, 4))
    expected = multivariate_normal(mean, sigma).pdf(points)
    np.testing.assert_allclose(gaussian_density(sigma, mean, points), expected, rtol=1e-10)
