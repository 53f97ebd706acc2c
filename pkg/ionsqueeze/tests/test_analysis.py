import math

import numpy as np

from ionsqueeze.analysis import (
    VACUUM_VARIANCE, CovarianceMatrix, covariance, epr_variance, fidelity,
    mean_annihilation, mode_entanglement_entropy, motional_part,
    motional_tail_mass, optimal_epr_variance, purity, reduced_state_distance,
    schmidt_spectrum, squeezing_db, tail_mass,
)
from ionsqueeze.conf import constants, settings
from ionsqueeze.errors import ImpureStateError, TruncationError
from ionsqueeze.hilbert import (
    basis_state, internal_state, make_space, motional_state, motional_vacuum,
    partial_trace, product_state,
)
from ionsqueeze.operators import displacement_matrix
from ionsqueeze.tests.base import IonSqueezeTestCase, slow
from ionsqueeze.tests.utils import make_coherent_state, make_tmsv_state


def tmsv_entropy(r):
    cosh2, sinh2 = math.cosh(r) ** 2, math.sinh(r) ** 2
    return cosh2 * math.log2(cosh2) - sinh2 * math.log2(sinh2)


class TestTailMass(IonSqueezeTestCase):

    def test_vacuum_has_no_tail(self):
        space = make_space(10, 10)
        self.assertEqual(tail_mass(motional_vacuum(space)), 0.0)

    def test_tail_counts_the_top_levels_of_either_mode_once(self):
        amplitudes = np.zeros((10, 10))
        amplitudes[9, 0] = amplitudes[0, 9] = amplitudes[9, 9] = 0.5
        amplitudes[8, 8] = 0.5
        # margin 0.1 of 10 levels is the single top level
        self.assertAlmostEqual(motional_tail_mass(amplitudes, 0.1), 0.75)
        self.assertAlmostEqual(motional_tail_mass(amplitudes, 0.2), 1.0)

    def test_margin_must_be_a_fraction(self):
        for margin in (0, 1, 1.5):
            with self.assertRaises(ValueError):
                motional_tail_mass(np.eye(3), margin)

    def test_covariance_refuses_truncated_states(self):
        space = make_space(4, 4)
        state = motional_state(space, np.outer(
            [0, 0, 0, 0, 1], [1, 0, 0, 0, 0]))
        with self.assertRaises(TruncationError):
            covariance(state)


class TestFidelityAndFactors(IonSqueezeTestCase):

    def setUp(self):
        self.space = make_space(6, 6)

    def test_fidelity(self):
        first = make_coherent_state(self.space, 0.3)
        self.assertAlmostEqual(fidelity(first, first), 1.0, places=12)
        self.assertAlmostEqual(
            fidelity(first, first * np.exp(0.4j)), 1.0, places=12)
        second = motional_state(
            self.space, np.outer(np.eye(7)[1], np.eye(7)[2]))
        third = motional_state(
            self.space, np.outer(np.eye(7)[2], np.eye(7)[1]))
        self.assertEqual(fidelity(second, third), 0.0)
        # coherent states overlap as exp(-|alpha - beta|^2)
        other = make_coherent_state(self.space, -0.2)
        self.assertAlmostEqual(
            fidelity(first, other), math.exp(-0.25), places=6)

    def test_motional_part_of_a_product(self):
        motional = make_coherent_state(self.space, 0.2j, 0.1)
        state = product_state(
            internal_state(self.space, [0, 1, 0, 0]), motional)
        self.assertSameRay(motional_part(state), motional)

    def test_motional_part_rejects_entangled_states(self):
        state = (basis_state(self.space, 'e', 'e', 0, 0)
                 + basis_state(self.space, 'g', 'g', 1, 1)) * (1 / math.sqrt(2))
        with self.assertRaises(ImpureStateError):
            motional_part(state)

    def test_purity_and_reduced_state_distance(self):
        state = product_state(
            internal_state(self.space, [0.5, 0.5, 0.5, 0.5]),
            make_coherent_state(self.space, 0.1, 0.1))
        rho = partial_trace(state, constants.INTERNAL_SUBSYSTEMS)
        self.assertAlmostEqual(purity(rho), 1.0, places=12)
        self.assertAlmostEqual(reduced_state_distance(rho, rho), 0.0)
        with self.assertRaises(ValueError):
            reduced_state_distance(
                rho, partial_trace(state, [constants.ION1]))


class TestMoments(IonSqueezeTestCase):

    def test_vacuum_covariance(self):
        space = make_space(6, 6)
        cov = covariance(motional_vacuum(space))
        self.assertArraysClose(cov.matrix, VACUUM_VARIANCE * np.eye(4))
        self.assertArraysClose(cov.means, np.zeros(4))
        self.assertArraysClose(
            cov.symplectic_eigenvalues(), [0.5, 0.5], tol=1e-12)
        self.assertTrue(cov.is_physical())
        self.assertArraysClose(
            epr_variance(motional_vacuum(space), 0.7), [0.5, 0.5])

    def test_coherent_state_moments(self):
        space = make_space(20, 20)
        beta_c, beta_r = 0.4 - 0.2j, 0.3j
        state = make_coherent_state(space, beta_c, beta_r)
        cov = covariance(state)
        root = math.sqrt(2)
        self.assertArraysClose(
            cov.means,
            [root * beta_c.real, root * beta_c.imag,
             root * beta_r.real, root * beta_r.imag], tol=1e-9)
        self.assertArraysClose(cov.matrix, 0.5 * np.eye(4), tol=1e-9)
        self.assertAlmostEqual(
            mean_annihilation(state, constants.MODE_C), beta_c, places=9)
        self.assertAlmostEqual(
            mean_annihilation(state, constants.MODE_R), beta_r, places=9)

    def test_covariance_matrix_validation(self):
        with self.assertRaises(ValueError):
            CovarianceMatrix(np.eye(3), np.zeros(3))
        cov = CovarianceMatrix(0.1 * np.eye(4), np.zeros(4))
        self.assertFalse(cov.is_physical())
        self.assertEqual(cov.variance('P_r'), 0.1)
        self.assertEqual(cov.as_dict()['labels'], ['X_c', 'P_c', 'X_r', 'P_r'])

    def test_states_without_mode_correlations_are_not_squeezed(self):
        space = make_space(20, 20)
        fock = np.zeros((21, 21), dtype=complex)
        fock[1, 0] = 1.0
        states = (
            motional_vacuum(space),
            make_coherent_state(space, 0.4 - 0.2j, 0.3j),
            motional_state(space, fock),
        )
        for state in states:
            for phi in np.linspace(0, np.pi, 7):
                for offset in (0.0, 0.9):
                    for variance in epr_variance(state, phi, offset):
                        self.assertGreaterEqual(variance, 0.5 - 1e-9)


class TestSqueezedVacuumMetrics(IonSqueezeTestCase):

    def setUp(self):
        self.space = make_space(24, 24)
        # S(2G) with G = -0.25i: r = 0.5, squeezing phase -pi/2
        self.r = 0.5
        self.state = make_tmsv_state(self.space, -0.5j)

    def test_optimal_epr_variance(self):
        result = optimal_epr_variance(self.state)
        self.assertAlmostEqual(
            result.squeezed, math.exp(-2 * self.r) / 2, delta=1e-4)
        self.assertAlmostEqual(result.product, 0.25, delta=1e-6)
        self.assertAlmostEqual(
            result.squeezing_db,
            -10 * math.log10(math.exp(-2 * self.r)), delta=1e-3)
        self.assertIn(result.combination, ('minus', 'plus'))

    def test_fixed_offset_reaches_the_same_minimum(self):
        free = optimal_epr_variance(self.state)
        fixed = optimal_epr_variance(self.state, offset=free.offset)
        self.assertAlmostEqual(fixed.squeezed, free.squeezed, delta=1e-9)

    def test_untuned_combination_is_not_squeezed(self):
        # without the offset the X_c -+ X_r pair misses the squeezing phase
        minus, plus = epr_variance(self.state, 0.0)
        self.assertGreater(min(minus, plus), 0.5 * math.exp(-2 * self.r))

    def test_entanglement_entropy(self):
        self.assertAlmostEqual(
            mode_entanglement_entropy(self.state), tmsv_entropy(self.r),
            places=8)
        spectrum = schmidt_spectrum(self.state)
        self.assertAlmostEqual(float(np.sum(spectrum)), 1.0, places=12)
        self.assertAlmostEqual(
            spectrum[0], 1 / math.cosh(self.r) ** 2, places=10)

    def test_local_displacements_leave_the_entanglement_unchanged(self):
        entropy = mode_entanglement_entropy(self.state)
        psi = self.state.as_matrix()
        D_c = displacement_matrix(self.space, constants.MODE_C, 0.2)
        D_r = displacement_matrix(self.space, constants.MODE_R, -0.1j)
        for displaced in (D_c @ psi, psi @ D_r.T, D_c @ psi @ D_r.T):
            self.assertAlmostEqual(
                mode_entanglement_entropy(
                    motional_state(self.space, displaced)),
                entropy, places=10)

    def test_product_states_carry_no_entanglement(self):
        state = make_coherent_state(self.space, 0.3, 0.2)
        self.assertAlmostEqual(mode_entanglement_entropy(state), 0.0)

    def test_squeezing_db(self):
        self.assertAlmostEqual(squeezing_db(0.25), 10 * math.log10(2))
        self.assertAlmostEqual(squeezing_db(0.5), 0.0)
        with self.assertRaises(ValueError):
            squeezing_db(0.0)

    @slow
    def test_acceptance_epr_variance_at_cutoff_30(self):
        space = make_space(30, 30)
        with settings.override(TAIL_MASS_BUDGET=1e-6):
            result = optimal_epr_variance(make_tmsv_state(space, -0.5j))
        self.assertAlmostEqual(
            result.squeezed, math.exp(-1) / 2, delta=1e-4)
        self.assertAlmostEqual(result.product, 0.25, delta=1e-6)
