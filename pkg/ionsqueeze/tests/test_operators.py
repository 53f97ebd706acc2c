import cmath
import math

import numpy as np
import scipy.linalg as la

from ionsqueeze.conf import constants, settings
from ionsqueeze.errors import NotAntiHermitianError, TruncationError
from ionsqueeze.hilbert import make_space
from ionsqueeze.models.operators import Operator
from ionsqueeze.operators import (
    annihilation, coherent_amplitudes, creation, displace,
    displacement_matrix, eigenvalue_label, expm_antihermitian, expm_local,
    number, pauli, pauli_eigenstate, squeeze_matrix, tmsv_amplitudes,
    tmsv_self_test, tmsv_state_matrix, two_ion_pauli, two_mode_squeeze,
)
from ionsqueeze.propagators import SIGMA_X_DIFFERENCE
from ionsqueeze.tests.base import IonSqueezeTestCase
from ionsqueeze.utils.linalg import commutator


class TestLocalMatrices(IonSqueezeTestCase):

    def test_ladder_operators(self):
        a = annihilation(4)
        self.assertArraysClose(np.diag(a, k=1), np.sqrt([1, 2, 3]), tol=0)
        self.assertArraysClose(creation(4), a.conj().T, tol=0)
        self.assertArraysClose(creation(4) @ a, number(4), tol=1e-15)
        with self.assertRaises(ValueError):
            annihilation(1)

    def test_truncated_commutator_defect_sits_in_the_top_level(self):
        a = annihilation(4)
        self.assertArraysClose(
            commutator(a, creation(4)), np.diag([1, 1, 1, -3]), tol=1e-14)

    def test_internal_encoding(self):
        excited = np.array([1, 0])
        ground = np.array([0, 1])
        self.assertArraysClose(pauli('z') @ excited, excited, tol=0)
        self.assertArraysClose(pauli('z') @ ground, -ground, tol=0)
        self.assertArraysClose(pauli('+') @ ground, excited, tol=0)
        self.assertArraysClose(pauli('-') @ excited, ground, tol=0)
        with self.assertRaises(ValueError):
            pauli('w')

    def test_pauli_eigenstates(self):
        for axis in ('x', 'y', 'z'):
            for sign in (1, -1):
                vector = pauli_eigenstate(axis, sign)
                self.assertAlmostEqual(np.vdot(vector, vector).real, 1.0)
                self.assertArraysClose(
                    pauli(axis) @ vector, sign * vector, tol=1e-15)
        # |+y> = (|e> + i|g>)/sqrt(2)
        self.assertArraysClose(
            pauli_eigenstate('y', 1), np.array([1, 1j]) / math.sqrt(2),
            tol=1e-15)
        self.assertEqual(eigenvalue_label('y', -1), '-y')

    def test_two_ion_pauli(self):
        self.assertArraysClose(
            two_ion_pauli('x', 'z'), np.kron(pauli('x'), pauli('z')), tol=0)
        self.assertArraysClose(
            two_ion_pauli(None, 'y'), np.kron(np.eye(2), pauli('y')), tol=0)


class TestExponentials(IonSqueezeTestCase):

    def test_expm_local_matches_scipy(self):
        rng = np.random.default_rng(3)
        m = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        generator = 0.5 * (m - m.conj().T)
        self.assertArraysClose(
            expm_local(generator), la.expm(generator), tol=1e-12)

    def test_expm_local_rejects_non_antihermitian_generators(self):
        with self.assertRaises(NotAntiHermitianError):
            expm_local(np.eye(3))

    def test_sector_exponential_matches_dense_exponential(self):
        space = make_space(3, 3)
        a = annihilation(4)
        ab = np.kron(a, a)
        generator = Operator(
            space, [(-0.3j * SIGMA_X_DIFFERENCE, ab + ab.conj().T)])
        result = expm_antihermitian(generator)
        self.assertUnitary(result)
        self.assertArraysClose(
            result.matrix, la.expm(generator.matrix), tol=1e-12)

    def test_dense_fallback_for_several_terms(self):
        space = make_space(2, 2)
        a = annihilation(3)
        generator = Operator(space, [
            (-0.2j * two_ion_pauli('x', None), np.kron(a + a.T, np.eye(3))),
            (-0.1j * two_ion_pauli('z', 'z'), np.kron(np.eye(3), a.T @ a)),
        ])
        result = expm_antihermitian(generator)
        self.assertArraysClose(
            result.matrix, la.expm(generator.matrix), tol=1e-12)

    def test_zero_generator_gives_identity(self):
        space = make_space(2, 2)
        self.assertLess(
            expm_antihermitian(Operator.zero(space)).distance(
                Operator.identity(space)), 1e-15)


class TestSqueezing(IonSqueezeTestCase):

    def setUp(self):
        self.space = make_space(16, 16)

    def test_squeeze_matrix_is_unitary(self):
        S = squeeze_matrix(self.space, -0.2j)
        self.assertArraysClose(
            S.conj().T @ S, np.eye(self.space.motional_dimension), tol=1e-10)
        self.assertUnitary(two_mode_squeeze(self.space, 0.1 + 0.1j))

    def test_squeezed_vacuum_matches_analytic_expansion(self):
        for G in (0.2, -0.2j, 0.15 * cmath.exp(0.7j)):
            computed = squeeze_matrix(self.space, G)[:, 0]
            expected = tmsv_state_matrix(self.space, G).reshape(-1)
            self.assertArraysClose(computed, expected, tol=1e-9)

    def test_tmsv_amplitudes(self):
        r = 0.4
        amplitudes = tmsv_amplitudes(r * cmath.exp(0.3j), 5)
        self.assertAlmostEqual(amplitudes[0], 1 / math.cosh(r))
        ratio = amplitudes[1] / amplitudes[0]
        self.assertAlmostEqual(ratio, -cmath.exp(0.3j) * math.tanh(r))

    def test_inverse_is_negated_parameter(self):
        S = squeeze_matrix(self.space, 0.1 - 0.05j)
        inverse = squeeze_matrix(self.space, -0.1 + 0.05j)
        self.assertArraysClose(S.conj().T, inverse, tol=1e-12)

    def test_self_test_anchors_the_convention(self):
        result = tmsv_self_test()
        self.assertLess(result['max_deviation'], result['tolerance'])
        self.assertEqual(
            result['convention'], 'sech(r) * (-exp(i*theta) * tanh(r))**n')

    def test_tail_guard_fires_at_large_squeezing(self):
        space = make_space(10, 10)
        with self.assertRaises(TruncationError) as cm:
            squeeze_matrix(space, 2.0)
        self.assertEqual(cm.exception.tolerance, settings.TAIL_MASS_BUDGET)
        self.assertGreater(cm.exception.value, settings.TAIL_MASS_BUDGET)
        # the unchecked path still builds the (inaccurate) matrix
        self.assertEqual(
            squeeze_matrix(space, 2.0, check_tail=False).shape, (121, 121))

    def test_tail_budget_follows_settings(self):
        space = make_space(10, 10)
        with settings.override(TAIL_MASS_BUDGET=0.5):
            squeeze_matrix(space, 1.0)
        with self.assertRaises(TruncationError):
            squeeze_matrix(space, 1.0)

    def test_squeezes_along_one_phase_compose_additively(self):
        for G1, G2 in ((-0.1j, -0.15j), (0.05, 0.12), (-0.2j, 0.1j)):
            self.assertArraysClose(
                squeeze_matrix(self.space, G1) @ squeeze_matrix(self.space, G2),
                squeeze_matrix(self.space, G1 + G2), tol=1e-10)

    def test_squeezing_conserves_the_mode_number_difference(self):
        dim = self.space.n_c_cut + 1
        difference = (np.kron(number(dim), np.eye(dim))
                      - np.kron(np.eye(dim), number(dim)))
        S = squeeze_matrix(self.space, 0.15 * cmath.exp(0.4j))
        self.assertLess(np.max(np.abs(commutator(S, difference))), 1e-10)


class TestDisplacement(IonSqueezeTestCase):

    def test_displaced_vacuum_matches_coherent_state(self):
        space = make_space(20, 4)
        beta = 0.5 + 0.3j
        column = displacement_matrix(space, constants.MODE_C, beta)[:, 0]
        self.assertArraysClose(
            column, coherent_amplitudes(beta, 20), tol=1e-9)

    def test_displace_acts_on_the_named_mode(self):
        space = make_space(3, 12)
        op = displace(space, constants.MODE_R, 0.2j)
        self.assertUnitary(op)
        expected = np.kron(
            np.eye(4), np.kron(
                np.eye(4), displacement_matrix(space, constants.MODE_R, 0.2j)))
        self.assertArraysClose(op.matrix, expected, tol=1e-15)

    def test_unknown_mode(self):
        with self.assertRaises(ValueError):
            displacement_matrix(make_space(3, 3), 'mode_x', 0.1)

    def test_tail_guard_fires_for_large_displacements(self):
        with self.assertRaises(TruncationError):
            displacement_matrix(make_space(8, 8), constants.MODE_C, 2.5)

    def test_displacements_of_different_modes_commute(self):
        space = make_space(10, 10)
        D_c = displace(space, constants.MODE_C, 0.3 - 0.1j)
        D_r = displace(space, constants.MODE_R, 0.2j)
        self.assertLess(D_c.commutator_defect(D_r), 1e-14)
