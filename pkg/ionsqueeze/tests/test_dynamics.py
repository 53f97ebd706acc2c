from unittest import mock

import numpy as np
import scipy.linalg as la

from ionsqueeze.conf import constants, settings
from ionsqueeze.errors import (
    LambdaDickeError, NormDriftError, StepUnderflowError,
)
from ionsqueeze.dynamics import (
    InteractionHamiltonian, default_max_step, evolve_td, h_int_picture,
    rwa_infidelity, rwa_sweep, sweep_params,
)
from ionsqueeze.hilbert import apply, make_space
from ionsqueeze.models.operators import Operator
from ionsqueeze.models.params import EffectiveCoupling, PhysicalParams
from ionsqueeze.operators import two_ion_pauli
from ionsqueeze.propagators import h_eff_squeeze, u_squeeze
from ionsqueeze.protocols import initial_eq7
from ionsqueeze.tests.base import IonSqueezeTestCase, slow


class TestEvolveTD(IonSqueezeTestCase):

    def setUp(self):
        self.space = make_space(6, 6)
        self.initial = initial_eq7(self.space)

    def test_constant_hamiltonian_reproduces_the_closed_form(self):
        # r = 2 * 1.0 * 0.5 * 0.4 * 0.5 = 0.2
        rabi, eta, eta_r, t = 1.0, 0.5, 0.4, 0.5
        h = h_eff_squeeze(self.space, rabi, eta, eta_r)
        final, stats = evolve_td(
            h, self.initial, 0.0, t, tol=1e-10, full_output=True)
        expected = apply(
            u_squeeze(self.space, EffectiveCoupling(rabi, eta, eta_r, t).G),
            self.initial)
        self.assertArraysClose(
            final.amplitudes, expected.amplitudes, tol=1e-7)
        self.assertGreater(stats['steps'], 0)
        self.assertLess(stats['norm_drift'], 1e-8)

    def test_callable_hamiltonian(self):
        h = h_eff_squeeze(self.space, 1.0, 0.5, 0.4)
        final = evolve_td(lambda t: h, self.initial, 0.0, 0.2, tol=1e-10)
        expected = evolve_td(h, self.initial, 0.0, 0.2, tol=1e-10)
        self.assertArraysClose(final.amplitudes, expected.amplitudes,
                               tol=1e-9)

    def test_empty_interval_returns_the_initial_state(self):
        h = h_eff_squeeze(self.space, 1.0, 0.5, 0.4)
        final = evolve_td(h, self.initial, 1.0, 1.0)
        self.assertArraysClose(final.amplitudes, self.initial.amplitudes,
                               tol=0)

    def test_norm_drift_is_reported(self):
        # one RK4 step of length 1 under 2 sigma_x1 loses about half the norm
        h = Operator(self.space, [(2 * two_ion_pauli('x', None), None)])
        with self.assertRaises(NormDriftError) as cm:
            evolve_td(h, self.initial, 0.0, 1.0, fixed_step=1.0)
        self.assertEqual(cm.exception.guard, 'norm-drift')
        self.assertGreater(cm.exception.value, cm.exception.tolerance)

    def test_step_underflow(self):
        h = Operator(self.space, [(2 * two_ion_pauli('x', None), None)])
        with mock.patch('ionsqueeze.dynamics.MIN_STEP_FRACTION', 0.5):
            with self.assertRaises(StepUnderflowError) as cm:
                evolve_td(h, self.initial, 0.0, 1.0, tol=1e-12)
        self.assertLess(cm.exception.time, 0.5)

    def test_halving_the_step_cuts_the_error_by_more_than_eight(self):
        rabi, eta, eta_r, t = 1.0, 0.5, 0.4, 0.5
        h = h_eff_squeeze(self.space, rabi, eta, eta_r)
        exact = apply(
            Operator(self.space, matrix=la.expm(-1j * t * h.matrix)),
            self.initial).amplitudes
        errors = []
        with settings.override(NORM_DRIFT_TOLERANCE=1e-3):
            for step in (0.1, 0.05):
                final = evolve_td(h, self.initial, 0.0, t, fixed_step=step)
                errors.append(np.max(np.abs(final.amplitudes - exact)))
        self.assertGreater(errors[1], 0.0)
        self.assertGreaterEqual(errors[0] / errors[1], 8.0)


class TestInteractionHamiltonian(IonSqueezeTestCase):

    def setUp(self):
        self.space = make_space(3, 3)
        self.params = PhysicalParams.from_lamb_dicke(eta=0.1, eta_r=0.08)

    def test_hamiltonian_is_hermitian(self):
        for order in constants.EXPANSION_ORDER_CHOICES:
            h = InteractionHamiltonian(self.params, order, self.space)
            for t in (0.0, 1.3e-7, 4.1e-6):
                self.assertLess(h(t).hermiticity_defect(), 1e-12)

    def test_hamiltonian_is_real_at_time_zero(self):
        for order in constants.EXPANSION_ORDER_CHOICES:
            matrix = h_int_picture(self.params, order, 0.0, self.space).matrix
            self.assertLess(np.max(np.abs(matrix.imag)), 1e-15)

    def test_time_average_is_the_effective_hamiltonian(self):
        h = InteractionHamiltonian(self.params, 2, self.space)
        # 500 periods of mu + nu, 16 samples per period
        periods, samples = 500, 16
        span = periods * 2 * np.pi / (self.params.mu + self.params.nu)
        times = np.arange(periods * samples) * span / (periods * samples)
        average = sum(h(t).matrix for t in times) / len(times)
        h_eff = h_eff_squeeze(
            self.space, self.params.rabi, self.params.eta, self.params.eta_r)
        scale = self.params.rabi * self.params.eta * self.params.eta_r
        self.assertLess(np.max(np.abs(average - h_eff.matrix)) / scale, 2e-2)

    def test_matrix_action_matches_operator(self):
        h = InteractionHamiltonian(self.params, 2, self.space)
        rng = np.random.default_rng(5)
        dm = self.space.motional_dimension
        psi = rng.normal(size=(4, dm)) + 1j * rng.normal(size=(4, dm))
        t = 2.7e-7
        self.assertArraysClose(
            h.apply_to_matrix(t, psi), h(t).apply_to_matrix(psi), tol=1e-9)
        self.assertArraysClose(
            h_int_picture(self.params, 2, t, self.space).matrix,
            h(t).matrix, tol=0)

    def test_expansions_agree_at_small_lamb_dicke_parameters(self):
        t = 3.3e-7
        second = InteractionHamiltonian(self.params, 2, self.space)(t)
        exact = InteractionHamiltonian(
            self.params, constants.EXPANSION_ORDER_EXACT, self.space)(t)
        # the neglected terms are fourth order in eta
        scale = 2 * self.params.rabi
        self.assertLess(second.distance(exact) / scale, 1e-2)

    def test_lamb_dicke_guard(self):
        params = PhysicalParams.from_lamb_dicke(eta=0.5, eta_r=0.5)
        with self.assertRaises(LambdaDickeError):
            InteractionHamiltonian(params, 2, self.space)

    def test_default_max_step_resolves_the_sideband_detuning(self):
        period = 2 * np.pi / (self.params.mu + self.params.nu)
        self.assertAlmostEqual(default_max_step(self.params), period / 12)


class TestRWAValidation(IonSqueezeTestCase):

    def setUp(self):
        self.params = PhysicalParams.from_lamb_dicke(eta=0.1, eta_r=0.1)

    def test_small_squeezing_is_well_described_by_the_effective_coupling(self):
        t_final = self.params.interaction_time(0.01)
        infidelity, stats = rwa_infidelity(
            self.params, t_final, 2, make_space(4, 4), full_output=True)
        self.assertGreaterEqual(infidelity, 0.0)
        self.assertLess(infidelity, 1e-2)
        self.assertLess(stats['norm_drift'], 1e-8)

    def test_sweep_params(self):
        params = sweep_params(self.params, 'eta', 0.05)
        self.assertEqual((params.eta, params.eta_r), (0.05, 0.05))
        params = sweep_params(self.params, 'rabi_over_nu', 0.01)
        self.assertAlmostEqual(params.rabi, 0.01 * self.params.nu)
        with self.assertRaises(ValueError):
            sweep_params(self.params, 'mu', 1.0)

    def test_sweep_rows_follow_the_requested_values(self):
        stats = {'norm_drift': 1e-12, 'steps': 7, 'seconds': 0.5}
        with mock.patch('ionsqueeze.dynamics.rwa_infidelity',
                        return_value=(1e-4, stats)) as patched:
            rows = rwa_sweep(self.params, 'eta', [0.2, 0.05], 0.1,
                             space=make_space(3, 3), workers=1)
        self.assertEqual(patched.call_count, 2)
        self.assertEqual([row['value'] for row in rows], [0.2, 0.05])
        for row in rows:
            for key in constants.SWEEP_CSV_HEADER:
                self.assertIn(key, row)
            self.assertEqual(row['eta'], row['value'])
            self.assertAlmostEqual(
                row['t_final'],
                0.1 / (2 * self.params.rabi * row['value'] ** 2))
            self.assertEqual(row['steps'], 7)

    def test_sweep_rejects_unknown_parameters(self):
        with self.assertRaises(ValueError):
            rwa_sweep(self.params, 'omega0', [1.0], 0.1)

    @slow
    def test_infidelity_grows_with_the_lamb_dicke_parameter(self):
        rows = rwa_sweep(self.params, 'eta', [0.15, 0.10, 0.05], 0.05,
                         space=make_space(12, 12))
        infidelities = [row['infidelity'] for row in rows]
        self.assertEqual(infidelities, sorted(infidelities, reverse=True))
        for infidelity in infidelities:
            self.assertLess(infidelity, 1e-3)

    @slow
    def test_infidelity_grows_with_the_drive_strength(self):
        rows = rwa_sweep(self.params, 'rabi_over_nu', [0.05, 0.02, 0.01],
                         0.05, space=make_space(12, 12))
        infidelities = [row['infidelity'] for row in rows]
        self.assertEqual(infidelities, sorted(infidelities, reverse=True))
        for infidelity in infidelities:
            self.assertLess(infidelity, 1e-3)
