"""
Pre-RWA validation: the interaction-picture Hamiltonian of two ions driven
on both motional sidebands, a norm-monitored adaptive integrator, and the
infidelity of the effective squeezing propagator against full integration.

In the interaction picture with respect to the trap and the internal
splitting, with both ions at the anti-nodes of both standing waves,

    H(t) = 2 rabi cos((mu + nu) t) sum_i sigma_xi cos(k x_i(t)),
    k x_1(t) = eta A(t) - eta_r B(t),  k x_2(t) = eta A(t) + eta_r B(t),

with A(t) = a e^{-i mu t} + h.c. and B(t) = b e^{-i nu t} + h.c. The two
laser detunings +-(mu + nu) are combined into the cosine before
integration. Keeping the cos(k x_i) expansion through second order, the
secular part is rabi eta eta_r (ab + a^dagger b^dagger)(sigma_x1 - sigma_x2).

The prefactor is 2 rabi, not rabi: a drive written per ion as
(rabi/2) sigma_+ (e^{-i w_I t} + e^{-i w_II t}) cos(k x_i) + h.c. reduces to
rabi cos((mu + nu) t) sigma_x cos(k x_i), whose secular part is only half of
the coupling above. The amplitude is normalized to the effective coupling
rabi eta eta_r used by the closed-form propagators, so that G = -i rabi eta
eta_r t holds for both and the infidelity measures the rotating-wave and
Lamb-Dicke error alone.
"""
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np
import scipy.linalg as la

from ionsqueeze.conf import constants, settings
from ionsqueeze.errors import NormDriftError, StepUnderflowError
from ionsqueeze.hilbert import apply, make_space
from ionsqueeze.models.operators import Operator
from ionsqueeze.models.params import ExpansionOrder
from ionsqueeze.operators import annihilation, two_ion_pauli
from ionsqueeze.propagators import u_squeeze
from ionsqueeze.protocols import initial_eq7
from ionsqueeze.utils.linalg import max_abs

logger = logging.getLogger(__name__)

SIGMA_X1 = two_ion_pauli('x', None)
SIGMA_X2 = two_ion_pauli(None, 'x')

# Step-size controller
SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 2.0
MIN_STEP_FRACTION = 1e-12


def _cosine(matrix, order):
    """
    cos(matrix) for a real symmetric matrix, expanded or exact. The result is
    symmetric to the last bit.
    """
    if order.is_exact:
        w, v = la.eigh(matrix)
        result = (v * np.cos(w)) @ v.T
    else:
        square = matrix @ matrix
        result = np.eye(len(matrix)) - square / 2
        if order == constants.EXPANSION_ORDER_4:
            result = result + square @ square / 24
    return 0.5 * (result + result.T)


class InteractionHamiltonian:
    """
    H(t) for ``params`` on ``space``, callable as ``h(t)`` for an
    ``Operator`` and usable directly by ``evolve_td`` through
    ``apply_to_matrix(t, psi)``.

    cos(k x_i(t)) = R(t) cos(k x_i(0)) R(t)^dagger with
    R(t) = exp(i (mu n_c + nu n_r) t), so the cosines are built once and
    only rotated by diagonal phases at each time.

    ``prefactor(t)`` is 2 rabi cos((mu + nu) t); see the module docstring
    for the normalization of the drive amplitude.
    """

    def __init__(self, params, order=None, space=None):
        params.check_lamb_dicke()
        if order is None:
            order = settings.EXPANSION_ORDER
        if space is None:
            space = make_space(settings.FOCK_CUTOFF, settings.FOCK_CUTOFF)
        self.params = params
        self.order = ExpansionOrder(order)
        self.space = space
        dc, dr = space.n_c_cut + 1, space.n_r_cut + 1
        a = annihilation(dc)
        b = annihilation(dr)
        A = np.kron((a + a.conj().T).real, np.eye(dr))
        B = np.kron(np.eye(dc), (b + b.conj().T).real)
        self.cosines = (
            _cosine(params.eta * A - params.eta_r * B, self.order),
            _cosine(params.eta * A + params.eta_r * B, self.order),
        )
        n_c, n_r = np.meshgrid(np.arange(dc), np.arange(dr), indexing='ij')
        self.frequencies = (params.mu * n_c + params.nu * n_r).reshape(-1)
        self.detuning = params.mu + params.nu

    def __repr__(self):
        return '<InteractionHamiltonian order=%r on %r>' % (
            self.order.order, self.space)

    def _rotated(self, t):
        phases = np.exp(1j * self.frequencies * t)
        outer = np.outer(phases, phases.conj())
        return [c * outer for c in self.cosines]

    def prefactor(self, t):
        return 2 * self.params.rabi * math.cos(self.detuning * t)

    def __call__(self, t):
        scale = self.prefactor(t)
        first, second = self._rotated(t)
        return Operator(
            self.space, [(scale * SIGMA_X1, first), (scale * SIGMA_X2, second)])

    def apply_to_matrix(self, t, psi):
        """
        H(t) applied to the (4, motional dimension) amplitude matrix
        ``psi``. The rotation acts as diagonal phases on either side of the
        cosines, so no dense time-dependent matrix is formed.
        """
        scale = self.prefactor(t)
        if scale == 0:
            return np.zeros_like(psi)
        phases = np.exp(1j * self.frequencies * t)
        rotated = psi * phases.conj()
        first, second = (
            (rotated.real @ c + 1j * (rotated.imag @ c)) * phases
            for c in self.cosines)
        return scale * (SIGMA_X1 @ first + SIGMA_X2 @ second)


def h_int_picture(params, order, t, space=None):
    """The interaction-picture Hamiltonian at time ``t``, without any
    rotating-wave truncation."""
    return InteractionHamiltonian(params, order, space)(t)


def _derivative(h, t, psi):
    if hasattr(h, 'apply_to_matrix') and not isinstance(h, Operator):
        return -1j * h.apply_to_matrix(t, psi)
    op = h(t) if callable(h) else h
    return -1j * op.apply_to_matrix(psi)


def _rk4_step(h, t, psi, dt, k1=None):
    if k1 is None:
        k1 = _derivative(h, t, psi)
    k2 = _derivative(h, t + dt / 2, psi + dt / 2 * k1)
    k3 = _derivative(h, t + dt / 2, psi + dt / 2 * k2)
    k4 = _derivative(h, t + dt, psi + dt * k3)
    return psi + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def evolve_td(h, psi0, t0, t1, tol=None, max_step=None, fixed_step=None,
              initial_step=None, full_output=False):
    """
    Integrate i d|psi>/dt = H(t)|psi> from ``t0`` to ``t1``.

    Parameters
    ----------
    h : Operator, callable or InteractionHamiltonian
        A constant ``Operator``, a callable returning the ``Operator`` at a
        time, or any object with ``apply_to_matrix(t, psi)``.
    psi0 : StateVector
        Normalized composite state.
    tol : float
        Target global error. Steps are sized by step doubling so that the
        local error estimate stays below ``tol * dt / (t1 - t0)``.
    max_step : float, optional
        Upper bound on the step, e.g. a fraction of the fastest oscillation.
    fixed_step : float, optional
        Disable adaptivity and take steps of this size (the last step is
        shortened to land on ``t1``).
    full_output : bool
        Also return a dict of step statistics.

    Returns
    -------
    StateVector, or ``(StateVector, dict)`` with ``full_output``.
    """
    if tol is None:
        tol = settings.INTEGRATOR_TOLERANCE
    psi0.check_normalized(what='The initial state')
    span = t1 - t0
    psi = psi0.as_matrix().copy()
    stats = {'steps': 0, 'rejected': 0, 'norm_drift': 0.0}
    started = time.perf_counter()

    if span == 0:
        pass
    elif fixed_step is not None:
        count = max(1, int(math.ceil(abs(span) / fixed_step - 1e-9)))
        dt = span / count
        for i in range(count):
            psi = _rk4_step(h, t0 + i * dt, psi, dt)
        stats['steps'] = count
    else:
        min_step = MIN_STEP_FRACTION * abs(span)
        if max_step is None:
            max_step = abs(span)
        dt = min(abs(span) / 100, max_step) if initial_step is None else \
            min(initial_step, max_step)
        direction = 1 if span > 0 else -1
        t = t0
        while direction * (t1 - t) > 0:
            dt = min(dt, abs(t1 - t))
            step = direction * dt
            k1 = _derivative(h, t, psi)
            full = _rk4_step(h, t, psi, step, k1)
            half = _rk4_step(h, t, psi, step / 2, k1)
            half = _rk4_step(h, t + step / 2, half, step / 2)
            error = max_abs(half - full) / 15
            allowed = tol * dt / abs(span)
            if error <= allowed:
                t += step
                psi = half + (half - full) / 15
                stats['steps'] += 1
            else:
                stats['rejected'] += 1
            factor = MAX_FACTOR if error == 0 else \
                SAFETY * (allowed / error) ** 0.2
            dt = min(dt * min(MAX_FACTOR, max(MIN_FACTOR, factor)), max_step)
            if dt < min_step and direction * (t1 - t) > min_step:
                raise StepUnderflowError(t, dt, min_step)

    result = psi0.with_amplitudes(psi.reshape(-1))
    drift = abs(result.norm - 1.0)
    stats['norm_drift'] = drift
    stats['seconds'] = time.perf_counter() - started
    if drift > settings.NORM_DRIFT_TOLERANCE:
        raise NormDriftError(
            'The integrated state drifted from unit norm',
            tolerance=settings.NORM_DRIFT_TOLERANCE, value=drift)
    logger.debug(
        'evolve_td: %d steps (%d rejected), norm drift %.3e, %.2fs',
        stats['steps'], stats['rejected'], drift, stats['seconds'])
    if full_output:
        return result, stats
    return result


def default_max_step(params):
    """A twelfth of a period of the sideband detuning mu + nu."""
    return 2 * math.pi / (params.mu + params.nu) / 12


def rwa_infidelity(params, t_final, order=None, space=None, tol=None,
                   full_output=False):
    """
    1 - |<psi_full(t_final)|psi_eff(t_final)>|^2 from the squeezed-vacuum
    initial state, with psi_eff from u_squeeze at G = -i rabi eta eta_r
    t_final.
    """
    h = InteractionHamiltonian(params, order, space)
    initial = initial_eq7(h.space)
    full, stats = evolve_td(
        h, initial, 0.0, t_final, tol, max_step=default_max_step(params),
        full_output=True)
    effective = apply(
        u_squeeze(h.space, params.coupling(t_final).G), initial)
    overlap = abs(np.vdot(full.amplitudes, effective.amplitudes)) ** 2
    infidelity = max(0.0, 1.0 - float(overlap))
    logger.info(
        'RWA infidelity %.6e (eta=%.4g, eta_r=%.4g, rabi/nu=%.4g, order=%r)',
        infidelity, params.eta, params.eta_r, params.rabi / params.nu,
        h.order.order)
    if full_output:
        return infidelity, stats
    return infidelity


def sweep_params(base_params, parameter, value):
    """``base_params`` with one swept quantity replaced."""
    if parameter == 'eta':
        return base_params.with_values(eta_override=value, eta_r_override=value)
    if parameter == 'rabi_over_nu':
        return base_params.with_values(rabi=value * base_params.nu)
    raise ValueError(
        "`parameter` must be one of %s. A value of %r was supplied." % (
            constants.SWEEP_PARAMETERS, parameter))


def _sweep_point(task):
    base_params, parameter, value, r, order, cutoffs, tol, overrides = task
    with settings.override(**overrides):
        params = sweep_params(base_params, parameter, value)
        t_final = params.interaction_time(r)
        infidelity, stats = rwa_infidelity(
            params, t_final, order, make_space(*cutoffs), tol,
            full_output=True)
    return {
        'parameter': parameter,
        'value': value,
        'eta': params.eta,
        'eta_r': params.eta_r,
        'rabi': params.rabi,
        'nu': params.nu,
        't_final': t_final,
        'infidelity': infidelity,
        'norm_drift': stats['norm_drift'],
        'steps': stats['steps'],
        'seconds': stats['seconds'],
    }


def rwa_sweep(base_params, parameter, values, r, order=None, space=None,
              tol=None, workers=None):
    """
    ``rwa_infidelity`` at fixed squeezing factor ``r`` for each value of
    ``parameter`` ('eta' pins eta = eta_r, 'rabi_over_nu' sets rabi/nu).
    Rows come back in the order of ``values``; with ``workers`` > 1 the
    points run in a process pool.
    """
    if parameter not in constants.SWEEP_PARAMETERS:
        raise ValueError(
            "`parameter` must be one of %s. A value of %r was supplied." % (
                constants.SWEEP_PARAMETERS, parameter))
    if space is None:
        space = make_space(settings.FOCK_CUTOFF, settings.FOCK_CUTOFF)
    if workers is None:
        workers = settings.SWEEP_WORKERS
    tasks = [
        (base_params, parameter, float(value), r, order, space.cutoffs, tol,
         settings.as_dict())
        for value in values
    ]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(_sweep_point, tasks))
    return [_sweep_point(task) for task in tasks]
