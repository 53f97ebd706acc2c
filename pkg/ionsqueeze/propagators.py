"""
Closed-form evolution operators for the two-mode squeezing and displacement
stages, the carrier and flip pulses, and the effective Hamiltonian used as
their oracle.

The squeezing and displacement propagators are assembled literally as
polynomials in S(G) or D(beta) and embedded Pauli matrices; only S and D
themselves come from a matrix exponential.
"""
import logging

import numpy as np

from ionsqueeze.conf import constants, settings
from ionsqueeze.errors import UnitarityError
from ionsqueeze.models.operators import INTERNAL_IDENTITY, Operator
from ionsqueeze.operators import (
    annihilation, check_mode_tail_mass, check_tail_mass, displacement_matrix,
    pauli, squeeze_matrix, two_ion_pauli,
)

logger = logging.getLogger(__name__)

SIGMA_X_DIFFERENCE = two_ion_pauli('x', None) - two_ion_pauli(None, 'x')
SIGMA_Y_DIFFERENCE = two_ion_pauli('y', None) - two_ion_pauli(None, 'y')


def _check_unitary(op, what, tol=None):
    if tol is None:
        tol = settings.UNITARITY_TOLERANCE
    defect = op.unitarity_defect()
    if defect > tol:
        raise UnitarityError(
            '%s is not unitary' % what, module='propagators',
            tolerance=tol, value=defect)
    logger.debug('%s: unitarity defect %.3e', what, defect)
    return op


def h_eff_squeeze(space, rabi, eta, eta_r):
    """
    The resonant two-mode coupling
    H = rabi * eta * eta_r * (ab + a^dagger b^dagger)(sigma_x1 - sigma_x2).
    """
    a = annihilation(space.n_c_cut + 1)
    b = annihilation(space.n_r_cut + 1)
    ab = np.kron(a, b)
    coupling = rabi * eta * eta_r * (ab + ab.conj().T)
    return Operator(space, [(SIGMA_X_DIFFERENCE, coupling)])


def _symmetric_polynomial(space, internal_product, internal_difference, plus,
                          minus):
    """
    1/4 {plus^2 - internal_product minus^2 + internal_difference plus minus}
    with plus = X^dagger + X and minus = X^dagger - X for a motional X.
    """
    return Operator(space, [
        (INTERNAL_IDENTITY, plus @ plus),
        (-internal_product, minus @ minus),
        (internal_difference, plus @ minus),
    ]) * 0.25


def u_squeeze(space, G):
    """
    The exact propagator of the two-mode coupling,

        1/4 {[S^dagger + S]^2 - sigma_x1 sigma_x2 [S^dagger - S]^2
             + (sigma_x1 - sigma_x2)[S^dagger + S][S^dagger - S]}

    with S = S(G). It acts as the identity when sigma_x1 = sigma_x2 and as
    S(-+2G) on the sectors where sigma_x1 - sigma_x2 = +-2.
    """
    G = complex(G)
    S = squeeze_matrix(space, G)
    # S(-+2G)|00> differ only in phase, and carry the widest Fock
    # distribution this operator produces
    check_tail_mass(
        space, (S @ S[:, 0]).reshape(space.n_c_cut + 1, space.n_r_cut + 1),
        'S(2G)|00>')
    Sd = S.conj().T
    U = _symmetric_polynomial(
        space, two_ion_pauli('x', 'x'), SIGMA_X_DIFFERENCE, Sd + S, Sd - S)
    logger.debug('u_squeeze built for G=%r (|G|=%.6g, r=%.6g)',
                 G, abs(G), 2 * abs(G))
    return _check_unitary(U, 'u_squeeze(G)')


def propagator_for_coupling(space, coupling):
    """``u_squeeze`` for the squeezing parameter of an ``EffectiveCoupling``."""
    logger.info(
        'Coupling rabi=%.6g rad/s, eta=%.6g, eta_r=%.6g, t=%.6g s gives '
        '|G|=%.6g (r=%.6g)', coupling.rabi, coupling.eta, coupling.eta_r,
        coupling.t, abs(coupling.G), coupling.r)
    return u_squeeze(space, coupling.G)


def _embedded_displacement(space, mode, beta):
    factor = displacement_matrix(space, mode, beta)
    # the stages displace by 2 beta on their active sectors
    check_mode_tail_mass(space, mode, factor @ factor[:, 0], 'D(2 beta)|0>')
    if mode == constants.MODE_C:
        return np.kron(factor, np.eye(space.n_r_cut + 1))
    return np.kron(np.eye(space.n_c_cut + 1), factor)


def u_ce(space, beta_c):
    """
    The center-of-mass displacement stage, a product of one factor per ion,

        1/2 {[D^dagger + D] - sigma_yi [D^dagger - D]},  D = D(beta_c).

    Each factor applies D to sigma_y = +1 and D^dagger to sigma_y = -1, so
    aligned ions displace mode_c by +-2 beta_c and anti-aligned ions leave it
    unchanged.
    """
    D = _embedded_displacement(space, constants.MODE_C, beta_c)
    Dd = D.conj().T
    plus, minus = Dd + D, Dd - D
    first = Operator(space, [
        (INTERNAL_IDENTITY, plus), (-two_ion_pauli('y', None), minus)]) * 0.5
    second = Operator(space, [
        (INTERNAL_IDENTITY, plus), (-two_ion_pauli(None, 'y'), minus)]) * 0.5
    return _check_unitary(first @ second, 'u_ce(beta_c)')


def u_re(space, beta_r):
    """
    The breathing-mode displacement stage,

        1/4 {[D^dagger + D]^2 - sigma_y1 sigma_y2 [D^dagger - D]^2
             + (sigma_y1 - sigma_y2)[D^dagger + D][D^dagger - D]}

    with D = D(beta_r) on mode_r: the identity on sigma_y-aligned ions and
    D(-+2 beta_r) where sigma_y1 - sigma_y2 = +-2.
    """
    D = _embedded_displacement(space, constants.MODE_R, beta_r)
    Dd = D.conj().T
    U = _symmetric_polynomial(
        space, two_ion_pauli('y', 'y'), SIGMA_Y_DIFFERENCE, Dd + D, Dd - D)
    return _check_unitary(U, 'u_re(beta_r)')


def carrier_matrix():
    """
    1/4 (1 - i sigma_x1 + i sigma_y1 + i sigma_z1)
        (1 - i sigma_x2 - i sigma_y2 - i sigma_z2) on ion1 (x) ion2.
    """
    identity = np.eye(2)
    first = identity - 1j * pauli('x') + 1j * pauli('y') + 1j * pauli('z')
    second = identity - 1j * pauli('x') - 1j * pauli('y') - 1j * pauli('z')
    return 0.25 * np.kron(first, second)


def u_carrier(space):
    U = Operator.from_internal(space, carrier_matrix())
    return _check_unitary(U, 'u_carrier', tol=1e-12)


def u_flip1(space):
    """-sigma_z on ion1: flips the sigma_y eigenvalue of ion1."""
    return Operator.from_internal(space, -two_ion_pauli('z', None))


def sector_projector(space, axis, s1, s2):
    """
    Projector onto the two-ion sector sigma_axis1 = s1, sigma_axis2 = s2 for
    ``axis`` in {'x', 'y', 'z'} and signs +-1.
    """
    for sign in (s1, s2):
        if sign not in (1, -1):
            raise ValueError(
                'Sector signs must be +1 or -1. A value of %r was supplied.' % (
                    sign, ))
    if axis not in ('x', 'y', 'z'):
        raise ValueError(
            "`axis` must be one of 'x', 'y' or 'z'. A value of %r was "
            "supplied." % (axis, ))
    sigma = pauli(axis)
    identity = np.eye(2)
    return Operator.from_internal(space, np.kron(
        0.5 * (identity + s1 * sigma), 0.5 * (identity + s2 * sigma)))
