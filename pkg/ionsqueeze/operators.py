"""
Ladder and Pauli matrices, unitary exponentials, two-mode squeezing and
displacement operators, and the analytic Fock expansions used as oracles.
"""
import cmath
import logging
import math
from functools import lru_cache

import numpy as np

from ionsqueeze.conf import constants, settings
from ionsqueeze.errors import (
    NotAntiHermitianError, NumericalGuardError, TruncationError,
    UnitarityError,
)
from ionsqueeze.models.operators import INTERNAL_IDENTITY, Operator
from ionsqueeze.utils.linalg import (
    group_eigenvalues, max_abs, normal_eigendecomposition,
    spectral_expm_antihermitian,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Local matrices
# ---------------------------------------------------------------------------

def annihilation(dim):
    """<n-1|a|n> = sqrt(n) on a space of ``dim`` Fock levels."""
    if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)) or \
            dim < 2:
        raise ValueError(
            'Ladder operators need at least 2 Fock levels. A dimension of %r '
            'was supplied.' % (dim, ))
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(
        complex)


def creation(dim):
    return annihilation(dim).conj().T


def number(dim):
    return np.diag(np.arange(dim, dtype=float)).astype(complex)


# |e> is component 0, so sigma_z = diag(1, -1) and sigma_+|g> = |e>
_PAULI = {
    'x': np.array([[0, 1], [1, 0]], dtype=complex),
    'y': np.array([[0, -1j], [1j, 0]], dtype=complex),
    'z': np.array([[1, 0], [0, -1]], dtype=complex),
    '+': np.array([[0, 1], [0, 0]], dtype=complex),
    '-': np.array([[0, 0], [1, 0]], dtype=complex),
}


def pauli(axis):
    try:
        return _PAULI[axis].copy()
    except KeyError:
        raise ValueError(
            "`axis` must be one of %s. A value of %r was supplied." % (
                constants.PAULI_AXES, axis))


def two_ion_pauli(axis_1=None, axis_2=None):
    """The 4x4 matrix sigma_axis_1 (x) sigma_axis_2; ``None`` is identity."""
    left = np.eye(2) if axis_1 is None else pauli(axis_1)
    right = np.eye(2) if axis_2 is None else pauli(axis_2)
    return np.kron(left, right)


def pauli_eigenstate(axis, sign):
    """
    The normalized single-ion eigenstate of sigma_axis with eigenvalue
    ``sign``: |+-x> = (|e> +- |g>)/sqrt(2), |+-y> = (|e> +- i|g>)/sqrt(2),
    |+z> = |e> and |-z> = |g>.
    """
    if axis not in ('x', 'y', 'z'):
        raise ValueError(
            "`axis` must be one of 'x', 'y' or 'z'. A value of %r was "
            "supplied." % (axis, ))
    if sign not in (1, -1):
        raise ValueError('`sign` must be +1 or -1')
    if axis == 'z':
        return np.array([1, 0] if sign == 1 else [0, 1], dtype=complex)
    ground = sign * (1j if axis == 'y' else 1)
    return np.array([1, ground], dtype=complex) / math.sqrt(2)


def eigenvalue_label(axis, sign):
    return '%s%s' % ('+' if sign == 1 else '-', axis)


# ---------------------------------------------------------------------------
# Exponentials
# ---------------------------------------------------------------------------

def expm_local(generator, tol=None, what='exp(K)'):
    """
    exp(K) for a dense anti-Hermitian matrix K, with the accuracy and
    unitarity guards applied.
    """
    if tol is None:
        tol = settings.EXPM_TOLERANCE
    generator = np.asarray(generator, dtype=complex)
    scale = max(1.0, max_abs(generator))
    defect = max_abs(generator + generator.conj().T)
    if defect > settings.HERMITICITY_TOLERANCE * scale:
        raise NotAntiHermitianError(
            'The generator of %s is not anti-Hermitian' % what,
            tolerance=settings.HERMITICITY_TOLERANCE * scale, value=defect)
    result, residual = spectral_expm_antihermitian(generator)
    if residual > tol * scale:
        raise NumericalGuardError(
            'The eigendecomposition behind %s is not accurate enough' % what,
            module='operators', guard='expm-accuracy',
            tolerance=tol * scale, value=residual)
    unitarity = max_abs(result.conj().T @ result - np.eye(len(result)))
    if unitarity > settings.UNITARITY_TOLERANCE:
        raise UnitarityError(
            '%s is not unitary' % what,
            tolerance=settings.UNITARITY_TOLERANCE, value=unitarity)
    return result


def expm_antihermitian(generator, tol=None):
    """
    exp(generator) for an anti-Hermitian ``Operator``.

    A single Kronecker term X (x) Y with X normal is exponentiated sector by
    sector, exp(X (x) Y) = sum_k P_k (x) exp(x_k Y), where P_k projects onto
    the eigenspace of X with eigenvalue x_k. Anything else is materialized
    and decomposed densely. Either way the result is checked to be unitary
    to ``UNITARITY_TOLERANCE``.
    """
    if tol is None:
        tol = settings.EXPM_TOLERANCE
    space = generator.space
    scale = max(1.0, generator.max_abs())
    defect = generator.antihermiticity_defect()
    if defect > settings.HERMITICITY_TOLERANCE * scale:
        raise NotAntiHermitianError(
            'The generator is not anti-Hermitian',
            tolerance=settings.HERMITICITY_TOLERANCE * scale, value=defect)

    if not generator.terms:
        return Operator.identity(space)

    result = None
    if len(generator.terms) == 1:
        internal, motional = generator.terms[0]
        if motional is None:
            result = Operator.from_internal(
                space, expm_local(internal, tol, 'the internal exponential'))
        else:
            decomposition = normal_eigendecomposition(internal, tol * scale)
            if decomposition is not None:
                values, vectors = decomposition
                terms = []
                for value, indices in group_eigenvalues(values, tol * scale):
                    basis = vectors[:, indices]
                    projector = basis @ basis.conj().T
                    terms.append((
                        projector,
                        expm_local(value * motional, tol,
                                   'a sector exponential'),
                    ))
                result = Operator(space, terms)
    if result is None:
        logger.debug(
            'Exponentiating a %d-term generator densely (dimension %d)',
            len(generator.terms), space.dimension)
        result = Operator(
            space, matrix=expm_local(generator.matrix, tol, 'the generator'))

    unitarity = result.unitarity_defect()
    if unitarity > settings.UNITARITY_TOLERANCE:
        raise UnitarityError(
            'exp(generator) is not unitary',
            tolerance=settings.UNITARITY_TOLERANCE, value=unitarity)
    return result


# ---------------------------------------------------------------------------
# Squeezing and displacement
# ---------------------------------------------------------------------------

def two_mode_generator(space, G):
    """The motional matrix G* ab - G a^dagger b^dagger."""
    G = complex(G)
    a = annihilation(space.n_c_cut + 1)
    b = annihilation(space.n_r_cut + 1)
    ab = np.kron(a, b)
    return G.conjugate() * ab - G * ab.conj().T


@lru_cache(maxsize=32)
def _squeeze_factor(space, G, tol):
    factor = expm_local(two_mode_generator(space, G), tol, 'S(G)')
    factor.setflags(write=False)
    return factor


def squeeze_matrix(space, G, check_tail=True):
    """
    The motional matrix of S(G) = exp(G* ab - G a^dagger b^dagger), built
    from the truncated generator so it is unitary on the truncated space.
    """
    G = complex(G)
    factor = _squeeze_factor(space, G, settings.EXPM_TOLERANCE)
    if check_tail:
        check_tail_mass(
            space, factor[:, 0].reshape(space.n_c_cut + 1, space.n_r_cut + 1),
            'S(%s)|00>' % _format_complex(G))
    return factor


def two_mode_squeeze(space, G, check_tail=True):
    """S(G) on the composite space; raises ``TruncationError`` when S(G)|00>
    leaks past the tail-mass budget."""
    return Operator.from_motional(space, squeeze_matrix(space, G, check_tail))


@lru_cache(maxsize=64)
def _displacement_factor(dim, beta, tol):
    a = annihilation(dim)
    factor = expm_local(beta * a.conj().T - beta.conjugate() * a, tol, 'D(beta)')
    factor.setflags(write=False)
    return factor


def displacement_matrix(space, mode, beta, check_tail=True):
    """The single-mode matrix of D(beta) = exp(beta a^dagger - beta* a)."""
    if mode not in constants.MOTIONAL_SUBSYSTEMS:
        raise ValueError(
            "`mode` must be one of %s. A value of %r was supplied." % (
                constants.MOTIONAL_SUBSYSTEMS, mode))
    beta = complex(beta)
    dim = space.cutoff_for(mode) + 1
    factor = _displacement_factor(dim, beta, settings.EXPM_TOLERANCE)
    if check_tail:
        check_mode_tail_mass(
            space, mode, factor[:, 0], 'D(%s)|0>' % _format_complex(beta))
    return factor


def displace(space, mode, beta, check_tail=True):
    factor = displacement_matrix(space, mode, beta, check_tail)
    if mode == constants.MODE_C:
        motional = np.kron(factor, np.eye(space.n_r_cut + 1))
    else:
        motional = np.kron(np.eye(space.n_c_cut + 1), factor)
    return Operator(space, [(INTERNAL_IDENTITY, motional)])


def check_mode_tail_mass(space, mode, column, what):
    """Tail check for a single-mode amplitude column, the other mode in its
    vacuum."""
    padded = np.zeros((space.n_c_cut + 1, space.n_r_cut + 1), dtype=complex)
    if mode == constants.MODE_C:
        padded[:, 0] = column
    else:
        padded[0, :] = column
    return check_tail_mass(
        space, padded, '%s on the %s' % (what, constants.MODE_LABELS[mode]))


def check_tail_mass(space, amplitudes, what):
    # analysis depends on this module, so import at call time
    from ionsqueeze.analysis import motional_tail_mass
    budget = settings.TAIL_MASS_BUDGET
    mass = motional_tail_mass(amplitudes, settings.TAIL_MASS_MARGIN)
    if mass > budget:
        raise TruncationError(
            '%s leaks past the Fock cutoffs %s; raise the cutoffs or reduce '
            'the parameter' % (what, space.cutoffs),
            tolerance=budget, value=mass)
    logger.debug('Tail mass of %s: %.3e', what, mass)
    return mass


def _format_complex(value):
    return '%.6g%+.6gj' % (value.real, value.imag)


# ---------------------------------------------------------------------------
# Analytic expansions
# ---------------------------------------------------------------------------

def tmsv_amplitudes(G_applied, cutoff):
    """
    Coefficients c_n of |n, n> in S(G_applied)|00>: with
    G_applied = r e^{i theta}, c_n = sech(r) (-e^{i theta} tanh r)^n.
    """
    if cutoff < 1:
        raise ValueError('`cutoff` must be at least 1')
    G_applied = complex(G_applied)
    r = abs(G_applied)
    theta = cmath.phase(G_applied)
    ratio = -cmath.exp(1j * theta) * math.tanh(r)
    return (ratio ** np.arange(cutoff + 1)) / math.cosh(r)


def coherent_amplitudes(beta, cutoff):
    """Fock coefficients of D(beta)|0> = e^{-|beta|^2/2} beta^n / sqrt(n!)."""
    beta = complex(beta)
    amplitudes = np.empty(cutoff + 1, dtype=complex)
    amplitudes[0] = math.exp(-abs(beta) ** 2 / 2)
    for n in range(1, cutoff + 1):
        amplitudes[n] = amplitudes[n - 1] * beta / math.sqrt(n)
    return amplitudes


def tmsv_state_matrix(space, G_applied):
    """The analytic S(G_applied)|00> as an (n_c_cut+1, n_r_cut+1) matrix."""
    size = min(space.n_c_cut, space.n_r_cut)
    matrix = np.zeros((space.n_c_cut + 1, space.n_r_cut + 1), dtype=complex)
    matrix[np.diag_indices(size + 1)] = tmsv_amplitudes(G_applied, size)
    return matrix


SELF_TEST_TOLERANCE = 1e-8


@lru_cache(maxsize=None)
def tmsv_self_test(cutoff=24):
    """
    Anchor the analytic TMSV convention to S(G) as defined here: compare
    ``tmsv_amplitudes`` with the exponential of the truncated generator for
    a few phases. Raises ``NumericalGuardError`` on disagreement.
    """
    from ionsqueeze.hilbert import make_space
    space = make_space(cutoff, cutoff)
    worst = 0.0
    for G in (0.5 * cmath.exp(-0.5j * math.pi), 0.5, 0.4 * cmath.exp(1.1j)):
        computed = squeeze_matrix(space, G, check_tail=False)[:, 0]
        expected = tmsv_state_matrix(space, G).reshape(-1)
        worst = max(worst, max_abs(computed - expected))
    if worst > SELF_TEST_TOLERANCE:
        raise NumericalGuardError(
            'The analytic two-mode squeezed vacuum expansion does not match '
            'S(G)|00>', module='operators', guard='tmsv-convention',
            tolerance=SELF_TEST_TOLERANCE, value=worst)
    logger.info(
        'TMSV convention anchored: S(re^{i theta})|00> = sech r sum_n '
        '(-e^{i theta} tanh r)^n |n,n> (max deviation %.2e)', worst)
    return {
        'convention': 'sech(r) * (-exp(i*theta) * tanh(r))**n',
        'max_deviation': worst,
        'tolerance': SELF_TEST_TOLERANCE,
    }
