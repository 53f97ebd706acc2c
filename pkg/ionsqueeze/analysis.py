"""
State metrics: fidelity, quadrature moments and covariance, EPR variances,
squeezing in dB, entanglement of the two modes and the truncation tail.

Metrics on motional quantities accept either a motional ``StateVector`` or a
composite one; a composite state is first factorized across the
internal | motional cut and rejected with ``ImpureStateError`` when the two
degrees of freedom are entangled.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from ionsqueeze.conf import constants, settings
from ionsqueeze.errors import (
    ImpureStateError, NumericalGuardError, TruncationError,
)
from ionsqueeze.hilbert import factorize
from ionsqueeze.operators import annihilation
from ionsqueeze.utils.linalg import max_abs

logger = logging.getLogger(__name__)

VACUUM_VARIANCE = 0.5

QUADRATURE_LABELS = ('X_c', 'P_c', 'X_r', 'P_r')


# ---------------------------------------------------------------------------
# Tail mass
# ---------------------------------------------------------------------------

def _tail_count(dim, margin):
    return max(1, int(math.ceil(margin * dim)))


def motional_tail_mass(amplitudes, margin=None):
    """
    Population of an (n_c_cut + 1, n_r_cut + 1) amplitude matrix in the top
    ``margin`` fraction of Fock levels of either mode (each level counted
    once).
    """
    if margin is None:
        margin = settings.TAIL_MASS_MARGIN
    if not 0 < margin < 1:
        raise ValueError(
            '`margin` must lie strictly between 0 and 1. A value of %r was '
            'supplied.' % (margin, ))
    populations = np.abs(np.asarray(amplitudes)) ** 2
    dc, dr = populations.shape[-2:]
    mask = np.zeros((dc, dr), dtype=bool)
    mask[dc - _tail_count(dc, margin):, :] = True
    mask[:, dr - _tail_count(dr, margin):] = True
    return float(np.sum(populations[..., mask]))


def tail_mass(state, margin=None):
    """Tail mass of a motional or composite state (summed over internal
    configurations for the latter)."""
    if state.is_composite:
        space = state.space
        amplitudes = state.amplitudes.reshape(
            4, space.n_c_cut + 1, space.n_r_cut + 1)
    else:
        amplitudes = _motional_matrix(state)
    return motional_tail_mass(amplitudes, margin)


def check_tail_budget(state, what='The state'):
    budget = settings.TAIL_MASS_BUDGET
    mass = tail_mass(state)
    if mass > budget:
        raise TruncationError(
            '%s has too much population near the Fock cutoffs for its '
            'moments to be reliable' % what,
            module='analysis', tolerance=budget, value=mass)
    return mass


# ---------------------------------------------------------------------------
# Motional factors
# ---------------------------------------------------------------------------

def _motional_matrix(state):
    if state.is_motional:
        return state.as_matrix()
    raise ValueError(
        'Expected a motional state, got a state on %s' % (state.subsystems, ))


def motional_part(state):
    """
    The normalized motional factor of ``state``. Composite states must be
    products to within ``FACTORIZATION_TOLERANCE``.
    """
    if state.is_motional:
        return state.normalized()
    factors = factorize(state)
    impurity = 1.0 - factors.purity
    if impurity > settings.FACTORIZATION_TOLERANCE:
        raise ImpureStateError(
            'The motional state is entangled with the internal states',
            tolerance=settings.FACTORIZATION_TOLERANCE, value=impurity)
    return factors.motional.normalized()


# ---------------------------------------------------------------------------
# Fidelity
# ---------------------------------------------------------------------------

def fidelity(a, b):
    """|<a|b>|^2 for two normalized states on the same space."""
    a.check_compatible(b)
    tol = max(settings.NORMALIZATION_TOLERANCE, 1e-10)
    a.check_normalized(tol, 'The first state')
    b.check_normalized(tol, 'The second state')
    overlap = abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2
    return float(min(max(overlap, 0.0), 1.0))


# ---------------------------------------------------------------------------
# Quadratures and covariance
# ---------------------------------------------------------------------------

def quadrature_matrices(dim):
    """(X, P) with X = (a + a^dagger)/sqrt(2), P = (a - a^dagger)/(i sqrt(2))."""
    a = annihilation(dim)
    ad = a.conj().T
    return (a + ad) / math.sqrt(2), (a - ad) / (1j * math.sqrt(2))


def _apply_local(psi, mode, local_op):
    if mode == constants.MODE_C:
        return local_op @ psi
    return psi @ local_op.T


def mode_expectation(state, mode, local_op):
    """<local_op> on ``mode`` of the motional factor of ``state``."""
    psi = motional_part(state).as_matrix()
    return complex(np.vdot(psi, _apply_local(psi, mode, local_op)))


def mean_annihilation(state, mode):
    """<a> for ``mode_c`` or <b> for ``mode_r``."""
    dim = state.space.cutoff_for(mode) + 1
    return mode_expectation(state, mode, annihilation(dim))


class CovarianceMatrix:
    """
    Symmetrized second central moments of (X_c, P_c, X_r, P_r), with the
    first moments alongside.
    """

    def __init__(self, matrix, means):
        matrix = np.array(matrix, dtype=float)
        if matrix.shape != (4, 4):
            raise ValueError('A covariance matrix is 4x4')
        self.matrix = 0.5 * (matrix + matrix.T)
        self.means = np.array(means, dtype=float)
        self.matrix.setflags(write=False)
        self.means.setflags(write=False)

    def __repr__(self):
        return '<CovarianceMatrix diag=%s>' % (
            np.array2string(np.diag(self.matrix), precision=6), )

    def variance(self, label):
        index = QUADRATURE_LABELS.index(label)
        return float(self.matrix[index, index])

    def combination_variance(self, vector):
        vector = np.asarray(vector, dtype=float)
        return float(vector @ self.matrix @ vector)

    def symplectic_eigenvalues(self):
        """Symplectic eigenvalues (ascending) in units where vacuum is 1/2."""
        omega = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))
        values = np.sort(np.abs(np.linalg.eigvals(1j * omega @ self.matrix)))
        return values[::2]

    def is_physical(self, tol=None):
        if tol is None:
            tol = settings.UNCERTAINTY_TOLERANCE
        return bool(
            np.min(self.symplectic_eigenvalues()) >= VACUUM_VARIANCE - tol)

    def as_dict(self):
        return {
            'labels': list(QUADRATURE_LABELS),
            'matrix': self.matrix.tolist(),
            'means': self.means.tolist(),
        }


def covariance(state):
    """
    The ``CovarianceMatrix`` of the motional state. Raises
    ``TruncationError`` if the state's tail mass exceeds the budget and
    ``NumericalGuardError`` if the moments violate the uncertainty bound.
    """
    motional = motional_part(state)
    check_tail_budget(motional, 'The state whose moments are requested')
    psi = motional.as_matrix()
    space = motional.space
    vectors = []
    for mode in constants.MOTIONAL_SUBSYSTEMS:
        for quadrature in quadrature_matrices(space.cutoff_for(mode) + 1):
            vectors.append(_apply_local(psi, mode, quadrature).reshape(-1))
    flat = psi.reshape(-1)
    means = np.array([np.vdot(flat, v).real for v in vectors])
    gram = np.array([[np.vdot(u, v).real for v in vectors] for u in vectors])
    result = CovarianceMatrix(gram - np.outer(means, means), means)
    tol = settings.UNCERTAINTY_TOLERANCE
    smallest = float(np.min(result.symplectic_eigenvalues()))
    if smallest < VACUUM_VARIANCE - tol:
        raise NumericalGuardError(
            'The covariance matrix violates the uncertainty bound',
            module='analysis', guard='uncertainty',
            tolerance=VACUUM_VARIANCE - tol, value=smallest)
    return result


# ---------------------------------------------------------------------------
# EPR variances
# ---------------------------------------------------------------------------

def _combination_vectors(phi, offset):
    """
    Coefficients of (X_c(phi + offset) -+ X_r(-phi))/sqrt(2) over
    (X_c, P_c, X_r, P_r), where X(theta) = X cos(theta) + P sin(theta).
    """
    c_angle = phi + offset
    c_part = np.array([math.cos(c_angle), math.sin(c_angle), 0.0, 0.0])
    r_part = np.array([0.0, 0.0, math.cos(phi), -math.sin(phi)])
    root = math.sqrt(2)
    return (c_part - r_part) / root, (c_part + r_part) / root


def _epr_pair(cov, phi, offset):
    minus, plus = _combination_vectors(phi, offset)
    return cov.combination_variance(minus), cov.combination_variance(plus)


def epr_variance(state, phi, offset=0.0):
    """
    The variances of (X_c(phi) -+ X_r(-phi))/sqrt(2), with X(theta) the
    quadrature rotated by theta. ``offset`` adds a fixed rotation to the
    mode_c quadrature, which aligns the combination with a squeezing phase
    other than zero.

    Returns
    -------
    tuple
        ``(minus, plus)``. Both equal 1/2 for the vacuum.
    """
    return _epr_pair(covariance(state), phi, offset)


@dataclass(frozen=True)
class EPRResult:
    squeezed: float
    conjugate: float
    phi: float
    offset: float
    combination: str

    @property
    def product(self):
        return self.squeezed * self.conjugate

    @property
    def squeezing_db(self):
        return squeezing_db(self.squeezed)

    def as_dict(self):
        return {
            'squeezed_variance': self.squeezed,
            'conjugate_variance': self.conjugate,
            'product': self.product,
            'squeezing_db': self.squeezing_db,
            'phi': self.phi,
            'offset': self.offset,
            'combination': self.combination,
        }


def _minimize_angle(objective, centre, half_width, tol):
    found = minimize_scalar(
        objective, bounds=(centre - half_width, centre + half_width),
        method='bounded', options={'xatol': tol})
    if found.fun <= objective(centre):
        return float(found.x)
    return centre


def optimal_epr_variance(state, offset=None, grid=64):
    """
    The smallest EPR variance over the quadrature angle ``phi`` and, unless
    ``offset`` is fixed, the relative rotation between the two modes.

    A coarse grid locates the basin and bounded scalar minimization refines
    each angle to ``EPR_ANGLE_TOLERANCE``. The conjugate variance is the
    other sign combination at the same angles.
    """
    cov = covariance(state)
    tol = settings.EPR_ANGLE_TOLERANCE

    def best(phi, off):
        return min(_epr_pair(cov, phi, off))

    phis = np.linspace(0.0, math.pi, grid, endpoint=False)
    offsets = [offset] if offset is not None else \
        np.linspace(0.0, 2 * math.pi, 2 * grid, endpoint=False)
    _, phi, off = min(
        (best(p, o), float(p), float(o)) for o in offsets for p in phis)
    step = math.pi / grid
    for _ in range(2):
        if offset is None:
            off = _minimize_angle(lambda o: best(phi, o), off, step, tol)
        phi = _minimize_angle(lambda p: best(p, off), phi, step, tol)

    minus, plus = _epr_pair(cov, phi, off)
    if minus <= plus:
        result = EPRResult(minus, plus, phi, off, 'minus')
    else:
        result = EPRResult(plus, minus, phi, off, 'plus')
    logger.debug(
        'Optimal EPR variance %.9g at phi=%.6f, offset=%.6f (%s)',
        result.squeezed, phi, off, result.combination)
    return result


def squeezing_db(variance):
    """Squeezing below the vacuum level, -10 log10(variance / (1/2))."""
    if not variance > 0:
        raise ValueError(
            'Squeezing is only defined for a positive variance. A value of '
            '%r was supplied.' % (variance, ))
    return -10 * math.log10(variance / VACUUM_VARIANCE)


# ---------------------------------------------------------------------------
# Entanglement
# ---------------------------------------------------------------------------

def schmidt_spectrum(state):
    """Schmidt coefficients squared (descending) across mode_c | mode_r."""
    psi = motional_part(state).as_matrix()
    values = np.linalg.svd(psi, compute_uv=False) ** 2
    return values / np.sum(values)


def mode_entanglement_entropy(state):
    """Base-2 von Neumann entropy of the mode_c reduced state, in ebits."""
    spectrum = schmidt_spectrum(state)
    spectrum = spectrum[spectrum > 0]
    return float(max(-np.sum(spectrum * np.log2(spectrum)), 0.0))


def purity(density_matrix):
    return density_matrix.purity


def reduced_state_distance(first, second):
    """Max-norm distance between two density matrices on the same subsystems."""
    if first.subsystems != second.subsystems:
        raise ValueError('The density matrices live on different subsystems')
    return max_abs(first.matrix - second.matrix)
