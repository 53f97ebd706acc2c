import numpy as np

from ionsqueeze.conf import constants, settings
from ionsqueeze.errors import (
    DimensionMismatchError, NormalizationError, NotHermitianError,
    SpaceMismatchError,
)


class StateVector:
    """
    A complex amplitude vector over the basis of ``space`` restricted to
    ``subsystems`` (all four by default; ``constants.MOTIONAL_SUBSYSTEMS``
    for motional states). Amplitudes are copied and frozen on construction,
    so operations never mutate their inputs.
    """

    def __init__(self, space, amplitudes, subsystems=constants.SUBSYSTEMS):
        subsystems = tuple(subsystems)
        unknown = set(subsystems) - set(constants.SUBSYSTEMS)
        if unknown:
            raise ValueError('Unknown subsystems: %s' % sorted(unknown))
        # keep the declared order whatever order was supplied
        subsystems = tuple(s for s in constants.SUBSYSTEMS if s in subsystems)
        amplitudes = np.array(amplitudes, dtype=complex).reshape(-1)
        expected = space.dimension_of(subsystems)
        if amplitudes.shape != (expected, ):
            raise DimensionMismatchError(
                'The amplitude vector', (expected, ), amplitudes.shape)
        amplitudes.setflags(write=False)
        self.space = space
        self.subsystems = subsystems
        self.amplitudes = amplitudes

    def __repr__(self):
        return '<StateVector %s on %r, norm^2=%.12g>' % (
            '(x)'.join(self.subsystems), self.space, self.squared_norm)

    @property
    def dims(self):
        return self.space.dims(self.subsystems)

    @property
    def is_composite(self):
        return self.subsystems == constants.SUBSYSTEMS

    @property
    def is_motional(self):
        return self.subsystems == constants.MOTIONAL_SUBSYSTEMS

    @property
    def squared_norm(self):
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    @property
    def norm(self):
        return float(np.sqrt(self.squared_norm))

    def is_normalized(self, tol=None):
        if tol is None:
            tol = settings.NORMALIZATION_TOLERANCE
        return abs(self.squared_norm - 1.0) <= tol

    def check_normalized(self, tol=None, what='The state'):
        if tol is None:
            tol = settings.NORMALIZATION_TOLERANCE
        deviation = abs(self.squared_norm - 1.0)
        if deviation > tol:
            raise NormalizationError(
                '%s is expected to be normalized' % what,
                tolerance=tol, value=deviation)

    def normalized(self):
        norm = self.norm
        if norm == 0.0:
            raise NormalizationError(
                'The zero vector cannot be normalized', value=0.0)
        return self.with_amplitudes(self.amplitudes / norm)

    def with_amplitudes(self, amplitudes):
        return self.__class__(self.space, amplitudes, self.subsystems)

    def tensor(self):
        """The amplitudes reshaped to one axis per subsystem."""
        return self.amplitudes.reshape(self.dims)

    def as_matrix(self):
        """
        For composite states, the (4, motional dimension) amplitude matrix
        split across the internal | motional cut. For motional states, the
        (n_c_cut + 1, n_r_cut + 1) amplitude matrix.
        """
        if self.is_composite:
            return self.amplitudes.reshape(4, self.space.motional_dimension)
        if self.is_motional:
            return self.amplitudes.reshape(self.dims)
        raise ValueError(
            'as_matrix() is only defined for composite and motional states')

    def check_compatible(self, other):
        if not isinstance(other, StateVector):
            raise TypeError('Expected a StateVector, got %r' % (other, ))
        if self.space != other.space or self.subsystems != other.subsystems:
            raise SpaceMismatchError(
                '%r%s' % (self.space, self.subsystems),
                '%r%s' % (other.space, other.subsystems))

    def __add__(self, other):
        self.check_compatible(other)
        return self.with_amplitudes(self.amplitudes + other.amplitudes)

    def __sub__(self, other):
        self.check_compatible(other)
        return self.with_amplitudes(self.amplitudes - other.amplitudes)

    def __mul__(self, scalar):
        return self.with_amplitudes(self.amplitudes * complex(scalar))

    __rmul__ = __mul__


class DensityMatrix:
    """
    A reduced density matrix over ``subsystems`` (labels kept in declared
    order). Construction validates Hermiticity, unit trace and a
    non-negative spectrum.
    """

    def __init__(self, subsystems, dims, matrix, check=True):
        matrix = np.array(matrix, dtype=complex)
        size = int(np.prod(dims))
        if matrix.shape != (size, size):
            raise DimensionMismatchError(
                'The density matrix', (size, size), matrix.shape)
        matrix.setflags(write=False)
        self.subsystems = tuple(subsystems)
        self.dims = tuple(dims)
        self.matrix = matrix
        if check:
            self.validate()

    def __repr__(self):
        return '<DensityMatrix %s purity=%.12g>' % (
            '(x)'.join(self.subsystems), self.purity)

    def validate(self, trace_tol=1e-10, hermitian_tol=None,
                 eigenvalue_tol=1e-10):
        if hermitian_tol is None:
            hermitian_tol = settings.HERMITICITY_TOLERANCE
        asymmetry = float(np.max(np.abs(self.matrix - self.matrix.conj().T)))
        if asymmetry > hermitian_tol:
            raise NotHermitianError(
                'The reduced density matrix is not Hermitian',
                tolerance=hermitian_tol, value=asymmetry)
        trace_error = abs(self.trace - 1.0)
        if trace_error > trace_tol:
            raise NormalizationError(
                'The reduced density matrix does not have unit trace',
                tolerance=trace_tol, value=trace_error)
        smallest = float(np.min(self.eigenvalues))
        if smallest < -eigenvalue_tol:
            raise NotHermitianError(
                'The reduced density matrix has a negative eigenvalue',
                guard='positivity', tolerance=eigenvalue_tol, value=smallest)

    @property
    def trace(self):
        return float(np.trace(self.matrix).real)

    @property
    def eigenvalues(self):
        return np.linalg.eigvalsh(self.matrix)

    @property
    def purity(self):
        # Tr(rho^2) for Hermitian rho
        return float(np.sum(np.abs(self.matrix) ** 2))
