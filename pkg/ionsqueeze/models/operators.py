from functools import cached_property

import numpy as np

from ionsqueeze.errors import DimensionMismatchError, SpaceMismatchError

# Beyond this many Kronecker terms an operator is folded into its 4x4 grid of
# motional blocks, which bounds the term count at 16.
MAX_TERMS = 16

INTERNAL_IDENTITY = np.eye(4, dtype=complex)
INTERNAL_IDENTITY.setflags(write=False)


def elementary_unit(i, j):
    unit = np.zeros((4, 4), dtype=complex)
    unit[i, j] = 1.0
    return unit


def _frozen(array, shape, what):
    array = np.array(array, dtype=complex)
    if array.shape != shape:
        raise DimensionMismatchError(what, shape, array.shape)
    array.setflags(write=False)
    return array


class Operator:
    """
    A linear operator on the composite space of ``space``, held as a sum of
    dense Kronecker terms ``internal (x) motional``, where ``internal`` acts
    on ion1 (x) ion2 (4x4) and ``motional`` on mode_c (x) mode_r. A motional
    factor of ``None`` stands for the identity.

    Every operator in this package has that shape, and keeping the factors
    apart lets products, adjoints and state updates run on the motional
    dimension instead of the full composite one. ``matrix`` materializes
    the dense composite matrix when it is really needed.
    """

    def __init__(self, space, terms=(), matrix=None):
        self.space = space
        dm = space.motional_dimension
        if matrix is not None:
            matrix = _frozen(
                matrix, (space.dimension, space.dimension), 'The matrix')
            terms = _terms_from_matrix(matrix, dm)
        else:
            terms = [
                (
                    _frozen(a, (4, 4), 'The internal factor'),
                    None if m is None else _frozen(
                        m, (dm, dm), 'The motional factor'),
                )
                for a, m in terms
            ]
        self.terms = tuple(_compact(terms, dm))

    @classmethod
    def _from_terms(cls, space, terms):
        # trusted path: factors are already frozen complex arrays
        instance = cls.__new__(cls)
        instance.space = space
        instance.terms = tuple(_compact(terms, space.motional_dimension))
        return instance

    # ------------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------------

    @classmethod
    def identity(cls, space):
        return cls._from_terms(space, [(INTERNAL_IDENTITY, None)])

    @classmethod
    def zero(cls, space):
        return cls._from_terms(space, [])

    @classmethod
    def from_internal(cls, space, internal):
        return cls(space, [(internal, None)])

    @classmethod
    def from_motional(cls, space, motional):
        return cls(space, [(INTERNAL_IDENTITY, motional)])

    def __repr__(self):
        return '<Operator on %r, %d Kronecker term%s>' % (
            self.space, len(self.terms), '' if len(self.terms) == 1 else 's')

    # ------------------------------------------------------------------------
    # Dense views
    # ------------------------------------------------------------------------

    @cached_property
    def matrix(self):
        dm = self.space.motional_dimension
        result = np.zeros(
            (self.space.dimension, self.space.dimension), dtype=complex)
        for a, m in self.terms:
            result += np.kron(a, np.eye(dm) if m is None else m)
        result.setflags(write=False)
        return result

    def iter_blocks(self):
        """
        Yield ``(i, j, block)`` for the 16 motional blocks of the composite
        matrix, one block at a time.
        """
        dm = self.space.motional_dimension
        for i in range(4):
            for j in range(4):
                block = np.zeros((dm, dm), dtype=complex)
                for a, m in self.terms:
                    if a[i, j] == 0:
                        continue
                    if m is None:
                        block[np.diag_indices(dm)] += a[i, j]
                    else:
                        block += a[i, j] * m
                yield i, j, block

    def max_abs(self):
        """The max-norm of the composite matrix."""
        if not self.terms:
            return 0.0
        return max(float(np.max(np.abs(block)))
                   for _, _, block in self.iter_blocks())

    # ------------------------------------------------------------------------
    # Algebra
    # ------------------------------------------------------------------------

    def check_compatible(self, other):
        if self.space != other.space:
            raise SpaceMismatchError(self.space, other.space)

    def dagger(self):
        return self._from_terms(self.space, [
            (_freeze(a.conj().T), None if m is None else _freeze(m.conj().T))
            for a, m in self.terms
        ])

    def __matmul__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        self.check_compatible(other)
        terms = []
        for a, m in self.terms:
            for b, n in other.terms:
                ab = a @ b
                if not np.any(ab):
                    continue
                if m is None:
                    mn = n
                elif n is None:
                    mn = m
                else:
                    mn = _freeze(m @ n)
                terms.append((_freeze(ab), mn))
        return self._from_terms(self.space, terms)

    def __add__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        self.check_compatible(other)
        return self._from_terms(self.space, self.terms + other.terms)

    def __sub__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        scalar = complex(scalar)
        return self._from_terms(self.space, [
            (_freeze(scalar * a), m) for a, m in self.terms])

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = self.identity(self.space)
        for _ in range(exponent):
            result = result @ self
        return result

    # ------------------------------------------------------------------------
    # Action on states
    # ------------------------------------------------------------------------

    def apply_to_matrix(self, psi):
        """
        Apply to a (4, motional dimension) amplitude matrix, or to a stack of
        them with shape (..., 4, motional dimension).
        """
        result = np.zeros_like(psi, dtype=complex)
        for a, m in self.terms:
            part = np.matmul(a, psi)
            if m is not None:
                part = np.matmul(part, m.T)
            result += part
        return result

    # ------------------------------------------------------------------------
    # Diagnostics
    # ------------------------------------------------------------------------

    def distance(self, other):
        return (self - other).max_abs()

    def unitarity_defect(self):
        """max |U^dagger U - I| over all matrix entries."""
        return (self.dagger() @ self).distance(self.identity(self.space))

    def hermiticity_defect(self):
        return self.distance(self.dagger())

    def antihermiticity_defect(self):
        return (self + self.dagger()).max_abs()

    def commutator_defect(self, other):
        return ((self @ other) - (other @ self)).max_abs()


def _freeze(array):
    array.setflags(write=False)
    return array


def _terms_from_matrix(matrix, dm):
    blocks = matrix.reshape(4, dm, 4, dm).transpose(0, 2, 1, 3)
    terms = []
    for i in range(4):
        for j in range(4):
            block = blocks[i, j]
            if np.any(block):
                terms.append((
                    _freeze(elementary_unit(i, j)),
                    _freeze(np.ascontiguousarray(block))))
    return terms


def _compact(terms, dm):
    """
    Merge terms sharing an internal factor, merge identity-motional terms and
    fold into block form past ``MAX_TERMS``.
    """
    grouped = {}
    order = []
    for a, m in terms:
        if not np.any(a) or (m is not None and not np.any(m)):
            continue
        key = a.tobytes()
        if key not in grouped:
            grouped[key] = [a, [m]]
            order.append(key)
        else:
            grouped[key][1].append(m)

    merged = []
    identity_internal = None
    for key in order:
        a, factors = grouped[key]
        if len(factors) == 1:
            m = factors[0]
        else:
            m = np.zeros((dm, dm), dtype=complex)
            for factor in factors:
                if factor is None:
                    m[np.diag_indices(dm)] += 1.0
                else:
                    m += factor
            m = _freeze(m)
        if m is None:
            identity_internal = a if identity_internal is None else \
                identity_internal + a
        else:
            merged.append((a, m))
    if identity_internal is not None and np.any(identity_internal):
        merged.append((_freeze(np.array(identity_internal)), None))

    if len(merged) <= MAX_TERMS:
        return merged

    blocks = {}
    for a, m in merged:
        for i, j in zip(*np.nonzero(a)):
            block = blocks.setdefault(
                (i, j), np.zeros((dm, dm), dtype=complex))
            if m is None:
                block[np.diag_indices(dm)] += a[i, j]
            else:
                block += a[i, j] * m
    return [
        (_freeze(elementary_unit(i, j)), _freeze(block))
        for (i, j), block in sorted(blocks.items()) if np.any(block)
    ]
