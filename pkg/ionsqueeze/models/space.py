from functools import cached_property

import numpy as np

from ionsqueeze.conf import constants
from ionsqueeze.errors import FockRangeError, InvalidCutoffError


class SpaceDescriptor:
    """
    Dimensions and ordering of the composite space
    ion1 (x) ion2 (x) mode_c (x) mode_r.

    Instances are immutable and compare equal when their cutoffs match.
    Basis indices are row-major in ``constants.SUBSYSTEMS`` order, with
    internal components encoded as |e> -> 0 and |g> -> 1.
    """

    def __init__(self, n_c_cut, n_r_cut):
        for name, value in (('n_c_cut', n_c_cut), ('n_r_cut', n_r_cut)):
            if isinstance(value, bool) or not isinstance(
                value, (int, np.integer)
            ) or value < 1:
                raise InvalidCutoffError(name, value)
        object.__setattr__(self, 'n_c_cut', int(n_c_cut))
        object.__setattr__(self, 'n_r_cut', int(n_r_cut))

    def __setattr__(self, name, value):
        raise AttributeError('SpaceDescriptor instances are immutable')

    def __eq__(self, other):
        if not isinstance(other, SpaceDescriptor):
            return NotImplemented
        return self.cutoffs == other.cutoffs

    def __hash__(self):
        return hash(('SpaceDescriptor', ) + self.cutoffs)

    def __repr__(self):
        return 'SpaceDescriptor(n_c_cut=%d, n_r_cut=%d)' % self.cutoffs

    @property
    def cutoffs(self):
        return (self.n_c_cut, self.n_r_cut)

    @cached_property
    def subsystem_dims(self):
        return {
            constants.ION1: 2,
            constants.ION2: 2,
            constants.MODE_C: self.n_c_cut + 1,
            constants.MODE_R: self.n_r_cut + 1,
        }

    @cached_property
    def shape(self):
        return tuple(self.subsystem_dims[s] for s in constants.SUBSYSTEMS)

    @cached_property
    def dimension(self):
        return int(np.prod(self.shape))

    @property
    def internal_dimension(self):
        return 4

    @cached_property
    def motional_dimension(self):
        return (self.n_c_cut + 1) * (self.n_r_cut + 1)

    def dims(self, subsystems):
        return tuple(self.subsystem_dims[s] for s in subsystems)

    def dimension_of(self, subsystems):
        return int(np.prod(self.dims(subsystems)))

    def cutoff_for(self, mode):
        return self.n_c_cut if mode == constants.MODE_C else self.n_r_cut

    def check_fock_index(self, mode, n):
        cutoff = self.cutoff_for(mode)
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or \
                not 0 <= n <= cutoff:
            raise FockRangeError(constants.MODE_LABELS[mode], n, cutoff)

    def index(self, s1, s2, n_c, n_r):
        """
        Return the basis index of |s1, s2, n_c, n_r>, where ``s1`` and ``s2``
        are 'e' or 'g'.
        """
        self.check_fock_index(constants.MODE_C, n_c)
        self.check_fock_index(constants.MODE_R, n_r)
        return int(np.ravel_multi_index(
            (internal_component(s1), internal_component(s2), n_c, n_r),
            self.shape))

    def labels(self, index):
        """The inverse of ``index()``."""
        i1, i2, n_c, n_r = np.unravel_index(index, self.shape)
        return (
            internal_label(i1), internal_label(i2), int(n_c), int(n_r))

    def basis_tuples(self):
        for index in range(self.dimension):
            yield self.labels(index)


def internal_component(label):
    try:
        return constants.INTERNAL_INDEX[label]
    except (KeyError, TypeError):
        raise ValueError(
            "Internal states are labelled 'e' or 'g'. A value of %r was "
            "supplied." % (label, ))


def internal_label(component):
    return constants.EXCITED if int(component) == 0 else constants.GROUND
