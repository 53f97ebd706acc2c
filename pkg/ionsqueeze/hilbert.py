"""
Composite-space plumbing: basis states, embeddings of local operators, state
algebra, projection onto internal configurations and partial traces.
"""
import logging
from collections import namedtuple

import numpy as np

from ionsqueeze.conf import constants, settings
from ionsqueeze.errors import DimensionMismatchError, SpaceMismatchError
from ionsqueeze.models.operators import INTERNAL_IDENTITY, Operator
from ionsqueeze.models.space import SpaceDescriptor, internal_component
from ionsqueeze.models.states import DensityMatrix, StateVector

logger = logging.getLogger(__name__)

Factorization = namedtuple('Factorization', ('internal', 'motional', 'purity'))


def make_space(n_c_cut, n_r_cut):
    return SpaceDescriptor(n_c_cut, n_r_cut)


def basis_state(space, s1, s2, n_c, n_r):
    amplitudes = np.zeros(space.dimension, dtype=complex)
    amplitudes[space.index(s1, s2, n_c, n_r)] = 1.0
    return StateVector(space, amplitudes)


def internal_state(space, amplitudes):
    """A state of ion1 (x) ion2 from its four amplitudes (ee, eg, ge, gg)."""
    return StateVector(space, amplitudes, constants.INTERNAL_SUBSYSTEMS)


def motional_state(space, amplitudes):
    """
    A state of mode_c (x) mode_r. ``amplitudes`` may be flat or shaped
    (n_c_cut + 1, n_r_cut + 1).
    """
    return StateVector(space, amplitudes, constants.MOTIONAL_SUBSYSTEMS)


def motional_vacuum(space):
    amplitudes = np.zeros(space.motional_dimension, dtype=complex)
    amplitudes[0] = 1.0
    return motional_state(space, amplitudes)


def product_state(internal, motional):
    """The composite state internal (x) motional."""
    if internal.space != motional.space:
        raise SpaceMismatchError(internal.space, motional.space)
    if internal.subsystems != constants.INTERNAL_SUBSYSTEMS or \
            motional.subsystems != constants.MOTIONAL_SUBSYSTEMS:
        raise ValueError(
            'product_state() expects an internal and a motional state')
    return StateVector(
        internal.space, np.kron(internal.amplitudes, motional.amplitudes))


def _embed_local(space, local_op, subsystem):
    dims = space.subsystem_dims
    if subsystem == constants.ION1:
        return np.kron(local_op, np.eye(2)), None
    if subsystem == constants.ION2:
        return np.kron(np.eye(2), local_op), None
    if subsystem == constants.MODE_C:
        return INTERNAL_IDENTITY, np.kron(
            local_op, np.eye(dims[constants.MODE_R]))
    if subsystem == constants.MODE_R:
        return INTERNAL_IDENTITY, np.kron(
            np.eye(dims[constants.MODE_C]), local_op)
    if subsystem == constants.INTERNAL_SUBSYSTEMS:
        return local_op, None
    if subsystem == constants.MOTIONAL_SUBSYSTEMS:
        return INTERNAL_IDENTITY, local_op
    raise ValueError(
        "`subsystem` must be one of %s, or the internal or motional pair. "
        "A value of %r was supplied." % (constants.SUBSYSTEMS, subsystem))


def tensor_embed(space, local_op, subsystem):
    """
    Embed ``local_op`` acting on ``subsystem`` into the composite space,
    with the identity on every other factor.

    Parameters
    ----------
    space : SpaceDescriptor
    local_op : array_like
        Square matrix with the dimension of ``subsystem``.
    subsystem : str or tuple
        One of ``constants.SUBSYSTEMS``, or ``constants.INTERNAL_SUBSYSTEMS``
        / ``constants.MOTIONAL_SUBSYSTEMS`` for the joint internal or
        motional factor.

    Returns
    -------
    Operator
    """
    if isinstance(subsystem, list):
        subsystem = tuple(subsystem)
    local_op = np.asarray(local_op, dtype=complex)
    if isinstance(subsystem, tuple):
        size = space.dimension_of(subsystem) if set(subsystem) <= set(
            constants.SUBSYSTEMS) else None
    else:
        size = space.subsystem_dims.get(subsystem)
    if size is not None and local_op.shape != (size, size):
        raise DimensionMismatchError(
            'The local operator for %s' % (subsystem, ), (size, size),
            local_op.shape)
    internal, motional = _embed_local(space, local_op, subsystem)
    if motional is None:
        return Operator.from_internal(space, internal)
    return Operator(space, [(internal, motional)])


def apply(op, state):
    if op.space != state.space:
        raise SpaceMismatchError(op.space, state.space)
    if not state.is_composite:
        raise ValueError('Operators act on composite states only')
    return state.with_amplitudes(
        op.apply_to_matrix(state.as_matrix()).reshape(-1))


def inner(a, b):
    """<a|b>, conjugate-linear in ``a``."""
    a.check_compatible(b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def norm(state):
    return state.norm


def project_internal(state, s1, s2):
    """
    Project onto the internal configuration |s1, s2>, returning the
    unnormalized projected state and its probability.
    """
    state.check_normalized(what='The state to project')
    row = 2 * internal_component(s1) + internal_component(s2)
    psi = state.as_matrix()
    projected = np.zeros_like(psi)
    projected[row] = psi[row]
    probability = float(np.vdot(psi[row], psi[row]).real)
    logger.debug(
        'Projection onto |%s%s> has probability %.12g', s1, s2, probability)
    return (
        state.with_amplitudes(projected.reshape(-1)),
        min(max(probability, 0.0), 1.0),
    )


def partial_trace(state, keep):
    """
    Reduced density matrix of a pure ``state`` over the subsystems in
    ``keep`` (returned in declared order).
    """
    keep = set(keep)
    if not keep:
        raise ValueError('partial_trace() needs at least one subsystem to keep')
    unknown = keep - set(state.subsystems)
    if unknown:
        raise ValueError(
            'Cannot keep %s: the state is defined on %s' % (
                sorted(unknown), state.subsystems))
    state.check_normalized(
        tol=max(settings.NORMALIZATION_TOLERANCE, 1e-10),
        what='The state to trace')
    kept = [i for i, s in enumerate(state.subsystems) if s in keep]
    traced = [i for i, s in enumerate(state.subsystems) if s not in keep]
    tensor = state.tensor()
    dims = state.dims
    kept_dim = int(np.prod([dims[i] for i in kept]))
    psi = np.transpose(tensor, kept + traced).reshape(kept_dim, -1)
    rho = psi @ psi.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(
        [state.subsystems[i] for i in kept], [dims[i] for i in kept], rho)


def factorize(state):
    """
    Schmidt-decompose a composite state across the internal | motional cut.

    Returns the dominant internal factor (normalized, phase fixed so its
    largest component is real and positive), the matching motional factor
    (which carries the norm of the rank-one part) and the purity of the
    reduced state. Purity 1 means the two degrees of freedom are unentangled.
    """
    if not state.is_composite:
        raise ValueError('factorize() expects a composite state')
    psi = state.as_matrix()
    u, s, vh = np.linalg.svd(psi, full_matrices=False)
    weights = s ** 2
    total = float(np.sum(weights))
    if total == 0.0:
        raise ValueError('Cannot factorize the zero vector')
    purity = float(np.sum(weights ** 2) / total ** 2)
    internal = u[:, 0]
    pivot = internal[np.argmax(np.abs(internal))]
    phase = pivot / abs(pivot)
    internal = internal / phase
    motional = s[0] * phase * vh[0]
    return Factorization(
        internal_state(state.space, internal),
        motional_state(state.space, motional),
        purity,
    )
