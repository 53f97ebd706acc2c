import json
import os

import numpy as np

from ionsqueeze.hilbert import (
    internal_state, make_space, motional_state, motional_vacuum,
    product_state,
)
from ionsqueeze.operators import (
    coherent_amplitudes, pauli_eigenstate, tmsv_state_matrix,
)


def make_test_space(n_c_cut=6, n_r_cut=None):
    return make_space(n_c_cut, n_c_cut if n_r_cut is None else n_r_cut)


def make_pauli_product_state(space, axis, s1, s2, motional=None):
    """|s1 axis, s2 axis> (x) motional (the vacuum by default)."""
    internal = internal_state(space, np.kron(
        pauli_eigenstate(axis, s1), pauli_eigenstate(axis, s2)))
    if motional is None:
        motional = motional_vacuum(space)
    return product_state(internal, motional)


def make_tmsv_state(space, G_applied):
    return motional_state(
        space, tmsv_state_matrix(space, G_applied)).normalized()


def make_coherent_state(space, beta_c=0.0, beta_r=0.0):
    return motional_state(space, np.outer(
        coherent_amplitudes(beta_c, space.n_c_cut),
        coherent_amplitudes(beta_r, space.n_r_cut))).normalized()


def make_weights(m, seed=0, max_modulus=2.0):
    """2m complex weights with moduli up to ``max_modulus``, reproducible
    from ``seed``."""
    rng = np.random.default_rng(seed)
    moduli = max_modulus * rng.random(2 * m)
    phases = 2 * np.pi * rng.random(2 * m)
    return [complex(v) for v in moduli * np.exp(1j * phases)]


def write_config(directory, data, name='config.json'):
    path = os.path.join(directory, name)
    with open(path, 'w', encoding='utf-8') as handle:
        json.dump(data, handle)
    return path
