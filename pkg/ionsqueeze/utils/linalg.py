import numpy as np
import scipy.linalg as la


def max_abs(matrix):
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix)))


def dagger(matrix):
    return np.asarray(matrix).conj().T


def commutator(a, b):
    return a @ b - b @ a


def spectral_expm_antihermitian(generator):
    """
    exp(K) for an anti-Hermitian K through the eigendecomposition of the
    Hermitian matrix iK, so that the result is unitary up to rounding.

    Returns
    -------
    tuple
        ``(exp_k, residual)`` where ``residual`` is the max-norm of
        ``V diag(w) V^dagger - iK``, the backward error of the
        decomposition. The forward error of ``exp_k`` is bounded by it.
    """
    hermitian = 1j * np.asarray(generator, dtype=complex)
    hermitian = 0.5 * (hermitian + dagger(hermitian))
    w, v = la.eigh(hermitian)
    residual = max_abs((v * w) @ dagger(v) - hermitian)
    return (v * np.exp(-1j * w)) @ dagger(v), residual


def normal_eigendecomposition(matrix, tol):
    """
    Eigenvalues and a unitary eigenbasis of a normal matrix, via the complex
    Schur form (which is diagonal exactly when the matrix is normal).
    Returns ``None`` if the matrix is not normal to ``tol``.
    """
    t, z = la.schur(np.asarray(matrix, dtype=complex), output='complex')
    off_diagonal = t - np.diag(np.diag(t))
    if max_abs(off_diagonal) > tol:
        return None
    return np.diag(t), z


def group_eigenvalues(values, tol):
    """
    Group indices of (complex) eigenvalues that agree to ``tol``. Returns a
    list of ``(representative value, [indices])`` in first-seen order.
    """
    groups = []
    for index, value in enumerate(values):
        for group in groups:
            if abs(group[0] - value) <= tol:
                group[1].append(index)
                break
        else:
            groups.append((value, [index]))
    return [(np.mean([values[i] for i in idx]), idx) for _, idx in groups]
