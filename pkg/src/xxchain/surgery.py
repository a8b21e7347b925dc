"""
Spectral surgery: strip the extreme eigenvalue pair off a chain.

Removing the lowest and highest eigenvalues is a Christoffel transform of
the orthogonality measure by the quadratic ``(x - x_0)(x_N - x)``, which is
positive on the retained points. The transformed measure is turned back into
a chain with :func:`~xxchain.jacobi.reconstruct_from_measure`.
"""

from __future__ import annotations

from .jacobi import JacobiMatrix, eigendecompose, reconstruct_from_measure


def christoffel_remove_pair(J: JacobiMatrix) -> JacobiMatrix:
    """
    Chain with two fewer sites whose spectrum is that of ``J`` minus its extremes.

    The overall coupling scale of the result is fixed by the retained
    spectrum; it is not rescaled to match ``J``.
    """
    if J.n_sites < 3:
        raise ValueError(f"need at least 3 sites to remove an eigenvalue pair, got {J.n_sites}")
    S = eigendecompose(J)
    x, w = S.eigenvalues, S.weights
    lo, hi = x[0], x[-1]
    inner = x[1:-1]
    modified = w[1:-1] * (inner - lo) * (hi - inner)
    return reconstruct_from_measure(inner, modified)


def surger(J: JacobiMatrix, j: int) -> JacobiMatrix:
    """Apply :func:`christoffel_remove_pair` ``j`` times."""
    if j < 0:
        raise ValueError(f"j must be nonnegative, got {j}")
    if J.n_sites - 2 * j < 1:
        raise ValueError(f"chain exhausted: cannot remove {j} pairs from {J.n_sites} sites")
    for _ in range(j):
        J = christoffel_remove_pair(J)
    return J
