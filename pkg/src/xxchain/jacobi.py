"""
Jacobi matrices of XX chains restricted to the one-excitation subspace.

A chain with sites ``0..N`` is represented by its couplings ``J_1..J_N`` and
on-site fields ``B_0..B_N``. Its spectral data are the eigenvalues together
with the squared first components of the unit eigenvectors, which form a
discrete probability measure. The orthonormal polynomials of that measure
obey the three-term recurrence whose coefficients are the matrix entries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .errors import NumericalError

WEIGHT_FLOOR = 1e-300
DEGENERACY_GAP = 1e-12


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class JacobiMatrix:
    """
    One-excitation Hamiltonian of an XX chain.

    Attributes
    ----------
    couplings : numpy.ndarray
        Positive nearest-neighbour couplings ``J_1..J_N``.
    fields : numpy.ndarray
        On-site fields ``B_0..B_N``.
    """

    couplings: np.ndarray
    fields: np.ndarray

    def __post_init__(self):
        couplings = _frozen(self.couplings).reshape(-1)
        fields = _frozen(self.fields).reshape(-1)
        if fields.size < 1:
            raise ValueError("a chain needs at least one site")
        if couplings.size != fields.size - 1:
            raise ValueError(
                f"expected {fields.size - 1} couplings for {fields.size} sites, "
                f"got {couplings.size}"
            )
        if not np.all(np.isfinite(couplings)) or not np.all(np.isfinite(fields)):
            raise ValueError("couplings and fields must be finite")
        if np.any(couplings <= 0):
            raise ValueError("all couplings must be strictly positive")
        object.__setattr__(self, "couplings", couplings)
        object.__setattr__(self, "fields", fields)

    @classmethod
    def from_couplings(cls, couplings, fields=None) -> "JacobiMatrix":
        """Build a chain from its couplings; fields default to zero."""
        couplings = np.asarray(couplings, dtype=float)
        if fields is None:
            fields = np.zeros(couplings.size + 1)
        return cls(couplings, fields)

    @property
    def n_sites(self) -> int:
        return self.fields.size

    @property
    def N(self) -> int:
        """Index of the last site."""
        return self.fields.size - 1

    def to_dense(self) -> np.ndarray:
        return (
            np.diag(self.fields)
            + np.diag(self.couplings, 1)
            + np.diag(self.couplings, -1)
        )

    def scaled(self, factor: float) -> "JacobiMatrix":
        """Return the chain with every entry multiplied by ``factor > 0``."""
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return JacobiMatrix(self.couplings * factor, self.fields * factor)

    def __eq__(self, other):
        if not isinstance(other, JacobiMatrix):
            return NotImplemented
        return np.array_equal(self.couplings, other.couplings) and np.array_equal(
            self.fields, other.fields
        )

    def __repr__(self):
        return f"JacobiMatrix(n_sites={self.n_sites})"


@dataclass(frozen=True, eq=False)
class SpectralData:
    """
    Eigenvalues of a Jacobi matrix and the matching orthogonality weights.

    Attributes
    ----------
    eigenvalues : numpy.ndarray
        Strictly ascending eigenvalues ``x_0 < ... < x_N``.
    weights : numpy.ndarray
        Positive weights ``w_s`` summing to one.
    """

    eigenvalues: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        x = _frozen(self.eigenvalues).reshape(-1)
        w = _frozen(self.weights).reshape(-1)
        if x.size != w.size or x.size < 1:
            raise ValueError("eigenvalues and weights must be nonempty and equal length")
        if np.any(np.diff(x) <= 0):
            raise ValueError("eigenvalues must be strictly ascending")
        if np.any(w <= 0):
            raise ValueError("weights must be positive")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1 (got {w.sum()!r})")
        object.__setattr__(self, "eigenvalues", x)
        object.__setattr__(self, "weights", w)

    @property
    def N(self) -> int:
        return self.eigenvalues.size - 1

    def scaled(self, factor: float) -> "SpectralData":
        """Spectral data of the chain with all entries multiplied by ``factor``."""
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return SpectralData(self.eigenvalues * factor, self.weights)


def check_nondegenerate(eigenvalues) -> None:
    """Raise if two eigenvalues are closer than the degeneracy guard."""
    x = np.sort(np.asarray(eigenvalues, dtype=float))
    if x.size < 2:
        return
    spread = x[-1] - x[0]
    gap = np.min(np.diff(x))
    if spread == 0 or gap < DEGENERACY_GAP * spread:
        raise NumericalError(
            f"degenerate spectrum: minimum gap {gap:.3e} for spectral range {spread:.3e}"
        )


def eigensystem(J: JacobiMatrix) -> tuple[np.ndarray, np.ndarray]:
    """
    Ascending eigenvalues and unit eigenvectors (as columns) of ``J``.

    Eigenvector signs are fixed so that every first component is positive.
    """
    if J.n_sites == 1:
        return J.fields.copy(), np.ones((1, 1))
    try:
        try:
            x, V = eigh_tridiagonal(J.fields, J.couplings, lapack_driver="stemr")
        except LinAlgError:
            # stemr occasionally fails on strongly graded couplings; implicit QR does not
            x, V = eigh_tridiagonal(J.fields, J.couplings, lapack_driver="stev")
    except (LinAlgError, ValueError) as exc:
        raise NumericalError(
            f"tridiagonal eigensolver failed for a {J.n_sites}x{J.n_sites} matrix: {exc}"
        ) from exc
    V = V * np.where(V[0] < 0, -1.0, 1.0)
    return x, V


def eigendecompose(J: JacobiMatrix) -> SpectralData:
    """
    Spectral data of ``J``: eigenvalues and squared first eigenvector components.

    Raises
    ------
    NumericalError
        If the eigensolver fails, a weight underflows, or the spectrum is
        degenerate to working precision.
    """
    x, V = eigensystem(J)
    w = V[0] ** 2
    if np.any(w < WEIGHT_FLOOR):
        raise NumericalError(
            f"weight underflow: smallest weight {w.min():.3e} for {J.n_sites} sites"
        )
    check_nondegenerate(x)
    return SpectralData(x, w / w.sum())


def moments_check(S: SpectralData, J: JacobiMatrix, rtol: float = 1e-10) -> bool:
    """True when the first two moments of ``S`` match ``B_0`` and ``B_0**2 + J_1**2``."""
    x, w = S.eigenvalues, S.weights
    b0 = J.fields[0]
    j1 = J.couplings[0] if J.n_sites > 1 else 0.0
    scale = max(np.max(np.abs(x)), abs(b0), j1, np.finfo(float).tiny)
    first = np.dot(w, x)
    second = np.dot(w, x * x)
    return bool(
        abs(first - b0) <= rtol * scale
        and abs(second - (b0 * b0 + j1 * j1)) <= rtol * scale * scale
    )


def polynomial_values(J: JacobiMatrix, x: float, n_max: int, monic: bool = False) -> np.ndarray:
    """
    Values of the orthogonal polynomials of ``J`` at ``x``.

    Parameters
    ----------
    J : JacobiMatrix
    x : float
    n_max : int
        Highest degree returned. Orthonormal polynomials exist up to degree
        ``N``; the monic family extends to degree ``N + 1``, the
        characteristic polynomial.
    monic : bool
        Return ``P_n = J_1 ... J_n chi_n`` instead of the orthonormal ``chi_n``.

    Returns
    -------
    numpy.ndarray
        Array of length ``n_max + 1``.
    """
    top = J.N + 1 if monic else J.N
    if not 0 <= n_max <= top:
        raise ValueError(f"n_max must lie in [0, {top}], got {n_max}")
    b, a = J.couplings, J.fields
    out = np.empty(n_max + 1)
    out[0] = 1.0
    prev = 0.0
    for n in range(n_max):
        jn = b[n - 1] if n > 0 else 0.0
        if monic:
            nxt = (x - a[n]) * out[n] - jn * jn * prev
        else:
            nxt = ((x - a[n]) * out[n] - jn * prev) / b[n]
        prev = out[n]
        out[n + 1] = nxt
    return out


def polynomial_table(J: JacobiMatrix, points) -> np.ndarray:
    """Matrix ``chi_n(x_s)`` with rows indexed by degree ``n = 0..N``."""
    pts = np.asarray(points, dtype=float)
    b, a = J.couplings, J.fields
    table = np.empty((J.n_sites, pts.size))
    table[0] = 1.0
    prev = np.zeros_like(pts)
    for n in range(J.N):
        jn = b[n - 1] if n > 0 else 0.0
        table[n + 1] = ((pts - a[n]) * table[n] - jn * prev) / b[n]
        prev = table[n]
    return table


def weights_from_charpoly(J: JacobiMatrix, eigenvalues) -> np.ndarray:
    """
    Orthogonality weights from the characteristic polynomial.

    Evaluates ``w_s = h_N / (P_N(x_s) P'_{N+1}(x_s))`` with
    ``h_N = J_1**2 ... J_N**2`` and ``P'_{N+1}(x_s) = prod_{r != s} (x_s - x_r)``.
    The product is accumulated in log-magnitude form, so chains whose
    polynomial values would overflow a double are still handled.
    """
    x = np.asarray(eigenvalues, dtype=float)
    if x.size != J.n_sites:
        raise ValueError("need exactly one eigenvalue per site")
    check_nondegenerate(x)
    if x.size == 1:
        return np.ones(1)
    # P_N = sqrt(h_N) * chi_N, so w_s = sqrt(h_N) / (chi_N(x_s) * P'_{N+1}(x_s))
    half_log_h = np.sum(np.log(J.couplings))
    chi_N = polynomial_table(J, x)[-1]
    diffs = x[:, None] - x[None, :]
    np.fill_diagonal(diffs, 1.0)
    sign = np.sign(chi_N) * np.prod(np.sign(diffs), axis=1)
    if np.any(sign <= 0):
        raise NumericalError("characteristic-polynomial weights are not positive")
    log_w = half_log_h - np.log(np.abs(chi_N)) - np.sum(np.log(np.abs(diffs)), axis=1)
    return np.exp(log_w)


def reconstruct_from_measure(points, weights) -> JacobiMatrix:
    """
    Jacobi matrix whose spectral data are ``(points, weights)``.

    Runs the Lanczos recurrence on ``diag(points)`` started from
    ``sqrt(weights)``, with two passes of full reorthogonalization per step.

    Raises
    ------
    ValueError
        For empty or non-ascending points, or nonpositive weights.
    NumericalError
        If a computed squared coupling is not positive.
    """
    x = np.asarray(points, dtype=float).reshape(-1)
    w = np.asarray(weights, dtype=float).reshape(-1)
    if x.size < 1:
        raise ValueError("need at least one point")
    if x.size != w.size:
        raise ValueError("points and weights must have equal length")
    if np.any(np.diff(x) <= 0):
        raise ValueError("points must be strictly ascending")
    if np.any(w <= 0):
        raise ValueError("weights must be positive")
    n = x.size
    Q = np.zeros((n, n))
    Q[:, 0] = np.sqrt(w / w.sum())
    alpha = np.empty(n)
    beta = np.empty(n - 1)
    for k in range(n):
        q = Q[:, k]
        alpha[k] = np.dot(q, x * q)
        if k == n - 1:
            break
        r = x * q - alpha[k] * q
        if k > 0:
            r -= beta[k - 1] * Q[:, k - 1]
        for _ in range(2):
            r -= Q[:, : k + 1] @ (Q[:, : k + 1].T @ r)
        b = np.linalg.norm(r)
        if not b > np.finfo(float).eps * max(1.0, np.max(np.abs(x))):
            raise NumericalError(
                f"measure not realizable at requested precision (step {k + 1}, "
                f"squared coupling {b * b:.3e})"
            )
        beta[k] = b
        Q[:, k + 1] = r / b
    return JacobiMatrix(beta, alpha)


def is_persymmetric(J: JacobiMatrix, tol: float = 1e-12) -> bool:
    """True if ``J_{N+1-l} = J_l`` and ``B_{N-l} = B_l`` to relative tolerance ``tol``."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    scale = J.couplings.max() if J.n_sites > 1 else max(abs(J.fields[0]), 1.0)
    bound = tol * scale
    return bool(
        np.all(np.abs(J.couplings - J.couplings[::-1]) <= bound)
        and np.all(np.abs(J.fields - J.fields[::-1]) <= bound)
    )
