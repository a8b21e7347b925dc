"""
End-to-end transfer amplitude, fidelity deficit, and perfect-transfer checks.

The amplitude of the excitation arriving at site ``N`` after starting at
site ``0`` is ``A(t) = <e_N| exp(-i t J) |e_0>``. For persymmetric chains
it only needs the spectral data, ``A(t) = sum_s w_s (-1)**(N + s) exp(-i x_s t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Optional, Union

import numpy as np

from .jacobi import JacobiMatrix, SpectralData, eigensystem, is_persymmetric

Chain = Union[JacobiMatrix, SpectralData]

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
GOOD_ENOUGH = 0.05


@dataclass(frozen=True)
class TransferReport:
    time: float
    amplitude: complex
    deficit: float
    site_probabilities: Optional[np.ndarray] = None

    @property
    def good_enough(self) -> bool:
        """Reporting label for ``deficit <= 0.05``."""
        return self.deficit <= GOOD_ENOUGH


@dataclass(frozen=True)
class PstReport:
    persymmetric: bool
    is_pst: bool
    kappa: Optional[float] = None
    multipliers: tuple = ()
    gcd_d: Optional[int] = None
    minimal_time: Optional[float] = None


def _endpoint_coefficients(chain: Chain) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and coefficients ``c_s`` with ``A(t) = sum_s c_s exp(-i x_s t)``."""
    if isinstance(chain, SpectralData):
        N = chain.N
        signs = np.where((N + np.arange(N + 1)) % 2 == 0, 1.0, -1.0)
        return chain.eigenvalues, chain.weights * signs
    x, V = eigensystem(chain)
    return x, V[-1] * V[0]


def _sum_modes(x: np.ndarray, c: np.ndarray, t) -> np.ndarray:
    """``sum_s c_s exp(-i x_s t)`` for an array of times, chunked to bound memory."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(t.size, dtype=complex)
    step = max(1, (1 << 22) // max(x.size, 1))
    for start in range(0, t.size, step):
        block = t[start : start + step]
        out[start : start + step] = np.exp(-1j * np.outer(block, x)) @ c
    return out


def amplitude_persym(S: SpectralData, N: Optional[int] = None, t=0.0):
    """
    End-to-end amplitude of a persymmetric chain from its spectral data.

    ``t`` may be a scalar or an array; the result has the same shape.
    """
    if N is not None and N != S.N:
        raise ValueError(f"N={N} does not match spectral data with {S.N + 1} points")
    x, c = _endpoint_coefficients(S)
    A = _sum_modes(x, c, t)
    return A[0] if np.ndim(t) == 0 else A.reshape(np.shape(t))


def amplitude_full(J: JacobiMatrix, t: float) -> tuple[complex, np.ndarray]:
    """
    Evolve ``|e_0>`` for time ``t`` under ``J``.

    Returns
    -------
    amplitude : complex
        ``<e_N| exp(-i t J) |e_0>``.
    site_probabilities : numpy.ndarray
        ``|<e_n| exp(-i t J) |e_0>|**2`` for every site.
    """
    x, V = eigensystem(J)
    psi = V @ (V[0] * np.exp(-1j * x * t))
    return complex(psi[-1]), np.abs(psi) ** 2


def evolve(J: JacobiMatrix, t: float) -> TransferReport:
    """Transfer report with the full site-probability profile at time ``t``."""
    A, probs = amplitude_full(J, t)
    return TransferReport(float(t), A, 1.0 - abs(A), probs)


def fidelity_deficit(chain: Chain, T):
    """
    ``1 - |A(T)|`` for a chain or for persymmetric spectral data.

    A :class:`JacobiMatrix` is evolved exactly, whether persymmetric or not;
    :class:`SpectralData` is taken to describe a persymmetric chain.
    """
    x, c = _endpoint_coefficients(chain)
    d = np.clip(1.0 - np.abs(_sum_modes(x, c, T)), 0.0, 1.0)
    return float(d[0]) if np.ndim(T) == 0 else d.reshape(np.shape(T))


def check_pst(J: JacobiMatrix, rel_tol: float = 1e-8, qmax: int = 99) -> PstReport:
    """
    Test the perfect-transfer criterion on ``J``.

    The chain must be persymmetric and every eigenvalue gap must be an odd
    multiple of a common ``kappa``. Candidates ``kappa = g_min / m`` are tried
    for odd ``m`` up to ``qmax``; the first that fits every gap to within
    ``rel_tol * max(gaps)`` is reported with the minimal transfer time
    ``pi / (kappa * gcd)``.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    if qmax < 1:
        raise ValueError("qmax must be at least 1")
    persym = is_persymmetric(J, tol=max(rel_tol, 1e-12))
    if J.n_sites < 2:
        return PstReport(persym, False)
    x, _ = eigensystem(J)
    gaps = np.diff(x)
    bound = rel_tol * gaps.max()
    fit = None
    for m in range(1, qmax + 1, 2):
        kappa = gaps.min() / m
        mult = np.rint(gaps / kappa).astype(int)
        if np.all(mult % 2 == 1) and np.all(np.abs(gaps - kappa * mult) <= bound):
            fit = kappa, mult
            break
    if fit is None:
        return PstReport(persym, False)
    kappa, mult = fit
    d = reduce(math.gcd, (int(v) for v in mult))
    return PstReport(
        persymmetric=persym,
        is_pst=persym,
        kappa=float(kappa),
        multipliers=tuple(int(v) for v in mult),
        gcd_d=d,
        minimal_time=float(math.pi / (kappa * d)),
    )


def _golden_section(f, a: float, b: float, tol: float) -> tuple[float, float]:
    """Minimize ``f`` on ``[a, b]`` down to an interval of width ``tol``."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
        if c >= d:
            break
    candidates = [(fc, c), (fd, d), (f(a), a), (f(b), b)]
    fbest, xbest = min(candidates)
    return xbest, fbest


def optimize_time(
    chain: Chain,
    t0: float,
    window: float,
    grid: int = 4001,
    tol: float = 1e-10,
) -> tuple[float, float]:
    """
    Time in ``[t0 - window, t0 + window]`` minimizing the fidelity deficit.

    The deficit is scanned on ``grid`` equally spaced times; every local
    minimum of the scan is refined by golden-section search on its two
    neighbouring cells. The lowest refined value wins, ties going to the
    earliest time.

    Returns
    -------
    (T_star, delta_star) : tuple of float
    """
    if not window > 0:
        raise ValueError(f"window must be positive, got {window}")
    if grid < 3:
        raise ValueError(f"grid must have at least 3 points, got {grid}")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    x, c = _endpoint_coefficients(chain)

    def deficit(t):
        return float(1.0 - abs(_sum_modes(x, c, t)[0]))

    ts = np.linspace(t0 - window, t0 + window, grid)
    ds = 1.0 - np.abs(_sum_modes(x, c, ts))
    left = np.concatenate(([np.inf], ds[:-1]))
    right = np.concatenate((ds[1:], [np.inf]))
    minima = np.flatnonzero((ds <= left) & (ds <= right))

    best_t, best_d = None, np.inf
    for i in minima:
        lo, hi = ts[max(i - 1, 0)], ts[min(i + 1, grid - 1)]
        t, d = _golden_section(deficit, lo, hi, tol)
        if ds[i] < d:
            t, d = ts[i], ds[i]
        if d < best_d - 1e-15 or (abs(d - best_d) <= 1e-15 and t < best_t):
            best_t, best_d = float(t), float(d)
    return best_t, max(best_d, 0.0)
