"""
Closed-form chain families: uniform, Krawtchouk and surgered.

The surgered chain with parameters ``(N, M)`` is what remains of the uniform
chain on ``M + 1`` sites after ``j = (M - N) / 2`` eigenvalues are cut from
each end of its spectrum. Its couplings, eigenvalues and weights are all
known in closed form in terms of ``omega = pi / (M + 2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NumericalError
from .jacobi import JacobiMatrix, SpectralData

FAMILIES = ("uniform", "krawtchouk", "surgered")


def _check_scale(K: float) -> None:
    if not (K > 0 and math.isfinite(K)):
        raise ValueError(f"coupling scale K must be positive and finite, got {K!r}")


def surgery_depth(N: int, M: int) -> int:
    """Number ``j`` of eigenvalue pairs removed to go from ``M + 1`` to ``N + 1`` sites."""
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    if M < N:
        raise ValueError(f"surgered chain needs M >= N, got N={N}, M={M}")
    if (M - N) % 2:
        raise ValueError(f"surgered chain needs M - N even, got N={N}, M={M}")
    return (M - N) // 2


@dataclass(frozen=True)
class ChainFamily:
    """
    Parameters of a closed-form chain.

    For the uniform family ``N`` and ``M`` coincide; the Krawtchouk family
    ignores ``M``.
    """

    family: str
    N: int
    M: Optional[int] = None
    K: float = 1.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        _check_scale(self.K)
        if self.family == "uniform":
            M = self.N if self.M is None else self.M
            if M != self.N:
                raise ValueError("uniform chain has N == M")
            object.__setattr__(self, "M", M)
            if M < 1:
                raise ValueError(f"M must be at least 1, got {M}")
        elif self.family == "surgered":
            if self.M is None:
                raise ValueError("surgered chain needs M")
            surgery_depth(self.N, self.M)
        elif self.N < 1:
            raise ValueError(f"N must be at least 1, got {self.N}")

    @property
    def j(self) -> int:
        if self.family == "krawtchouk":
            return 0
        return (self.M - self.N) // 2

    @property
    def normalization_scale(self) -> float:
        """Factor ``M + 2`` that makes mid-spectrum gaps close to ``2 pi``."""
        if self.family == "krawtchouk":
            raise ValueError("normalized spectrum is defined for uniform and surgered chains only")
        return float(self.M + 2)

    def build(self, normalized: bool = False) -> JacobiMatrix:
        K = self.K * self.normalization_scale if normalized else self.K
        if self.family == "uniform":
            return uniform_chain(self.M, K)
        if self.family == "krawtchouk":
            return krawtchouk_chain(self.N, K)
        return surgered_chain(self.N, self.M, K)

    def spectral_data(self, normalized: bool = False) -> SpectralData:
        """Closed-form spectral data; ``normalized`` does not apply to Krawtchouk chains."""
        if self.family == "krawtchouk":
            x = self.K * (np.arange(self.N + 1) - self.N / 2)
            w = krawtchouk_weights(self.N)
            return SpectralData(x, w)
        return surgered_spectral_data(self.N, self.M, self.K, normalized)


def uniform_chain(M: int, K: float = 1.0) -> JacobiMatrix:
    """Chain on ``M + 1`` sites with every coupling equal to ``K`` and no fields."""
    if M < 1:
        raise ValueError(f"M must be at least 1, got {M}")
    _check_scale(K)
    return JacobiMatrix(np.full(M, float(K)), np.zeros(M + 1))


def krawtchouk_chain(N: int, K: float = 1.0) -> JacobiMatrix:
    """
    Krawtchouk chain with couplings ``(K / 2) sqrt(l (N + 1 - l))``.

    The factor one half puts the spectrum at ``K (s - N / 2)``, evenly spaced
    by ``K``, so that transfer from site 0 to site N is perfect at ``pi / K``.
    """
    if N < 1:
        raise ValueError(f"N must be at least 1, got {N}")
    _check_scale(K)
    l = np.arange(1, N + 1, dtype=float)
    return JacobiMatrix(0.5 * K * np.sqrt(l * (N + 1 - l)), np.zeros(N + 1))


def krawtchouk_weights(N: int) -> np.ndarray:
    """Binomial weights ``C(N, s) / 2**N`` of the Krawtchouk chain."""
    s = np.arange(N + 1)
    log_w = (
        math.lgamma(N + 1)
        - np.array([math.lgamma(k + 1) + math.lgamma(N - k + 1) for k in s])
        - N * math.log(2.0)
    )
    w = np.exp(log_w)
    return w / w.sum()


def surgered_couplings_squared(N: int, M: int, K: float = 1.0) -> np.ndarray:
    """Squared couplings ``J_l**2`` of the surgered chain, ``l = 1..N``."""
    surgery_depth(N, M)
    _check_scale(K)
    omega = math.pi / (M + 2)
    l = np.arange(1, N + 1)
    # integer multiples of omega, and twice-shifted integers for the half-integer cosines
    num = np.sin(omega * l) * np.sin(omega * (N + 1 - l))
    den = np.cos(0.5 * omega * (2 * l - N)) * np.cos(0.5 * omega * (2 * l - N - 2))
    return K * K * num / den


def surgered_chain(N: int, M: int, K: float = 1.0) -> JacobiMatrix:
    """
    Surgered uniform chain with ``N + 1`` sites obtained from ``M + 1`` sites.

    Returns the uniform chain exactly when ``M == N``.

    Raises
    ------
    ValueError
        If ``M < N``, ``M - N`` is odd, or ``K <= 0``.
    NumericalError
        If a squared coupling evaluates to a nonpositive number.
    """
    if M == N:
        return uniform_chain(M, K)
    J2 = surgered_couplings_squared(N, M, K)
    if np.any(~(J2 > 0)):
        raise NumericalError(f"formula breakdown: nonpositive squared coupling for N={N}, M={M}")
    return JacobiMatrix(np.sqrt(J2), np.zeros(N + 1))


def surgered_spectrum(N: int, M: int, K: float = 1.0, normalized: bool = False) -> np.ndarray:
    """
    Ascending eigenvalues ``-2 K cos(omega (s + 1 + j))`` of the surgered chain.

    With ``normalized`` the values are further multiplied by ``M + 2``, which
    brings the gaps in the middle of the spectrum close to ``2 pi``.
    """
    j = surgery_depth(N, M)
    _check_scale(K)
    omega = math.pi / (M + 2)
    x = -2.0 * K * np.cos(omega * (np.arange(N + 1) + 1 + j))
    if normalized:
        x = x * (M + 2)
    return x


def surgered_weights(N: int, M: int) -> np.ndarray:
    """
    Orthogonality weights of the surgered chain.

    Each weight is proportional to
    ``prod_{k=0..j} sin(omega (s + j - k + 1)) sin(omega (s + j + k + 1))``.
    The product is formed in log space and the vector renormalized to unit
    sum, so deep surgeries (large ``j``) do not underflow.
    """
    j = surgery_depth(N, M)
    omega = math.pi / (M + 2)
    s = np.arange(N + 1)[:, None]
    k = np.arange(j + 1)[None, :]
    lo = np.sin(omega * (s + j - k + 1))
    hi = np.sin(omega * (s + j + k + 1))
    if np.any(lo <= 0) or np.any(hi <= 0):
        raise NumericalError(f"weight formula breakdown for N={N}, M={M}")
    log_w = np.sum(np.log(lo) + np.log(hi), axis=1)
    w = np.exp(log_w - log_w.max())
    return w / w.sum()


def surgered_spectral_data(
    N: int, M: int, K: float = 1.0, normalized: bool = False
) -> SpectralData:
    return SpectralData(surgered_spectrum(N, M, K, normalized), surgered_weights(N, M))


def coupling_ratio(J: JacobiMatrix) -> float:
    """``max J_l**2 / min J_l**2`` over all couplings; 1 for a single site."""
    if J.n_sites < 2:
        return 1.0
    J2 = J.couplings**2
    return float(J2.max() / J2.min())


def krawtchouk_ratio(N: int) -> float:
    """Closed-form ratio ``(N + 1)**2 / (4 N)`` of the Krawtchouk chain."""
    return (N + 1) ** 2 / (4.0 * N)
