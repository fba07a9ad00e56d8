"""Exact moments of the optimal stopping time from the pass-over probabilities.

With ``w_i = P(y < v_i)`` and suffix products ``S_n = prod_{i=n}^{N-1} w_i``::

    E(tau)   = 1 + sum_{n=1}^{N-1} S_n
    E(tau^2) = 1 + sum_{n=1}^{N-1} (2N + 1 - 2n) S_n
"""

from dataclasses import dataclass

import numpy as np

from .distributions import Distribution
from .value_recurrence import DENSE_LIMIT, acceptance_probs, value_sequence


@dataclass(frozen=True)
class StoppingStats:
    N: int
    expectation: float
    second_moment: float

    @property
    def variance(self) -> float:
        return self.second_moment - self.expectation ** 2


def _check(w, N):
    w = np.asarray(w, dtype=float)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if w.shape != (N - 1,):
        raise ValueError(f"expected {N - 1} probabilities for N = {N}, got shape {w.shape}")
    if w.size and (w.min() < 0 or w.max() > 1):
        raise ValueError("probabilities must lie in [0, 1]")
    return w


def suffix_products(w) -> np.ndarray:
    """``S[n-1] = prod(w[n-1:])``; log-space when small factors could underflow."""
    w = np.asarray(w, dtype=float)
    if w.size == 0:
        return w.copy()
    rev = w[::-1]
    if rev.min() < 0.5:
        with np.errstate(divide="ignore"):
            return np.exp(np.cumsum(np.log(rev)))[::-1]
    return np.cumprod(rev)[::-1]


def exact_expectation(w, N: int) -> float:
    w = _check(w, N)
    return 1.0 + float(suffix_products(w).sum())


def exact_second_moment(w, N: int) -> float:
    w = _check(w, N)
    n = np.arange(1, N, dtype=float)
    return 1.0 + float(((2 * N + 1 - 2 * n) * suffix_products(w)).sum())


def exact_stats(spec: Distribution, N: int) -> StoppingStats:
    """E(tau_N) and E(tau_N^2) from the exact threshold sequence of ``spec``."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if N > DENSE_LIMIT:
        raise ValueError(f"N = {N} exceeds the dense limit {DENSE_LIMIT}")
    w = acceptance_probs(value_sequence(spec, N))
    return StoppingStats(N=N, expectation=exact_expectation(w, N), second_moment=exact_second_moment(w, N))


def pochhammer_sum(lam: float, k: int, N: int) -> float:
    """``sum_{n=k}^{N-1} prod_{i=n}^{N-1} (1 - lam / i)`` by direct summation.

    Asymptotically ``(N - lam - 1) / (lam + 1)``.
    """
    if not 1 <= k < N:
        raise ValueError(f"need 1 <= k < N, got k={k}, N={N}")
    if not 0 < lam < k:
        raise ValueError(f"need 0 < lam < k so every factor is positive, got lam={lam}, k={k}")
    i = np.arange(k, N, dtype=float)
    return float(suffix_products(1.0 - lam / i).sum())
