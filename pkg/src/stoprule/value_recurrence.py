"""Backward-induction thresholds v_1..v_N of the full-information problem.

With ``n`` draws left the optimal expected reward obeys
``v_{n+1} = v_n + int_{v_n}^{U} h(y) dy`` where ``h`` is the survival function
and ``U`` the upper end of the support, and ``v_1`` is the mean.
"""

import math
import warnings
from dataclasses import dataclass
from functools import singledispatch
from typing import Iterable, Iterator

import numpy as np
from scipy import integrate, special

from .distributions import (Beta, Distribution, Exponential, Gamma, Geometric, Normal, Pareto,
                            Triangular, Uniform, Weibull, Wigner)

QUAD_EPSABS = 1e-12
QUAD_EPSREL = 1e-10
QUAD_LIMIT = 200

#: Largest horizon stored densely; longer runs go through :func:`iter_values`.
DENSE_LIMIT = 10_000_000


class NumericError(ArithmeticError):
    """Quadrature did not reach its tolerance."""

    def __init__(self, message, error_estimate=math.nan):
        super().__init__(message)
        self.error_estimate = error_estimate


# --------------------------------------------------------------------------
# Tail integral
# --------------------------------------------------------------------------

@singledispatch
def _closed_tail(spec, v):
    return None


@_closed_tail.register
def _(spec: Exponential, v):
    return spec.beta * math.exp(-v / spec.beta)


@_closed_tail.register
def _(spec: Normal, v):
    # sigma * (phi(z) - z Q(z))
    z = (v - spec.mu) / spec.sigma
    phi = math.exp(-0.5 * z * z) / math.sqrt(2 * math.pi)
    return spec.sigma * (phi - z * 0.5 * math.erfc(z / math.sqrt(2.0)))


@_closed_tail.register
def _(spec: Gamma, v):
    x = v / spec.beta
    a = spec.alpha
    return spec.beta * (a * special.gammaincc(a + 1, x) - x * special.gammaincc(a, x))


@_closed_tail.register
def _(spec: Weibull, v):
    x = (v / spec.beta) ** spec.k
    s = 1.0 / spec.k
    return spec.beta * math.gamma(1 + s) * special.gammaincc(s, x)


@_closed_tail.register
def _(spec: Pareto, v):
    return spec.beta ** spec.alpha * v ** (1 - spec.alpha) / (spec.alpha - 1)


@_closed_tail.register
def _(spec: Uniform, v):
    if v >= spec.b:
        return 0.0
    return (spec.b - v) ** 2 / (2 * (spec.b - spec.a))


@_closed_tail.register
def _(spec: Triangular, v):
    a, b, c = spec.a, spec.b, spec.c
    if v >= b:
        return 0.0
    if v >= c:
        return (b - v) ** 3 / (3 * (b - a) * (b - c))
    upper_part = (b - c) ** 2 / (3 * (b - a))
    lower_part = (c - v) - ((c - a) ** 3 - (v - a) ** 3) / (3 * (b - a) * (c - a))
    return upper_part + lower_part


def _beta_excess(alpha, beta, x):
    # E[(X - x)^+] for X ~ Beta(alpha, beta)
    if x >= 1.0:
        return 0.0
    m = alpha / (alpha + beta)
    return m * special.betaincc(alpha + 1, beta, x) - x * special.betaincc(alpha, beta, x)


@_closed_tail.register
def _(spec: Beta, v):
    return _beta_excess(spec.alpha, spec.beta, v)


@_closed_tail.register
def _(spec: Wigner, v):
    # semicircle on [-R, R] is 2R * Beta(3/2, 3/2) - R
    R = spec.radius
    return 2 * R * _beta_excess(1.5, 1.5, (v + R) / (2 * R))


@_closed_tail.register
def _(spec: Geometric, v):
    # sum_{j>=0} (1-p)^(v+j); equals E[(Y - v)^+] at integer v
    return math.exp(v * math.log1p(-spec.p)) / spec.p


def _quad(func, lo, hi):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, err, *rest = integrate.quad(func, lo, hi, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL,
                                           limit=QUAD_LIMIT, full_output=1)
    ier = 0 if len(rest) < 2 else 1
    if ier or err > max(QUAD_EPSABS, QUAD_EPSREL * abs(value)) * 10:
        raise NumericError(f"tail quadrature did not converge on [{lo}, {hi}]: estimate {value!r}, "
                           f"error {err:.3g}", error_estimate=err)
    return value


def _quadrature_tail(spec, v):
    if isinstance(spec, Geometric):
        # discrete law: the increment is a series, summed directly
        r = 1.0 - spec.p
        total, term = 0.0, r ** v
        while term > 1e-18 * total or total == 0.0:
            total += term
            term *= r
        return total
    upper = spec.upper
    if math.isfinite(upper):
        if v >= upper:
            return 0.0
        return _quad(lambda y: float(spec.survival(y)), v, upper)

    # y = v + t / (1 - t) maps [0, 1) onto [v, inf)
    def integrand(t):
        if t >= 1.0:
            return 0.0
        s = 1.0 - t
        return float(spec.survival(v + t / s)) / (s * s)

    return _quad(integrand, 0.0, 1.0)


def tail_integral(spec: Distribution, v: float, method: str = "auto") -> float:
    """Integral of the survival function from ``v`` to the top of the support.

    Parameters
    ----------
    spec : Distribution
    v : float
        Lower limit; values below the support use ``mean - v`` for the part
        below the lower bound.
    method : {"auto", "closed", "quadrature"}
        ``auto`` uses a closed form when the family has one, otherwise
        adaptive quadrature.  ``quadrature`` forces the numerical route.

    Raises
    ------
    NumericError
        If the quadrature misses its tolerance.
    """
    lower = spec.lower
    if v < lower:
        return (lower - v) + tail_integral(spec, lower, method)
    if method not in ("auto", "closed", "quadrature"):
        raise ValueError(f"unknown method {method!r}")
    if method != "quadrature":
        value = _closed_tail(spec, v)
        if value is not None:
            return float(value)
        if method == "closed":
            raise ValueError(f"no closed-form tail integral for {spec.family}")
    return _quadrature_tail(spec, v)


# --------------------------------------------------------------------------
# Value sequence
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ValueSequence:
    spec: Distribution
    values: np.ndarray  # values[i] is v_{i+1}

    @property
    def N(self):
        return len(self.values)

    def __getitem__(self, n):
        """``vs[n]`` is v_n (1-based)."""
        if not 1 <= n <= self.N:
            raise IndexError(f"v_{n} outside 1..{self.N}")
        return float(self.values[n - 1])


def iter_values(spec: Distribution, method: str = "auto") -> Iterator[float]:
    """Yield v_1, v_2, ... without storing them."""
    v = float(spec.mean())
    while True:
        yield v
        v = v + tail_integral(spec, v, method)


def value_sequence(spec: Distribution, N: int, method: str = "auto") -> ValueSequence:
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if N > DENSE_LIMIT:
        raise ValueError(f"N = {N} exceeds the dense limit {DENSE_LIMIT}; use values_at() with checkpoints")
    values = np.empty(N)
    for i, v in zip(range(N), iter_values(spec, method)):
        values[i] = v
    return ValueSequence(spec, values)


def values_at(spec: Distribution, checkpoints: Iterable[int], method: str = "auto") -> dict:
    """Stream the recurrence, keeping only v_n at the requested ``n``."""
    wanted = sorted(set(int(n) for n in checkpoints))
    if not wanted:
        return {}
    if wanted[0] < 1:
        raise ValueError("checkpoints must be >= 1")
    out = {}
    it = iter_values(spec, method)
    for n in range(1, wanted[-1] + 1):
        v = next(it)
        if n == wanted[len(out)]:
            out[n] = v
    return out


def acceptance_probs(vs: ValueSequence) -> np.ndarray:
    """w_i = P(y < v_i) for i = 1..N-1 (the chance a draw is passed over)."""
    v = vs.values[:-1]
    spec = vs.spec
    if isinstance(spec, Geometric):
        return 1.0 - spec.prob_at_least(v)
    return 1.0 - spec.survival(v)
