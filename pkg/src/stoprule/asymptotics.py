"""Leading-order large-n behaviour of the thresholds and the stopping time.

The thresholds satisfy ``v_n ~ h0^{-1}(lam / n)`` where ``h0`` is the
leading-order form of the survival function near the top of the support and
``lam`` comes from the tail class.  The stopping time then has
``E ~ N / (lam + 1)`` and ``Var ~ lam N^2 / ((lam + 1)^2 (lam + 2))``.
"""

import math
from dataclasses import dataclass
from functools import singledispatch

from scipy import optimize, special

from .distributions import (Beta, Distribution, Exponential, Gamma, Geometric, Normal, Pareto,
                            Triangular, Uniform, Weibull, Wigner)

_INV_E = math.exp(-1.0)


def lambert_w(x: float) -> float:
    """Principal branch of the Lambert W function for real ``x >= -1/e``.

    Halley iteration started from the branch-point series near ``-1/e``,
    from ``log1p(x)`` for moderate ``x`` and from ``log x - log log x`` for
    large ``x``.
    """
    x = float(x)
    if math.isnan(x) or x < -_INV_E - 4e-17:
        raise ValueError(f"lambert_w is real only for x >= -1/e, got {x}")
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf
    if x < -0.32:
        p = math.sqrt(max(2.0 * (math.e * x + 1.0), 0.0))
        if p == 0.0:
            return -1.0
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
    elif x < 3.0:
        w = math.log1p(x)
        w = w * (1 - math.log1p(w) / (2 + w))
    else:
        w = lambert_w_expansion(x)
    for _ in range(100):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= step
        if abs(step) <= 4e-16 * (1.0 + abs(w)):
            break
    return w


def lambert_w_expansion(x: float) -> float:
    """Two-term large-argument form ``log x - log log x`` (for ``x > e``)."""
    lx = math.log(x)
    return lx - math.log(lx)


# --------------------------------------------------------------------------
# Leading-order tail forms and their inverses
# --------------------------------------------------------------------------

@singledispatch
def leading_tail(spec, y):
    """Leading-order form of the survival function near the top of the support."""
    raise TypeError(f"no leading tail form for {type(spec).__name__}")


@singledispatch
def leading_tail_inverse(spec, q):
    """Solve ``leading_tail(spec, y) == q`` on the branch running to the top of the support."""
    raise TypeError(f"no leading tail form for {type(spec).__name__}")


@leading_tail.register
def _(spec: Exponential, y):
    return math.exp(-y / spec.beta)


@leading_tail_inverse.register
def _(spec: Exponential, q):
    return -spec.beta * math.log(q)


@leading_tail.register
def _(spec: Normal, y):
    # Mills-ratio tail, measured from the mean
    z = (y - spec.mu) / spec.sigma
    return math.exp(-0.5 * z * z) / (z * math.sqrt(2 * math.pi))


@leading_tail_inverse.register
def _(spec: Normal, q):
    # z e^{z^2/2} = 1/(q sqrt(2 pi))  <=>  z^2 e^{z^2} = 1/(2 pi q^2)
    return spec.mu + spec.sigma * math.sqrt(lambert_w(1.0 / (2 * math.pi * q * q)))


@leading_tail.register
def _(spec: Gamma, y):
    x = y / spec.beta
    return math.exp((spec.alpha - 1) * math.log(x) - x - math.lgamma(spec.alpha))


@leading_tail_inverse.register
def _(spec: Gamma, q):
    # x - (alpha - 1) log x = -log(q Gamma(alpha)), on the decreasing branch of
    # x^(alpha-1) e^-x; NaN when q is above that branch's maximum.
    a = spec.alpha
    target = -math.log(q) - math.lgamma(a)
    lo = max(a - 1.0, 0.0)

    def g(x):
        return x - (a - 1.0) * math.log(x) - target if x > 0 else -math.inf

    if lo > 0 and g(lo) > 0:
        return math.nan
    if lo == 0.0:
        lo = 1e-300
        if g(lo) > 0:
            return math.nan
    hi = max(2.0 * lo, 1.0)
    while g(hi) < 0:
        hi *= 2.0
    x = optimize.brentq(g, lo, hi, xtol=1e-300, rtol=4 * 2.23e-16, maxiter=200)
    return spec.beta * x


@leading_tail.register
def _(spec: Weibull, y):
    return math.exp(-(y / spec.beta) ** spec.k)


@leading_tail_inverse.register
def _(spec: Weibull, q):
    return spec.beta * (-math.log(q)) ** (1.0 / spec.k)


@leading_tail.register
def _(spec: Pareto, y):
    return (spec.beta / y) ** spec.alpha


@leading_tail_inverse.register
def _(spec: Pareto, q):
    return spec.beta * q ** (-1.0 / spec.alpha)


@leading_tail.register
def _(spec: Uniform, y):
    return (spec.b - y) / (spec.b - spec.a)


@leading_tail_inverse.register
def _(spec: Uniform, q):
    return spec.b - q * (spec.b - spec.a)


@leading_tail.register
def _(spec: Triangular, y):
    return (spec.b - y) ** 2 / ((spec.b - spec.a) * (spec.b - spec.c))


@leading_tail_inverse.register
def _(spec: Triangular, q):
    return spec.b - math.sqrt(q * (spec.b - spec.a) * (spec.b - spec.c))


@leading_tail.register
def _(spec: Wigner, y):
    R = spec.radius
    return 4 * math.sqrt(2) * (R - y) ** 1.5 / (3 * math.pi * R ** 1.5)


@leading_tail_inverse.register
def _(spec: Wigner, q):
    R = spec.radius
    return R - R * (3 * math.pi * q / (4 * math.sqrt(2))) ** (2.0 / 3.0)


@leading_tail.register
def _(spec: Beta, y):
    return (1 - y) ** spec.beta / (spec.beta * special.beta(spec.alpha, spec.beta))


@leading_tail_inverse.register
def _(spec: Beta, q):
    return 1.0 - (q * spec.beta * special.beta(spec.alpha, spec.beta)) ** (1.0 / spec.beta)


@leading_tail.register
def _(spec: Geometric, y):
    return math.exp(y * math.log1p(-spec.p))


@leading_tail_inverse.register
def _(spec: Geometric, q):
    return math.log(q) / math.log1p(-spec.p)


def asymptotic_value(spec: Distribution, n: int) -> float:
    """Leading-order approximation to v_n, i.e. ``h0^{-1}(lam / n)``."""
    if n < 2:
        raise ValueError(f"asymptotic_value needs n >= 2, got {n}")
    lam = spec.tail_class().lam
    return float(leading_tail_inverse(spec, lam / n))


# --------------------------------------------------------------------------
# Closed forms as printed in the reference tables
# --------------------------------------------------------------------------

@singledispatch
def tabulated_value(spec, n):
    """Large-n form of v_n as tabulated for the family.

    These are kept as test vectors.  Two rows do not follow from the generic
    construction: the beta row (its constant is ``B/(beta+1)`` instead of
    ``(beta+1) B``) and the gamma row (which inverts ``x^(alpha-1) e^x``
    rather than ``x^(1-alpha) e^x``; the two agree only to leading order).
    The Wigner row carries no radius in its correction term and matches the
    generic result only at ``radius = 1``.
    """
    raise TypeError(f"no tabulated form for {type(spec).__name__}")


@tabulated_value.register
def _(spec: Exponential, n):
    return spec.beta * math.log(n)


@tabulated_value.register
def _(spec: Normal, n):
    return spec.mu + spec.sigma * math.sqrt(lambert_w(n * n / (2 * math.pi)))


@tabulated_value.register
def _(spec: Gamma, n):
    a = spec.alpha
    arg = (n / math.gamma(a)) ** (1.0 / (a - 1)) / (a - 1)
    try:
        return spec.beta * (a - 1) * lambert_w(arg)
    except ValueError:
        return math.nan


@tabulated_value.register
def _(spec: Weibull, n):
    return spec.beta * math.log(n) ** (1.0 / spec.k)


@tabulated_value.register
def _(spec: Pareto, n):
    a = spec.alpha
    return spec.beta * (a / (a - 1)) ** (1.0 / a) * n ** (1.0 / a)


@tabulated_value.register
def _(spec: Uniform, n):
    return spec.b - 2 * (spec.b - spec.a) / n


@tabulated_value.register
def _(spec: Triangular, n):
    return spec.b - math.sqrt(3 * (spec.b - spec.a) * (spec.b - spec.c) / (2 * n))


@tabulated_value.register
def _(spec: Wigner, n):
    return spec.radius - 0.5 * (5 * math.pi / (2 * n)) ** (2.0 / 3.0)


@tabulated_value.register
def _(spec: Beta, n):
    B = special.beta(spec.alpha, spec.beta)
    return 1.0 - (B / ((spec.beta + 1) * n)) ** (1.0 / spec.beta)


@tabulated_value.register
def _(spec: Geometric, n):
    L = abs(math.log1p(-spec.p))
    return math.log(L * n / spec.p) / L


# --------------------------------------------------------------------------
# Stopping-time statistics
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class AsymptoticStats:
    N: int
    lam: float
    expectation: float
    variance: float


def stats_for_lambda(lam: float, N: int) -> AsymptoticStats:
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    return AsymptoticStats(N=N, lam=lam, expectation=N / (lam + 1),
                           variance=lam * N * N / ((lam + 1) ** 2 * (lam + 2)))


def asymptotic_stats(spec: Distribution, N: int) -> AsymptoticStats:
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return stats_for_lambda(spec.tail_class().lam, N)
