"""Seeded Monte Carlo estimates of E(tau_N) and Var(tau_N).

Each replica draws from its own xoshiro256** stream whose state is derived
from ``(seed, replica index)`` alone, so results do not depend on how replicas
are split across worker threads.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numba
import numpy as np

from .distributions import (Beta, Distribution, Exponential, Gamma, Geometric, Normal, Pareto,
                            Triangular, Uniform, Weibull, Wigner)
from .value_recurrence import ValueSequence, value_sequence


@dataclass(frozen=True)
class SimulationConfig:
    spec: Distribution
    N: int
    replicas: int
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if self.replicas < 1:
            raise ValueError(f"replicas must be >= 1, got {self.replicas}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class SimulationEstimate:
    mean_tau: float
    var_tau: float
    stderr_mean: float
    stderr_var: float
    replicas: int
    seed: int


def simulate_once(spec: Distribution, vs: ValueSequence, rng, N: int = None) -> int:
    """Play one episode with ``spec.sample(rng)`` draws; returns the stopping index."""
    N = vs.N if N is None else N
    if N > 1 and vs.N < N - 1:
        raise ValueError(f"need thresholds v_1..v_{N - 1}, have {vs.N}")
    for m in range(1, N):
        if spec.sample(rng) >= vs[N - m]:
            return m
    return N


# --------------------------------------------------------------------------
# Compiled kernel
# --------------------------------------------------------------------------

_U64 = np.uint64
_TWO_M53 = 1.0 / 9007199254740992.0


@numba.njit(cache=True)
def _mix64(z):
    z = (z ^ (z >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U64(27))) * _U64(0x94D049BB133111EB)
    return z ^ (z >> _U64(31))


@numba.njit(cache=True)
def _seed_stream(seed, replica, s):
    key = _mix64(_mix64(seed + _U64(0x9E3779B97F4A7C15)) ^ (replica * _U64(0xD1B54A32D192ED03)))
    for j in range(4):
        key += _U64(0x9E3779B97F4A7C15)
        s[j] = _mix64(key)


@numba.njit(cache=True)
def _rotl(x, k):
    return (x << _U64(k)) | (x >> _U64(64 - k))


@numba.njit(cache=True)
def _uniform(s):
    # xoshiro256**, mapped to the open interval (0, 1)
    result = _rotl(s[1] * _U64(5), 7) * _U64(9)
    t = s[1] << _U64(17)
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], 45)
    return (float(result >> _U64(11)) + 0.5) * _TWO_M53


@numba.njit(cache=True)
def _std_normal(s, spare):
    # polar Box-Muller; the second variate is kept in spare[0]
    if spare[1] != 0.0:
        spare[1] = 0.0
        return spare[0]
    while True:
        u = 2.0 * _uniform(s) - 1.0
        v = 2.0 * _uniform(s) - 1.0
        r2 = u * u + v * v
        if 0.0 < r2 < 1.0:
            f = math.sqrt(-2.0 * math.log(r2) / r2)
            spare[0] = v * f
            spare[1] = 1.0
            return u * f


@numba.njit(cache=True)
def _erlang(k, s):
    # sum of k unit exponentials
    prod = 1.0
    for _ in range(k):
        prod *= _uniform(s)
    return -math.log(prod)


@numba.njit(cache=True)
def _std_gamma(a, s, spare):
    if a == math.floor(a) and a <= 8.0:
        return _erlang(int(a), s)
    # Marsaglia-Tsang; shapes below one are boosted by u^(1/a)
    boost = a < 1.0
    d = (a + 1.0 if boost else a) - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    while True:
        x = _std_normal(s, spare)
        v = 1.0 + c * x
        if v <= 0.0:
            continue
        v = v * v * v
        u = _uniform(s)
        x2 = x * x
        if u < 1.0 - 0.0331 * x2 * x2:
            break
        if math.log(u) < 0.5 * x2 + d - d * v + d * math.log(v):
            break
    if boost:
        return d * v * math.exp(math.log(_uniform(s)) / a)
    return d * v


# One sampler per family; ``prm`` layouts are built by _KERNEL_PARAMS.

@numba.njit(cache=True)
def _draw_exponential(prm, s, spare):
    return -prm[0] * math.log(_uniform(s))


@numba.njit(cache=True)
def _draw_normal(prm, s, spare):
    return prm[0] + prm[1] * _std_normal(s, spare)


@numba.njit(cache=True)
def _draw_erlang(prm, s, spare):
    return prm[1] * _erlang(int(prm[0]), s)


@numba.njit(cache=True)
def _draw_gamma(prm, s, spare):
    return prm[1] * _std_gamma(prm[0], s, spare)


@numba.njit(cache=True)
def _draw_weibull(prm, s, spare):
    return prm[1] * math.exp(math.log(-math.log(_uniform(s))) * prm[2])


@numba.njit(cache=True)
def _draw_pareto(prm, s, spare):
    return prm[1] * math.exp(math.log(_uniform(s)) * prm[2])


@numba.njit(cache=True)
def _draw_uniform(prm, s, spare):
    return prm[0] + (prm[1] - prm[0]) * _uniform(s)


@numba.njit(cache=True)
def _draw_triangular(prm, s, spare):
    a, c, b = prm[0], prm[1], prm[2]
    q = _uniform(s)
    if q <= (b - c) / (b - a):
        return b - math.sqrt(q * (b - a) * (b - c))
    return a + math.sqrt((1.0 - q) * (b - a) * (c - a))


@numba.njit(cache=True)
def _draw_wigner(prm, s, spare):
    # x-coordinate of a uniform point in the disc
    while True:
        u = 2.0 * _uniform(s) - 1.0
        v = 2.0 * _uniform(s) - 1.0
        if u * u + v * v <= 1.0:
            return prm[0] * u


# Separate beta samplers: a rejection branch left in the same function slows
# the cheap inverse-transform cases several-fold.

@numba.njit(cache=True)
def _draw_beta_power(prm, s, spare):
    # beta == 1
    return math.exp(math.log(_uniform(s)) / prm[0])


@numba.njit(cache=True)
def _draw_beta_reflected(prm, s, spare):
    # alpha == 1
    return 1.0 - math.exp(math.log(_uniform(s)) / prm[1])


@numba.njit(cache=True)
def _draw_beta(prm, s, spare):
    x = _std_gamma(prm[0], s, spare)
    y = _std_gamma(prm[1], s, spare)
    return x / (x + y)


@numba.njit(cache=True)
def _draw_geometric(prm, s, spare):
    return math.floor(math.log(_uniform(s)) * prm[1]) + 1.0


@numba.njit(cache=True, nogil=True)
def _run_replicas(draw, prm, thresholds, N, seed, start, stop, out):
    # thresholds[m - 1] is v_{N-m}; step N always stops
    s = np.empty(4, dtype=np.uint64)
    spare = np.zeros(2)
    for r in range(start, stop):
        _seed_stream(seed, _U64(r), s)
        spare[1] = 0.0
        tau = N
        for m in range(N - 1):
            if draw(prm, s, spare) >= thresholds[m]:
                tau = m + 1
                break
        out[r] = tau


@numba.njit(cache=True)
def _draw_batch(draw, prm, seed, size):
    s = np.empty(4, dtype=np.uint64)
    spare = np.zeros(2)
    _seed_stream(seed, _U64(0), s)
    out = np.empty(size)
    for i in range(size):
        out[i] = draw(prm, s, spare)
    return out


def _gamma_kernel(d):
    if d.alpha == math.floor(d.alpha) and d.alpha <= 8:
        return _draw_erlang
    return _draw_gamma


def _beta_kernel(d):
    if d.beta == 1:
        return _draw_beta_power
    if d.alpha == 1:
        return _draw_beta_reflected
    return _draw_beta


# family -> (sampler chooser, parameter vector)
_KERNEL_PARAMS = {
    Exponential: (lambda d: _draw_exponential, lambda d: (d.beta,)),
    Normal: (lambda d: _draw_normal, lambda d: (d.mu, d.sigma)),
    Gamma: (_gamma_kernel, lambda d: (d.alpha, d.beta)),
    Weibull: (lambda d: _draw_weibull, lambda d: (d.k, d.beta, 1.0 / d.k)),
    Pareto: (lambda d: _draw_pareto, lambda d: (d.alpha, d.beta, -1.0 / d.alpha)),
    Uniform: (lambda d: _draw_uniform, lambda d: (d.a, d.b)),
    Triangular: (lambda d: _draw_triangular, lambda d: (d.a, d.c, d.b)),
    Wigner: (lambda d: _draw_wigner, lambda d: (d.radius,)),
    Beta: (_beta_kernel, lambda d: (d.alpha, d.beta)),
    Geometric: (lambda d: _draw_geometric, lambda d: (d.p, 1.0 / math.log1p(-d.p))),
}


def _kernel_params(spec):
    choose, get = _KERNEL_PARAMS[type(spec)]
    return choose(spec), np.array(get(spec), dtype=float)


def kernel_samples(spec: Distribution, seed: int, size: int) -> np.ndarray:
    """Variates from the compiled sampler (replica 0 of ``seed``), for checking it."""
    draw, prm = _kernel_params(spec)
    return _draw_batch(draw, prm, _U64(seed), size)


def simulate_taus(config: SimulationConfig, vs: ValueSequence = None) -> np.ndarray:
    """Stopping index of every replica, in replica order."""
    N = config.N
    if vs is None:
        vs = value_sequence(config.spec, max(N - 1, 1))
    thresholds = np.ascontiguousarray(vs.values[:max(N - 1, 0)][::-1])
    if thresholds.size < N - 1:
        raise ValueError(f"need thresholds v_1..v_{N - 1}, have {vs.N}")
    draw, prm = _kernel_params(config.spec)
    out = np.empty(config.replicas, dtype=np.int64)
    bounds = np.linspace(0, config.replicas, min(config.workers, config.replicas) + 1).astype(np.int64)
    seed = _U64(config.seed)
    jobs = list(zip(bounds[:-1], bounds[1:]))
    if len(jobs) == 1:
        _run_replicas(draw, prm, thresholds, N, seed, 0, config.replicas, out)
    else:
        with ThreadPoolExecutor(max_workers=len(jobs)) as pool:
            futures = [pool.submit(_run_replicas, draw, prm, thresholds, N, seed, lo, hi, out)
                       for lo, hi in jobs]
            for f in futures:
                f.result()
    return out


def summarize(taus: np.ndarray, seed: int) -> SimulationEstimate:
    x = np.asarray(taus, dtype=float)
    n = x.size
    mean = float(x.mean())
    if n < 2:
        return SimulationEstimate(mean, 0.0, 0.0, 0.0, n, seed)
    dev = x - mean
    m2 = float(np.mean(dev ** 2))
    m4 = float(np.mean(dev ** 4))
    var = m2 * n / (n - 1)
    # large-sample standard error of the unbiased variance
    var_of_var = max(m4 - var * var * (n - 3) / (n - 1), 0.0) / n
    return SimulationEstimate(mean_tau=mean, var_tau=var, stderr_mean=math.sqrt(var / n),
                              stderr_var=math.sqrt(var_of_var), replicas=n, seed=seed)


def simulate(config: SimulationConfig, vs: ValueSequence = None) -> SimulationEstimate:
    return summarize(simulate_taus(config, vs), config.seed)
