"""Distribution zoo for the full-information stopping problem.

Every family is a frozen dataclass exposing the density, distribution and
survival functions, the inverse survival function, the mean, a sampler and the
classification of its upper tail.  Parameters are validated on construction.
"""

import math
from dataclasses import dataclass, fields, asdict
from typing import ClassVar

import numpy as np
from scipy import optimize, special


class ParameterError(ValueError):
    """Invalid distribution parameters or an unparsable distribution string."""


# --------------------------------------------------------------------------
# Tail classification
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TailClass:
    """Upper-tail behaviour of a distribution, summarised by ``lam``."""

    kind: ClassVar[str] = "abstract"

    @property
    def lam(self) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class ExponentialTail(TailClass):
    kind: ClassVar[str] = "exponential"

    @property
    def lam(self):
        return 1.0


@dataclass(frozen=True)
class AlgebraicTail(TailClass):
    b: float
    kind: ClassVar[str] = "algebraic"

    def __post_init__(self):
        if not self.b > 1:
            raise ParameterError(f"algebraic decay power must exceed 1, got {self.b}")

    @property
    def lam(self):
        return (self.b - 1) / self.b


@dataclass(frozen=True)
class FiniteBoundTail(TailClass):
    b: float
    y_max: float
    kind: ClassVar[str] = "finite-bound"

    def __post_init__(self):
        if not self.b > 0:
            raise ParameterError(f"approach power must be positive, got {self.b}")

    @property
    def lam(self):
        return (self.b + 1) / self.b


@dataclass(frozen=True)
class DiscreteGeometric(TailClass):
    p: float
    kind: ClassVar[str] = "discrete-geometric"

    @property
    def lam(self):
        return self.p / abs(math.log1p(-self.p))


# --------------------------------------------------------------------------
# Families
# --------------------------------------------------------------------------

def _require(cond, msg):
    if not cond:
        raise ParameterError(msg)


def _finite(*values):
    return all(math.isfinite(v) for v in values)


@dataclass(frozen=True)
class Distribution:
    """Base class; subclasses set ``family``, ``lower`` and ``upper``."""

    family: ClassVar[str] = ""
    discrete: ClassVar[bool] = False

    @property
    def lower(self) -> float:
        raise NotImplementedError

    @property
    def upper(self) -> float:
        raise NotImplementedError

    @property
    def params(self) -> dict:
        return asdict(self)

    def cdf(self, y):
        return 1.0 - self.survival(y)

    def _survival_root(self, q):
        # Bracketed root of survival(y) - q; used where no inverse is closed form.
        lo, hi = self.lower, self.upper
        if not math.isfinite(lo):
            lo = -1.0
            while self.survival(lo) < q:
                lo *= 2.0
        if not math.isfinite(hi):
            hi = max(1.0, 2.0 * abs(lo))
            while self.survival(hi) > q:
                hi *= 2.0
        return optimize.brentq(lambda y: float(self.survival(y)) - q, lo, hi,
                               xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=200)

    def survival_inverse(self, q: float) -> float:
        """Return ``y`` such that ``survival(y) == q`` for ``0 < q < 1``."""
        if not 0.0 < q < 1.0:
            raise ValueError(f"survival_inverse needs 0 < q < 1, got {q}")
        return float(self._inverse(q))

    def _inverse(self, q):
        return self._survival_root(q)

    def sample(self, rng) -> float:
        """Draw one variate; ``rng`` needs at least a ``random()`` method."""
        return float(self._inverse_transform(rng.random()))

    def sample_many(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return np.asarray(self._inverse_transform(rng.random(size)), dtype=float)

    def _inverse_transform(self, u):
        # u in [0, 1); 1 - u lies in (0, 1] so the closed forms never see 0
        return self._inverse(1.0 - np.asarray(u, dtype=float))

    def __str__(self):
        args = ",".join(f"{f.name}={getattr(self, f.name):g}" for f in fields(self))
        return f"{self.family}:{args}"


@dataclass(frozen=True)
class Exponential(Distribution):
    beta: float = 1.0
    family: ClassVar[str] = "exponential"

    def __post_init__(self):
        _require(_finite(self.beta) and self.beta > 0, f"exponential scale beta must be > 0, got {self.beta}")

    lower = property(lambda self: 0.0)
    upper = property(lambda self: math.inf)

    def pdf(self, y):
        y = np.asarray(y, dtype=float)
        return np.where(y >= 0, np.exp(-np.maximum(y, 0) / self.beta) / self.beta, 0.0)

    def survival(self, y):
        y = np.asarray(y, dtype=float)
        return np.exp(-np.maximum(y, 0.0) / self.beta)

    def _inverse(self, q):
        return -self.beta * np.log(q)

    def mean(self):
        return self.beta

    def tail_class(self):
        return ExponentialTail()


@dataclass(frozen=True)
class Normal(Distribution):
    mu: float = 0.0
    sigma: float = 1.0
    family: ClassVar[str] = "normal"

    def __post_init__(self):
        _require(_finite(self.mu), f"normal location mu must be finite, got {self.mu}")
        _require(_finite(self.sigma) and self.sigma > 0, f"normal scale sigma must be > 0, got {self.sigma}")

    lower = property(lambda self: -math.inf)
    upper = property(lambda self: math.inf)

    def pdf(self, y):
        z = (np.asarray(y, dtype=float) - self.mu) / self.sigma
        return np.exp(-0.5 * z * z) / (self.sigma * math.sqrt(2 * math.pi))

    def survival(self, y):
        z = (np.asarray(y, dtype=float) - self.mu) / self.sigma
        return 0.5 * special.erfc(z / math.sqrt(2.0))

    def _inverse(self, q):
        # ndtri is accurate in both tails, so use the symmetric form
        return self.mu - self.sigma * special.ndtri(q)

    def sample(self, rng):
        return self.mu + self.sigma * float(rng.standard_normal())

    def sample_many(self, rng, size):
        return self.mu + self.sigma * rng.standard_normal(size)

    def mean(self):
        return self.mu

    def tail_class(self):
        return ExponentialTail()


@dataclass(frozen=True)
class Gamma(Distribution):
    alpha: float
    beta: float = 1.0
    family: ClassVar[str] = "gamma"

    def __post_init__(self):
        _require(_finite(self.alpha) and self.alpha > 0, f"gamma shape alpha must be > 0, got {self.alpha}")
        _require(self.alpha != 1, "gamma with alpha = 1 is the exponential distribution; use exponential")
        _require(_finite(self.beta) and self.beta > 0, f"gamma scale beta must be > 0, got {self.beta}")

    lower = property(lambda self: 0.0)
    upper = property(lambda self: math.inf)

    def pdf(self, y):
        x = np.asarray(y, dtype=float) / self.beta
        with np.errstate(divide="ignore", invalid="ignore"):
            logf = (self.alpha - 1) * np.log(x) - x - math.lgamma(self.alpha) - math.log(self.beta)
            return np.where(x > 0, np.exp(logf), 0.0)

    def survival(self, y):
        x = np.maximum(np.asarray(y, dtype=float) / self.beta, 0.0)
        return special.gammaincc(self.alpha, x)

    def sample(self, rng):
        return self.beta * float(rng.standard_gamma(self.alpha))

    def sample_many(self, rng, size):
        return self.beta * rng.standard_gamma(self.alpha, size)

    def mean(self):
        return self.alpha * self.beta

    def tail_class(self):
        return ExponentialTail()


@dataclass(frozen=True)
class Weibull(Distribution):
    k: float
    beta: float = 1.0
    family: ClassVar[str] = "weibull"

    def __post_init__(self):
        _require(_finite(self.k) and self.k > 0, f"weibull shape k must be > 0, got {self.k}")
        _require(_finite(self.beta) and self.beta > 0, f"weibull scale beta must be > 0, got {self.beta}")

    lower = property(lambda self: 0.0)
    upper = property(lambda self: math.inf)

    def pdf(self, y):
        x = np.asarray(y, dtype=float) / self.beta
        xp = np.maximum(x, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(x > 0, self.k / self.beta * xp ** (self.k - 1) * np.exp(-xp ** self.k), 0.0)

    def survival(self, y):
        x = np.maximum(np.asarray(y, dtype=float), 0.0) / self.beta
        return np.exp(-x ** self.k)

    def _inverse(self, q):
        return self.beta * (-np.log(q)) ** (1.0 / self.k)

    def mean(self):
        return self.beta * math.gamma(1 + 1 / self.k)

    def tail_class(self):
        return ExponentialTail()


@dataclass(frozen=True)
class Pareto(Distribution):
    alpha: float
    beta: float = 1.0
    family: ClassVar[str] = "pareto"

    def __post_init__(self):
        _require(_finite(self.alpha) and self.alpha > 1,
                 f"pareto tail index alpha must be > 1 so that the tail is o(1/y), got {self.alpha}")
        _require(_finite(self.beta) and self.beta > 0, f"pareto minimum beta must be > 0, got {self.beta}")

    lower = property(lambda self: self.beta)
    upper = property(lambda self: math.inf)

    def pdf(self, y):
        y = np.asarray(y, dtype=float)
        ys = np.maximum(y, self.beta)
        return np.where(y >= self.beta, self.alpha * self.beta ** self.alpha / ys ** (self.alpha + 1), 0.0)

    def survival(self, y):
        y = np.maximum(np.asarray(y, dtype=float), self.beta)
        return (self.beta / y) ** self.alpha

    def _inverse(self, q):
        return self.beta * q ** (-1.0 / self.alpha)

    def mean(self):
        return self.alpha * self.beta / (self.alpha - 1)

    def tail_class(self):
        return AlgebraicTail(b=self.alpha)


@dataclass(frozen=True)
class Uniform(Distribution):
    a: float = 0.0
    b: float = 1.0
    family: ClassVar[str] = "uniform"

    def __post_init__(self):
        _require(_finite(self.a, self.b) and self.a < self.b, f"uniform needs a < b, got a={self.a}, b={self.b}")

    lower = property(lambda self: self.a)
    upper = property(lambda self: self.b)

    def pdf(self, y):
        y = np.asarray(y, dtype=float)
        return np.where((y >= self.a) & (y <= self.b), 1.0 / (self.b - self.a), 0.0)

    def survival(self, y):
        y = np.asarray(y, dtype=float)
        return np.clip((self.b - y) / (self.b - self.a), 0.0, 1.0)

    def _inverse(self, q):
        return self.b - q * (self.b - self.a)

    def _inverse_transform(self, u):
        # lower-tail form so that a stream emitting u returns a + (b - a) u
        return self.a + u * (self.b - self.a)

    def mean(self):
        return 0.5 * (self.a + self.b)

    def tail_class(self):
        return FiniteBoundTail(b=1.0, y_max=self.b)


@dataclass(frozen=True)
class Triangular(Distribution):
    a: float
    c: float
    b: float
    family: ClassVar[str] = "triangular"

    def __post_init__(self):
        _require(_finite(self.a, self.b, self.c) and self.a < self.c < self.b,
                 f"triangular needs a < c < b, got a={self.a}, c={self.c}, b={self.b}")

    lower = property(lambda self: self.a)
    upper = property(lambda self: self.b)

    def pdf(self, y):
        a, b, c = self.a, self.b, self.c
        y = np.asarray(y, dtype=float)
        rising = 2 * (y - a) / ((b - a) * (c - a))
        falling = 2 * (b - y) / ((b - a) * (b - c))
        return np.where((y < a) | (y > b), 0.0, np.where(y <= c, rising, falling))

    def survival(self, y):
        a, b, c = self.a, self.b, self.c
        y = np.clip(np.asarray(y, dtype=float), a, b)
        low = 1.0 - (y - a) ** 2 / ((b - a) * (c - a))
        high = (b - y) ** 2 / ((b - a) * (b - c))
        return np.where(y <= c, low, high)

    def _inverse(self, q):
        a, b, c = self.a, self.b, self.c
        q = np.asarray(q, dtype=float)
        split = (b - c) / (b - a)
        with np.errstate(invalid="ignore"):
            return np.where(q <= split, b - np.sqrt(q * (b - a) * (b - c)),
                            a + np.sqrt((1 - q) * (b - a) * (c - a)))

    def mean(self):
        return (self.a + self.b + self.c) / 3.0

    def tail_class(self):
        return FiniteBoundTail(b=2.0, y_max=self.b)


@dataclass(frozen=True)
class Wigner(Distribution):
    """Semicircle law on ``[-radius, radius]``."""

    radius: float = 1.0
    family: ClassVar[str] = "wigner"

    def __post_init__(self):
        _require(_finite(self.radius) and self.radius > 0, f"wigner radius must be > 0, got {self.radius}")

    lower = property(lambda self: -self.radius)
    upper = property(lambda self: self.radius)

    def pdf(self, y):
        R = self.radius
        y = np.asarray(y, dtype=float)
        return 2.0 * np.sqrt(np.maximum(R * R - y * y, 0.0)) / (math.pi * R * R)

    def survival(self, y):
        # 1/2 - t sqrt(1-t^2)/pi - arcsin(t)/pi, with arcsin = pi/2 - arccos
        # to keep precision near the upper bound
        t = np.clip(np.asarray(y, dtype=float) / self.radius, -1.0, 1.0)
        return (np.arccos(t) - t * np.sqrt((1 - t) * (1 + t))) / math.pi

    def sample(self, rng):
        # x-coordinate of a uniform point in the disc
        while True:
            u, v = 2.0 * rng.random() - 1.0, 2.0 * rng.random() - 1.0
            if u * u + v * v <= 1.0:
                return self.radius * u

    def sample_many(self, rng, size):
        out = np.empty(0)
        while out.size < size:
            uv = 2.0 * rng.random((2 * (size - out.size) + 16, 2)) - 1.0
            inside = uv[(uv ** 2).sum(axis=1) <= 1.0, 0]
            out = np.concatenate([out, inside])
        return self.radius * out[:size]

    def mean(self):
        return 0.0

    def tail_class(self):
        return FiniteBoundTail(b=1.5, y_max=self.radius)


@dataclass(frozen=True)
class Beta(Distribution):
    alpha: float
    beta: float
    family: ClassVar[str] = "beta"

    def __post_init__(self):
        _require(_finite(self.alpha) and self.alpha > 0, f"beta shape alpha must be > 0, got {self.alpha}")
        _require(_finite(self.beta) and self.beta > 0, f"beta shape beta must be > 0, got {self.beta}")

    lower = property(lambda self: 0.0)
    upper = property(lambda self: 1.0)

    def pdf(self, y):
        y = np.asarray(y, dtype=float)
        inside = (y > 0) & (y < 1)
        ys = np.where(inside, y, 0.5)
        logf = (self.alpha - 1) * np.log(ys) + (self.beta - 1) * np.log1p(-ys) - special.betaln(self.alpha, self.beta)
        return np.where(inside, np.exp(logf), 0.0)

    def survival(self, y):
        y = np.clip(np.asarray(y, dtype=float), 0.0, 1.0)
        return special.betaincc(self.alpha, self.beta, y)

    def sample(self, rng):
        return float(rng.beta(self.alpha, self.beta))

    def sample_many(self, rng, size):
        return rng.beta(self.alpha, self.beta, size)

    def mean(self):
        return self.alpha / (self.alpha + self.beta)

    def tail_class(self):
        return FiniteBoundTail(b=self.beta, y_max=1.0)


@dataclass(frozen=True)
class Geometric(Distribution):
    """Geometric law on ``{1, 2, ...}`` with success probability ``p``.

    ``survival`` is the continuous extension ``(1 - p)**y`` (equal to
    ``P(Y > y)`` at integers); ``prob_at_least`` is the exact ``P(Y >= y)``
    for real ``y`` and is what the exact stopping statistics use.
    """

    p: float
    family: ClassVar[str] = "geometric"
    discrete: ClassVar[bool] = True

    def __post_init__(self):
        _require(_finite(self.p) and 0 < self.p < 1, f"geometric needs 0 < p < 1, got {self.p}")

    lower = property(lambda self: 1.0)
    upper = property(lambda self: math.inf)

    @property
    def _log_fail(self):
        return math.log1p(-self.p)

    def pdf(self, y):
        """Probability mass at integer ``y``; zero elsewhere."""
        y = np.asarray(y, dtype=float)
        is_int = (y == np.floor(y)) & (y >= 1)
        return np.where(is_int, self.p * np.exp((np.maximum(y, 1) - 1) * self._log_fail), 0.0)

    def survival(self, y):
        y = np.maximum(np.asarray(y, dtype=float), 0.0)
        return np.exp(y * self._log_fail)

    def prob_at_least(self, y):
        k = np.maximum(np.ceil(np.asarray(y, dtype=float)), 1.0)
        return np.exp((k - 1) * self._log_fail)

    def _inverse(self, q):
        return np.log(q) / self._log_fail

    def _inverse_transform(self, u):
        # P(Y >= k) = (1-p)^(k-1); u in [0, 1) is mapped to (0, 1]
        return np.floor(np.log1p(-np.asarray(u, dtype=float)) / self._log_fail) + 1.0

    def mean(self):
        return 1.0 / self.p

    def tail_class(self):
        return DiscreteGeometric(p=self.p)


FAMILIES = {cls.family: cls for cls in
            (Exponential, Normal, Gamma, Weibull, Pareto, Uniform, Triangular, Wigner, Beta, Geometric)}

_KEY_ALIASES = {"wigner": {"r": "radius"}}


def parse_spec(text: str) -> Distribution:
    """Parse ``family:key=value,...`` (e.g. ``pareto:alpha=2,beta=1``)."""
    family, _, rest = text.strip().partition(":")
    family = family.strip().lower()
    if family not in FAMILIES:
        raise ParameterError(f"unknown distribution family {family!r}; expected one of {sorted(FAMILIES)}")
    cls = FAMILIES[family]
    allowed = {f.name.lower(): f.name for f in fields(cls)}
    allowed.update(_KEY_ALIASES.get(family, {}))
    kwargs = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, sep, value = item.partition("=")
        key = key.strip().lower()
        if not sep:
            raise ParameterError(f"malformed parameter {item!r} (expected key=value)")
        if key not in allowed:
            raise ParameterError(f"unknown key {key!r} for {family}; allowed: {sorted(allowed)}")
        try:
            kwargs[allowed[key]] = float(value)
        except ValueError:
            raise ParameterError(f"value for key {key!r} is not a number: {value!r}") from None
    try:
        return cls(**kwargs)
    except TypeError as exc:
        raise ParameterError(f"{family}: {exc}") from None


# One representative per family; used by the CLI, convergence checks and tests.
ZOO = (
    Exponential(beta=1.0),
    Normal(mu=0.0, sigma=1.0),
    Gamma(alpha=2.0, beta=1.0),
    Weibull(k=2.0, beta=1.0),
    Pareto(alpha=2.0, beta=1.0),
    Uniform(a=0.0, b=1.0),
    Triangular(a=0.0, c=0.5, b=1.0),
    Wigner(radius=1.0),
    Beta(alpha=2.0, beta=1.0),
    Geometric(p=0.5),
)
