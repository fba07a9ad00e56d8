"""Independent reference computations used to freeze test constants.

Everything here runs in mpmath with its own survival functions and its own
quadrature, sharing no code with the package.  ``python3 tests/oracles.py``
prints the frozen values used by the test modules.
"""

import itertools

import mpmath as mp

mp.mp.dps = 40


def survival(family, params, y):
    """h(y) = P(Y >= y), written out per family."""
    y = mp.mpf(y)
    p = {k: mp.mpf(v) for k, v in params.items()}
    if family == "exponential":
        return mp.exp(-y / p["beta"]) if y > 0 else mp.mpf(1)
    if family == "normal":
        return mp.erfc((y - p["mu"]) / (p["sigma"] * mp.sqrt(2))) / 2
    if family == "gamma":
        return mp.gammainc(p["alpha"], y / p["beta"], mp.inf, regularized=True) if y > 0 else mp.mpf(1)
    if family == "weibull":
        return mp.exp(-(y / p["beta"]) ** p["k"]) if y > 0 else mp.mpf(1)
    if family == "pareto":
        return (p["beta"] / y) ** p["alpha"] if y > p["beta"] else mp.mpf(1)
    if family == "uniform":
        a, b = p["a"], p["b"]
        return mp.mpf(1) if y <= a else mp.mpf(0) if y >= b else (b - y) / (b - a)
    if family == "triangular":
        a, c, b = p["a"], p["c"], p["b"]
        if y <= a:
            return mp.mpf(1)
        if y >= b:
            return mp.mpf(0)
        if y <= c:
            return 1 - (y - a) ** 2 / ((b - a) * (c - a))
        return (b - y) ** 2 / ((b - a) * (b - c))
    if family == "wigner":
        R = p["radius"]
        if y <= -R:
            return mp.mpf(1)
        if y >= R:
            return mp.mpf(0)
        return mp.mpf(1) / 2 - y * mp.sqrt(R * R - y * y) / (mp.pi * R * R) - mp.asin(y / R) / mp.pi
    if family == "beta":
        if y <= 0:
            return mp.mpf(1)
        if y >= 1:
            return mp.mpf(0)
        return mp.betainc(p["alpha"], p["beta"], y, 1, regularized=True)
    raise ValueError(family)


UPPER = {"uniform": lambda p: p["b"], "triangular": lambda p: p["b"], "wigner": lambda p: p["radius"],
         "beta": lambda p: 1}
LOWER = {"exponential": lambda p: 0, "gamma": lambda p: 0, "weibull": lambda p: 0,
         "pareto": lambda p: p["beta"], "uniform": lambda p: p["a"], "triangular": lambda p: p["a"],
         "wigner": lambda p: -p["radius"], "beta": lambda p: 0, "normal": lambda p: -mp.inf}


def mean(family, params):
    lo = LOWER[family](params)
    hi = UPPER.get(family, lambda p: mp.inf)(params)
    # E Y = lo + int_lo^hi h(y) dy for lo finite; the normal mean is mu by symmetry
    if family == "normal":
        return mp.mpf(params["mu"])
    return mp.mpf(lo) + increment(family, params, lo)


def increment(family, params, v):
    """int_v^U h(y) dy."""
    if family == "geometric":
        q = 1 - mp.mpf(params["p"])
        return mp.nsum(lambda j: q ** (v + j), [0, mp.inf])
    hi = UPPER.get(family, lambda p: mp.inf)(params)
    pts = [v, hi]
    if family == "triangular" and v < params["c"]:
        pts = [v, params["c"], hi]
    return mp.quad(lambda y: survival(family, params, y), pts)


def values(family, params, n):
    """v_1..v_n from the defining recurrence."""
    if family == "geometric":
        v = 1 / mp.mpf(params["p"])
    else:
        v = mean(family, params)
    out = [v]
    for _ in range(n - 1):
        v = v + increment(family, params, v)
        out.append(v)
    return out


def pass_prob(family, params, v):
    """P(Y < v)."""
    if family == "geometric":
        q = 1 - mp.mpf(params["p"])
        k = int(mp.ceil(v))
        return 1 - q ** (k - 1)
    return 1 - survival(family, params, v)


def brute_force_moments(w):
    """E(tau), E(tau^2) by enumerating every accept/reject pattern.

    ``w[i]`` is the pass-over probability with ``i + 1`` draws left after the
    current one, i.e. step m (1-based) of N uses ``w[N - m - 1]``.
    """
    N = len(w) + 1
    E = E2 = mp.mpf(0)
    for pattern in itertools.product((0, 1), repeat=N - 1):
        prob, tau = mp.mpf(1), N
        for m, accept in enumerate(pattern, start=1):
            wi = w[N - m - 1]
            prob *= (1 - wi) if accept else wi
            if accept and tau == N:
                tau = m
        E += prob * tau
        E2 += prob * tau * tau
    return E, E2


def tau_distribution_moments(w):
    """E(tau), E(tau^2) from P(tau = m) built step by step (any N)."""
    N = len(w) + 1
    alive, E, E2 = mp.mpf(1), mp.mpf(0), mp.mpf(0)
    for m in range(1, N):
        wi = w[N - m - 1]
        stop = alive * (1 - wi)
        E += stop * m
        E2 += stop * m * m
        alive *= wi
    E += alive * N
    E2 += alive * N * N
    return E, E2


def lambert_w_bisect(x):
    lo, hi = mp.mpf(-1), mp.mpf(max(1, x))
    for _ in range(200):
        mid = (lo + hi) / 2
        if mid * mp.exp(mid) < x:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def bisect_decreasing(f, target, lo, hi):
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    for _ in range(200):
        mid = (lo + hi) / 2
        if f(mid) > target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


ZOO_PARAMS = (
    ("exponential", {"beta": 1}),
    ("normal", {"mu": 0, "sigma": 1}),
    ("gamma", {"alpha": 2, "beta": 1}),
    ("weibull", {"k": 2, "beta": 1}),
    ("pareto", {"alpha": 2, "beta": 1}),
    ("uniform", {"a": 0, "b": 1}),
    ("triangular", {"a": 0, "c": 0.5, "b": 1}),
    ("wigner", {"radius": 1}),
    ("beta", {"alpha": 2, "beta": 1}),
    ("geometric", {"p": 0.5}),
)


if __name__ == "__main__":
    print("survival normal 1.959964:", mp.nstr(survival("normal", {"mu": 0, "sigma": 1}, "1.959964"), 17))
    print("pareto inverse 0.01:", mp.nstr(bisect_decreasing(lambda y: survival("pareto", {"alpha": 2, "beta": 1}, y),
                                                            mp.mpf("0.01"), 1, 1000), 17))
    print("pareto mean:", mp.nstr(mean("pareto", {"alpha": 2, "beta": 1}), 17))
    print("lambert_w(1):", mp.nstr(lambert_w_bisect(1), 17))
    print("lambert_w(10):", mp.nstr(lambert_w_bisect(10), 17))
    print("lambert_w(-0.3):", mp.nstr(lambert_w_bisect(mp.mpf("-0.3")), 17))
    print("lambert_w(1e6):", mp.nstr(lambert_w_bisect(mp.mpf(10) ** 6), 17))
    for family, params in ZOO_PARAMS:
        vs = values(family, params, 8)
        w = [pass_prob(family, params, v) for v in vs[:-1]]
        E, E2 = brute_force_moments(w)
        print(family, "v_8 =", mp.nstr(vs[-1], 17), " N=8: E =", mp.nstr(E, 17), " E2 =", mp.nstr(E2, 17))
    # longer horizons
    vs = values("normal", {"mu": 0, "sigma": 1}, 512)
    w = [pass_prob("normal", {"mu": 0, "sigma": 1}, v) for v in vs[:-1]]
    E, E2 = tau_distribution_moments(w)
    print("normal N=512: v_512 =", mp.nstr(vs[-1], 17), " E =", mp.nstr(E, 17), " E2 =", mp.nstr(E2, 17))
    v = mp.mpf(1) / 2
    for n in range(1, 10 ** 4):
        v = v + (1 - v) ** 2 / 2
    print("uniform n=1e4: (1 - w_n) / (2/n) - 1 =", mp.nstr((1 - v) / (mp.mpf(2) / 10 ** 4) - 1, 17))
