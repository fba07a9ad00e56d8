"""Reference rows for the four summary tables, kept as printed.

Tables 1 and 3 give the large-n threshold ``v_n``; tables 2 and 4 give
``lambda``, ``E(tau_N)`` and ``Var(tau_N)``.  The printed expressions are
reproduced verbatim, including two variance entries in table 4 that disagree
with the general formula (uniform prints ``N^2/6`` where the formula gives
``N^2/18``, triangular prints ``12 N^2/125`` where it gives ``12 N^2/175``).
"""

from dataclasses import dataclass
from typing import Callable, Optional

from .asymptotics import asymptotic_value, stats_for_lambda, tabulated_value
from .distributions import Distribution, parse_spec
from .stopping_stats import exact_stats
from .value_recurrence import values_at

DEFAULT_N = 2 ** 14


@dataclass(frozen=True)
class StatsRow:
    spec: Distribution
    lam: float
    expectation: Callable[[int], float]
    variance: Callable[[int], float]


def _pareto_row(spec):
    a = spec.alpha
    return StatsRow(spec, (a - 1) / a,
                    lambda N: a * N / (2 * a - 1),
                    lambda N: a * a * (a - 1) * N * N / ((2 * a - 1) ** 2 * (3 * a - 1)))


def _beta_row(spec):
    b = spec.beta
    return StatsRow(spec, (b + 1) / b,
                    lambda N: b * N / (2 * b + 1),
                    lambda N: b * b * (b + 1) * N * N / ((2 * b + 1) ** 2 * (3 * b + 1)))


def _exp_class(spec_string):
    return StatsRow(parse_spec(spec_string), 1.0, lambda N: N / 2, lambda N: N * N / 12)


VALUE_TABLES = {
    1: tuple(parse_spec(s) for s in ("exponential:beta=1", "normal:mu=0,sigma=1", "gamma:alpha=2,beta=1",
                                     "weibull:k=2,beta=1", "pareto:alpha=2,beta=1")),
    3: tuple(parse_spec(s) for s in ("uniform:a=0,b=1", "triangular:a=0,c=0.5,b=1", "wigner:r=1",
                                     "beta:alpha=2,beta=1")),
}

STATS_TABLES = {
    2: (
        _exp_class("exponential:beta=1"),
        _exp_class("normal:mu=0,sigma=1"),
        _exp_class("gamma:alpha=2,beta=1"),
        _exp_class("weibull:k=2,beta=1"),
        _pareto_row(parse_spec("pareto:alpha=2,beta=1")),
    ),
    4: (
        StatsRow(parse_spec("uniform:a=0,b=1"), 2.0, lambda N: N / 3, lambda N: N * N / 6),
        StatsRow(parse_spec("triangular:a=0,c=0.5,b=1"), 1.5, lambda N: 2 * N / 5, lambda N: 12 * N * N / 125),
        StatsRow(parse_spec("wigner:r=1"), 5 / 3, lambda N: 3 * N / 8, lambda N: 45 * N * N / 704),
        _beta_row(parse_spec("beta:alpha=2,beta=1")),
    ),
}

TABLE_IDS = (1, 2, 3, 4)


def _relerr(value, reference):
    return value / reference - 1.0


def value_rows(table: int, N: int = DEFAULT_N, specs: Optional[tuple] = None) -> list:
    """Printed ``v_N``, the ``h0^{-1}(lam/N)`` value and the exact ``v_N`` per row."""
    rows = []
    for spec in specs if specs is not None else VALUE_TABLES[table]:
        exact = values_at(spec, [N])[N]
        printed = tabulated_value(spec, N)
        rows.append({
            "table": table,
            "dist": str(spec),
            "N": N,
            "printed": printed,
            "lambda_formula": asymptotic_value(spec, N),
            "exact": exact,
            "relerr": _relerr(exact, printed),
        })
    return rows


def stats_rows(table: int, N: int = DEFAULT_N) -> list:
    """Printed ``E``/``Var``, the lambda-formula values and the exact ones per row."""
    rows = []
    for row in STATS_TABLES[table]:
        exact = exact_stats(row.spec, N)
        lam_stats = stats_for_lambda(row.spec.tail_class().lam, N)
        E_printed, Var_printed = row.expectation(N), row.variance(N)
        rows.append({
            "table": table,
            "dist": str(row.spec),
            "N": N,
            "lambda_printed": row.lam,
            "lambda": row.spec.tail_class().lam,
            "E_printed": E_printed,
            "Var_printed": Var_printed,
            "E_lambda_formula": lam_stats.expectation,
            "Var_lambda_formula": lam_stats.variance,
            "E_exact": exact.expectation,
            "Var_exact": exact.variance,
            "relerr_E": _relerr(exact.expectation, E_printed),
            "relerr_Var": _relerr(exact.variance, Var_printed),
        })
    return rows


def reproduce(table: int, N: int = DEFAULT_N) -> list:
    if table in VALUE_TABLES:
        return value_rows(table, N)
    if table in STATS_TABLES:
        return stats_rows(table, N)
    raise ValueError(f"unknown table {table!r}; expected one of {TABLE_IDS}")
