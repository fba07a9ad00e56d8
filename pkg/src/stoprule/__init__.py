"""Exact and asymptotic statistics of the optimal stopping time in the
full-information sequential selection problem."""

from .asymptotics import (AsymptoticStats, asymptotic_stats, asymptotic_value, lambert_w,
                          leading_tail, leading_tail_inverse, stats_for_lambda, tabulated_value)
from .distributions import (FAMILIES, ZOO, AlgebraicTail, Beta, DiscreteGeometric, Distribution,
                            Exponential, ExponentialTail, FiniteBoundTail, Gamma, Geometric, Normal,
                            ParameterError, Pareto, TailClass, Triangular, Uniform, Weibull, Wigner,
                            parse_spec)
from .simulator import SimulationConfig, SimulationEstimate, simulate, simulate_once, simulate_taus
from .stopping_stats import (StoppingStats, exact_expectation, exact_second_moment, exact_stats,
                             pochhammer_sum, suffix_products)
from .value_recurrence import (NumericError, ValueSequence, acceptance_probs, iter_values, tail_integral,
                               value_sequence, values_at)

__version__ = "0.1.0"
