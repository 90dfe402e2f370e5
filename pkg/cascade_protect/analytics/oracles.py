# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.

# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU General Public License for more details.

# You should have received a copy of the GNU General Public License
# along with this program. If not, see <http://www.gnu.org/licenses/>.
"""
Closed-form predictions of the mean-field reading of the model. A node is
either without failure (state A) or failed (state B): it fails with
probability gamma and recovers with probability beta, the propagated threat
lowers the protection probability and the capital settles where the
maintenance cost is balanced by the unit payoff.
"""
import numpy as np
from scipy import stats

from ..shared.errors import (
    DegenerateChainError,
    DomainError,
    InvalidParameterError,
    NoStationaryCapitalError,
)
from ..shared.models import MeanFieldResult

CAPITAL_MODES = ("one-step", "fixed-point")


def _check_probability(name, value):
    if not 0.0 <= value <= 1.0:
        raise InvalidParameterError(
            "%s must lie in [0, 1], got %r" % (name, value), name
        )


def markov_stationary(gamma, beta):
    """Stationary law (p_A, p_B) of the two-state chain."""
    _check_probability("gamma", gamma)
    _check_probability("beta", beta)
    if gamma + beta == 0:
        raise DegenerateChainError("gamma = beta = 0, every law is stationary")
    p_A = beta / (gamma + beta)
    return p_A, 1.0 - p_A


def markov_iterate(p_A0, gamma, beta, steps):
    """
    Iterate p_A <- (1 - gamma) p_A + beta (1 - p_A) from p_A0. The returned
    array holds steps + 1 values, starting with p_A0.
    """
    _check_probability("p_A0", p_A0)
    _check_probability("gamma", gamma)
    _check_probability("beta", beta)
    if steps < 0:
        raise InvalidParameterError("steps must be >= 0", "steps")
    trajectory = np.empty(int(steps) + 1)
    trajectory[0] = p_A0
    for t in range(1, trajectory.size):
        p_A = trajectory[t - 1]
        trajectory[t] = (1.0 - gamma) * p_A + beta * (1.0 - p_A)
    return trajectory


def not_failed_fraction_next(N_f, p_p):
    """
    Fraction of nodes without failure at the next step when every failed
    node recovers and the others survive with probability p_p.
    """
    _check_probability("N_f", N_f)
    _check_probability("p_p", p_p)
    return N_f + p_p * (1.0 - N_f)


def effective_protection(p_p, x, N_f):
    """
    Protection probability once the threat propagated from N_f failed
    neighbours is accounted for, x being the combined propagation
    probability p_l p_c. N_f is a count of failed nodes.
    """
    _check_probability("p_p", p_p)
    _check_probability("x", x)
    if N_f < 0:
        raise InvalidParameterError("N_f must be >= 0, got %r" % N_f, "N_f")
    return 1.0 - (1.0 - p_p) * (1.0 - (1.0 - x) ** N_f)


def stationary_capital(p_p_eff, f_p, f_m, mode="fixed-point"):
    """
    Capital balancing 1 + p_p_eff (1 - f_p - f_m) c = c. The one-step mode
    evaluates the left side once at c = 1, the fixed-point mode solves it.
    """
    _check_probability("p_p_eff", p_p_eff)
    if f_p + f_m > 1.0:
        raise InvalidParameterError("f_p + f_m must be <= 1", "f_p")
    if mode not in CAPITAL_MODES:
        raise InvalidParameterError(
            "mode must be one of %s, got %r" % ("|".join(CAPITAL_MODES), mode),
            "mode",
        )
    rate = p_p_eff * (1.0 - f_p - f_m)
    if mode == "one-step":
        return 1.0 + rate
    if rate >= 1.0:
        raise NoStationaryCapitalError("capital diverges, rate %g >= 1" % rate)
    return 1.0 / (1.0 - rate)


def binomial_failure_pmf(n, r, p):
    """Probability of r failures over n independent trials."""
    _check_probability("p", p)
    if int(n) != n or n < 0:
        raise InvalidParameterError("n must be a nonnegative integer", "n")
    if int(r) != r or not 0 <= r <= n:
        raise InvalidParameterError("r must be an integer in [0, n]", "r")
    return float(stats.binom.pmf(int(r), int(n), p))


def network_effect_curve(k, c, x):
    """Benefit c - k / x of joining a network of size x."""
    if x <= 0:
        raise DomainError("x must be > 0, got %r" % x)
    return c - k / x


def mean_field(gamma, beta, p_p, x, N_f, f_p, f_m):
    """Bundle the chain, the effective protection and both capitals."""
    p_A, p_B = markov_stationary(gamma, beta)
    p_p_eff = effective_protection(p_p, x, N_f)
    c_one_step = stationary_capital(p_p_eff, f_p, f_m, "one-step")
    try:
        c_fixed_point = stationary_capital(p_p_eff, f_p, f_m, "fixed-point")
    except NoStationaryCapitalError:
        c_fixed_point = None
    return MeanFieldResult(p_A, p_B, p_p_eff, c_one_step, c_fixed_point)


def oracle_values(config):
    """
    Evaluate every oracle for the inputs of an experiment configuration and
    return the (key, value) pairs in printing order. A value is None when
    the formula has no solution.
    """
    params = config.params
    x = params.p_l * params.p_c
    result = mean_field(
        config.gamma,
        config.beta,
        config.pp,
        x,
        config.n_failed,
        config.fp,
        params.f_m,
    )
    values = [
        ("p_A", result.p_A),
        ("p_B", result.p_B),
        ("not_failed_next", not_failed_fraction_next(result.p_A, config.pp)),
        ("x", x),
        ("p_p_eff", result.p_p_eff),
        ("c_one_step", result.c_one_step),
        ("c_fixed_point", result.c_fixed_point),
        (
            "binomial_pmf",
            binomial_failure_pmf(config.trials, config.failures, config.p_fail),
        ),
    ]
    for size in range(1, 11):
        values.append(
            (
                "network_effect_%d" % size,
                network_effect_curve(config.k, config.unit_payoff, size),
            )
        )
    return values


def format_block(values):
    """Render (key, value) pairs as `key = value` lines with 6 decimals."""
    lines = []
    for key, value in values:
        text = "none" if value is None else "%.6f" % value
        lines.append("%s = %s\n" % (key, text))
    return "".join(lines)
