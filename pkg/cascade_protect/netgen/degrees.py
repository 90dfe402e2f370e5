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
import numpy as np
from scipy import stats

from .graph import check_graph_parameters
from ..shared.errors import InvalidParameterError


def degree_pmf(n, p_c, d):
    """
    Probability that a node of G(n, p_c) has degree d, that is the binomial
    law C(n-1, d) p_c^d (1-p_c)^(n-1-d).
    """
    check_graph_parameters(n, p_c)
    if int(d) != d or not 0 <= d <= n - 1:
        raise InvalidParameterError(
            "degree must be an integer in [0, %d], got %r" % (n - 1, d), "d"
        )
    return float(stats.binom.pmf(int(d), int(n) - 1, p_c))


def expected_degree(n, p_c):
    """Mean of the degree law, p_c (n - 1)."""
    check_graph_parameters(n, p_c)
    return p_c * (n - 1)


def degree_sequence(net):
    """Degrees of the nodes; their sum is twice the number of edges."""
    return np.asarray(net.degrees, dtype=int)


def pooled_degrees(nets):
    """Concatenate the degree sequences of several graphs."""
    return np.concatenate([degree_sequence(net) for net in nets])


def degree_fit(nets, min_expected=5.0):
    """
    Chi-square goodness of fit of the pooled degrees of graphs sharing the
    same (n, p_c) against Binomial(n-1, p_c). Neighbouring degree classes are
    merged until every class expects at least min_expected observations.
    Returns the (statistic, p-value) pair.
    """
    nets = list(nets)
    if not nets:
        raise InvalidParameterError("degree_fit needs at least one graph", "nets")
    n, p_c = nets[0].n, nets[0].p_c
    if any(net.n != n or net.p_c != p_c for net in nets):
        raise InvalidParameterError("graphs must share n and p_c", "nets")

    degrees = pooled_degrees(nets)
    observed = np.bincount(degrees, minlength=n).astype(float)
    expected = stats.binom.pmf(np.arange(n), n - 1, p_c) * degrees.size

    obs_bins, exp_bins = [], []
    obs_acc = exp_acc = 0.0
    for obs, exp in zip(observed, expected):
        obs_acc += obs
        exp_acc += exp
        if exp_acc >= min_expected:
            obs_bins.append(obs_acc)
            exp_bins.append(exp_acc)
            obs_acc = exp_acc = 0.0
    if exp_acc > 0 or obs_acc > 0:
        if exp_bins:
            obs_bins[-1] += obs_acc
            exp_bins[-1] += exp_acc
        else:
            obs_bins.append(obs_acc)
            exp_bins.append(exp_acc)
    if len(exp_bins) < 2:
        # A single class (e.g. p_c of 0 or 1) fits trivially
        return 0.0, 1.0

    # chisquare wants matching totals, rescale the expected counts
    exp_bins = np.array(exp_bins) * (sum(obs_bins) / sum(exp_bins))
    statistic, p_value = stats.chisquare(obs_bins, exp_bins)
    return float(statistic), float(p_value)
