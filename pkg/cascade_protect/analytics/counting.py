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

from .oracles import binomial_failure_pmf
from ..shared.errors import InvalidParameterError


def failure_counts(states, window):
    """
    Count, for every node, the failed steps among steps 1..window of a
    node x time failure matrix (column 0 is the initial state).
    """
    states = np.asarray(states, dtype=bool)
    if states.ndim != 2:
        raise InvalidParameterError("states must be a node x time matrix", "states")
    if int(window) != window or not 1 <= window < states.shape[1]:
        raise InvalidParameterError(
            "window must be an integer in [1, %d], got %r"
            % (states.shape[1] - 1, window),
            "window",
        )
    return states[:, 1 : int(window) + 1].sum(axis=1)


def failure_count_frequencies(counts, window):
    """Share of the nodes that failed j times, for j = 0..window."""
    counts = np.asarray(counts, dtype=int)
    if counts.size == 0:
        raise InvalidParameterError("no counts given", "counts")
    if counts.min() < 0 or counts.max() > window:
        raise InvalidParameterError("counts must lie in [0, window]", "counts")
    return np.bincount(counts, minlength=int(window) + 1) / float(counts.size)


def compare_failure_counts(counts, window, p):
    """
    Return the empirical frequencies of the failure counts next to the
    binomial law of window trials with failure probability p.
    """
    empirical = failure_count_frequencies(counts, window)
    expected = np.array(
        [binomial_failure_pmf(window, r, p) for r in range(int(window) + 1)]
    )
    return empirical, expected
