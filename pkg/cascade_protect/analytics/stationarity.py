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

from ..shared.errors import InvalidParameterError, UndefinedCVError
from ..shared.models import StationaryStats, StationaryWindow

ZERO_MEAN = 1e-9
DEFAULT_THRESHOLD = 0.10
DEFAULT_WINDOW_FRACTION = 0.25
MIN_SERIES_LENGTH = 8


def coefficient_of_variation(series):
    """
    Population standard deviation (divided by N) over the absolute mean.
    Raises UndefinedCVError when |mean| < 1e-9.
    """
    values = np.asarray(series, dtype=float)
    if values.size == 0:
        raise InvalidParameterError("empty series", "series")
    mean = values.mean()
    if abs(mean) < ZERO_MEAN:
        raise UndefinedCVError("mean %g is too close to zero" % mean)
    return float(values.std() / abs(mean))


def optional_cv(series):
    """Same as coefficient_of_variation, but None instead of raising."""
    try:
        return coefficient_of_variation(series)
    except UndefinedCVError:
        return None


def window_bounds(length, window_fraction):
    """
    Return the inclusive (start, end) indices of the trailing window made of
    round(window_fraction * length) samples.
    """
    if not 0.0 < window_fraction <= 1.0:
        raise InvalidParameterError(
            "window_fraction must lie in (0, 1], got %r" % window_fraction,
            "window_fraction",
        )
    size = int(round(window_fraction * length))
    if size < 2:
        raise InvalidParameterError(
            "the window holds %d sample(s), at least 2 are needed" % size,
            "window_fraction",
        )
    return length - size, length - 1


def detect_stationarity(
    series, window_fraction=DEFAULT_WINDOW_FRACTION, threshold=DEFAULT_THRESHOLD
):
    """
    Look at the trailing window of a series: it is stationary when its
    coefficient of variation is at most the threshold, and it then
    fluctuates around the window mean.
    """
    values = np.asarray(series, dtype=float)
    if values.size < MIN_SERIES_LENGTH:
        raise InvalidParameterError(
            "series needs at least %d samples, got %d"
            % (MIN_SERIES_LENGTH, values.size),
            "series",
        )
    start, end = window_bounds(values.size, window_fraction)
    window = values[start : end + 1]
    cv = optional_cv(window)
    converged = cv is not None and cv <= threshold
    return StationaryWindow(start, end, float(window.mean()), cv, converged)


def stationary_stats(
    columns, window_fraction=DEFAULT_WINDOW_FRACTION, threshold=DEFAULT_THRESHOLD
):
    """
    Stationary statistics of a run given its series as a mapping of column
    name to values (see RunResult.column). Converged requires both strategy
    means to be stationary.
    """
    fp0 = detect_stationarity(columns["mean_fp0"], window_fraction, threshold)
    fp1 = detect_stationarity(columns["mean_fp1"], window_fraction, threshold)
    start, end = fp0.window_start, fp0.window_end

    def fixed_mean(name):
        values = np.asarray(columns[name], dtype=float)
        return float(values[start : end + 1].mean())

    return StationaryStats(
        window_start=start,
        window_end=end,
        fixed_mean_failure=fixed_mean("failure_fraction"),
        fixed_mean_capital=fixed_mean("mean_capital"),
        fixed_mean_fp0=fp0.fixed_mean,
        fixed_mean_fp1=fp1.fixed_mean,
        cv_fp0=fp0.cv,
        cv_fp1=fp1.cv,
        converged=fp0.converged and fp1.converged,
    )
