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
Long runs checking the published stochastic results. They are marked slow
and deselected by default; run them with `pytest -m slow`.
"""
import numpy as np
import pytest

from cascade_protect.core import engine
from cascade_protect.shared.models import ModelParams
from cascade_protect.shared.presets import preset

pytestmark = pytest.mark.slow


def sweep_preset(name, values):
    settings = preset(name)
    axis = settings.pop("axis")
    settings.pop("values")
    return engine.sweep(ModelParams(**settings), axis, values, 7, realizations=4)


def test_full_link_propagation_stays_rare():
    # The 0.731 of the full-propagation row is the mean-field share of
    # nodes that did not fail. The simulated failure fraction stays small
    # because every exposed node is still protected.
    params = ModelParams(n=10, p_c=0.9, p_n=0.1, p_l=1.0, T=200)
    ensemble = engine.run_ensemble(params, 2019, realizations=200, workers=4)
    assert 0.0 < ensemble.stationary.fixed_mean_failure < 0.1


def test_protection_declines_without_failures():
    # Without failures protection is pure cost, so imitation selects the
    # agents spending less. On a dense graph with max-norm centrality the
    # two strategy values are interchangeable and only their sum is selected.
    params = ModelParams(**dict(preset("small-exploration"), p_n=0.0))
    ensemble = engine.run_ensemble(params, 32, realizations=5)
    mean_fp = np.array([record.mean_fp for record in ensemble.means])
    assert all(record.failure_fraction == 0.0 for record in ensemble.means)
    assert mean_fp[-10:].mean() < mean_fp[0] - 0.1


def test_link_sweep_trends():
    points = sweep_preset("link-sweep", [0.01, 0.05, 0.1])

    failure = [point.fixed_mean_failure for point in points]
    capital = [point.fixed_mean_capital for point in points]
    assert failure[0] < failure[1] < failure[2]
    assert capital[0] > capital[1] > capital[2]
    assert points[0].fixed_mean_fp0 < points[-1].fixed_mean_fp0


def test_connection_sweep_trends():
    points = sweep_preset("connection-sweep", [0.1, 0.5, 0.9])

    failure = [point.fixed_mean_failure for point in points]
    capital = [point.fixed_mean_capital for point in points]
    assert failure[0] < failure[1]
    assert failure[0] < failure[-1]
    assert capital[0] > capital[-1]
