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
import os

import hypothesis
import numpy as np
import pytest

from cascade_protect.shared.models import ModelParams
from cascade_protect.shared.presets import preset

np.seterr(all="warn")

hypothesis.settings.register_profile("fast", max_examples=5)
hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def small_params():
    """A ten-node network running for a few dozen steps."""
    return ModelParams(n=10, T=30)


@pytest.fixture
def scenario_params():
    def factory(name, **changes):
        settings = preset(name)
        settings.update(changes)
        return ModelParams(**settings)

    return factory
