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
Named starting points reproducing the configurations of the published
experiments. A preset only lists what differs from the defaults.
"""
import copy

from .errors import InvalidParameterError

_SCENARIO = {
    "n": 10,
    "p_c": 0.9,
    "init_fp0": 0.4,
    "init_fp1": 0.5,
    "f_m": 0.1,
    "s": 1.0,
    "mu": 0.0,
    "sigma_e": 0.1,
    "p_n": 0.1,
    "p_l": 0.3,
    "T": 10,
}

_PRESETS = {
    "scenario-a": dict(_SCENARIO, pp_max=1.0, cp_half=1.0),
    "scenario-b": dict(_SCENARIO, pp_max=0.1, cp_half=1.0),
    "scenario-c": dict(_SCENARIO, pp_max=0.1, cp_half=0.1),
    "scenario-d": dict(_SCENARIO, pp_max=1.0, cp_half=0.1),
    "recovery-delay": dict(
        _SCENARIO, pp_max=1.0, cp_half=1.0, n=20, T=20, failtime=5
    ),
    "small-exploration": {
        "n": 100,
        "p_c": 0.9,
        "init_fp0": 0.3,
        "init_fp1": 0.3,
        "s": 100.0,
        "p_r": 0.9,
        "p_e": 0.1,
        "sigma_e": 0.1,
        "pp_max": 1.0,
        "cp_half": 0.5,
        "p_n": 0.001,
        "p_l": 0.1,
        "T": 100,
    },
    "initial-conditions": {
        "cp_half": 0.5,
        "p_e": 0.05,
        "sigma_e": 0.02,
        "p_n": 0.001,
        "p_l": 0.1,
        "T": 1000,
    },
    "link-sweep": {
        "centrality": "euclid",
        "axis": "p_l",
        "values": [0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.1],
    },
    "connection-sweep": {
        "centrality": "euclid",
        "p_l": 0.1,
        "axis": "p_c",
        "values": [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
    },
}


def preset_names():
    return sorted(_PRESETS)


def preset(name):
    """Return a fresh copy of the settings of a named preset."""
    if name not in _PRESETS:
        raise InvalidParameterError(
            "unknown preset %r, expected one of %s"
            % (name, ", ".join(preset_names())),
            "preset",
        )
    return copy.deepcopy(_PRESETS[name])
