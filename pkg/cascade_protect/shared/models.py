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
import math

import numpy as np

from .errors import InvalidParameterError


def public_attrs(dct):
    """Drop the private entries of an attributes dictionary."""
    return {key: val for key, val in dct.items() if not key.startswith("_")}


class Model(object):
    """
    A model is a record of the simulation that can be serialized into a
    dictionary, and written as a row into one of the output tables. FIELDS
    gives the column order of the row.
    """

    FIELDS = ()

    @classmethod
    def new(cls, dct):
        """Rebuild a record from its dictionary without calling __init__."""
        obj = cls.__new__(cls)
        object.__init__(obj)
        obj.parse(dct)
        return obj

    def build(self, dct):
        dct.update(public_attrs(self.__dict__))
        return dct

    def parse(self, dct):
        self.__dict__.update(public_attrs(dct))
        return self

    def row(self):
        """Return the values of the FIELDS, in order."""
        return [getattr(self, name) for name in self.FIELDS]

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        return public_attrs(self.__dict__) == public_attrs(other.__dict__)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __repr__(self):
        """
        Return a textual representation of the object. It will mainly be used
        for pretty-printing into the console.
        """
        attrs = ", ".join(
            [
                "{}={}".format(key, val)
                for key, val in sorted(public_attrs(self.__dict__).items())
            ]
        )
        return "{}({})".format(self.__class__.__name__, attrs)


# Option values accepted by the string-valued parameters
CENTRALITY_MODES = ("max", "euclid")
IMITATION_MODES = ("sequential", "synchronous")
EXPLORATION_MODES = ("independent", "single")


class ModelParams(Model):
    """
    The full parameter record of the model: the evolutionary part (imitation
    and exploration), the non-evolutionary part (network, maintenance,
    failure and protection) and the time-dependent part (horizon, recovery,
    ensemble size, initial strategies). The three option strings select the
    variants of centrality normalization, imitation and exploration.
    """

    PROBABILITIES = ("p_r", "p_e", "p_c", "f_m", "p_n", "p_l", "pp_max", "rec1")
    INTEGERS = ("n", "T", "failtime", "realizations")
    OPTIONS = {
        "centrality": CENTRALITY_MODES,
        "imitation": IMITATION_MODES,
        "exploration": EXPLORATION_MODES,
    }
    FIELDS = (
        # evolutionary part
        "p_r",
        "s",
        "p_e",
        "mu",
        "sigma_e",
        # non-evolutionary part
        "n",
        "p_c",
        "f_m",
        "p_n",
        "p_l",
        "pp_max",
        "cp_half",
        # time-dependent part
        "T",
        "rec1",
        "failtime",
        "realizations",
        "init_fp0",
        "init_fp1",
        "init_sd",
        # variants
        "centrality",
        "imitation",
        "exploration",
    )

    @staticmethod
    def default_config():
        """
        Return the default parameter values, those of the link-sweep
        experiment with a one-step recovery.
        """
        return {
            "p_r": 0.9,
            "s": 100.0,
            "p_e": 0.05,
            "mu": 0.0,
            "sigma_e": 0.0125,
            "n": 100,
            "p_c": 0.9,
            "f_m": 0.1,
            "p_n": 0.1,
            "p_l": 0.1,
            "pp_max": 1.0,
            "cp_half": 0.1,
            "T": 4000,
            "rec1": 1.0,
            "failtime": 1,
            "realizations": 1,
            "init_fp0": 0.7,
            "init_fp1": 0.7,
            "init_sd": 0.01,
            "centrality": "max",
            "imitation": "sequential",
            "exploration": "independent",
        }

    def __init__(self, **kwargs):
        super(ModelParams, self).__init__()
        unknown = set(kwargs) - set(self.FIELDS)
        if unknown:
            name = sorted(unknown)[0]
            raise InvalidParameterError("unknown parameter %s" % name, name)
        values = self.default_config()
        values.update(kwargs)
        for name in self.FIELDS:
            value = values[name]
            if name in self.INTEGERS:
                value = self._integer(name, value)
            elif name not in self.OPTIONS:
                value = float(value)
            setattr(self, name, value)
        self.validate()

    @staticmethod
    def _integer(name, value):
        if isinstance(value, float):
            if not value.is_integer():
                raise InvalidParameterError(
                    "%s must be an integer, got %r" % (name, value), name
                )
        return int(value)

    def validate(self):
        """Check every field against its range, raise on the first failure."""
        for name in self.FIELDS:
            value = getattr(self, name)
            if name in self.OPTIONS:
                if value not in self.OPTIONS[name]:
                    raise InvalidParameterError(
                        "%s must be one of %s, got %r"
                        % (name, "|".join(self.OPTIONS[name]), value),
                        name,
                    )
                continue
            if not math.isfinite(value):
                raise InvalidParameterError(
                    "%s must be finite, got %r" % (name, value), name
                )
            if name in self.PROBABILITIES and not 0.0 <= value <= 1.0:
                raise InvalidParameterError(
                    "%s must lie in [0, 1], got %r" % (name, value), name
                )

        if self.f_m >= 1.0:
            raise InvalidParameterError("f_m must be < 1", "f_m")
        for name in ("s", "sigma_e", "cp_half", "init_sd"):
            if getattr(self, name) < 0:
                raise InvalidParameterError("%s must be >= 0" % name, name)
        minimums = {"n": 1, "T": 0, "failtime": 1, "realizations": 1}
        for name, minimum in minimums.items():
            if getattr(self, name) < minimum:
                raise InvalidParameterError(
                    "%s must be >= %d" % (name, minimum), name
                )
        return self

    @classmethod
    def sweepable(cls):
        """The real-valued fields, those a sweep can move."""
        return tuple(
            name
            for name in cls.FIELDS
            if name not in cls.INTEGERS and name not in cls.OPTIONS
        )

    def replace(self, **changes):
        """Return a copy of the parameters with some fields changed."""
        values = {name: getattr(self, name) for name in self.FIELDS}
        values.update(changes)
        return ModelParams(**values)

    def parse(self, dct):
        super(ModelParams, self).parse(dct)
        return self.validate()


class AgentState(Model):
    """
    The state of the agent sitting on one node: its capital, its strategy
    pair, the protection level derived from it and its failure state.
    """

    FIELDS = (
        "capital",
        "fp0",
        "fp1",
        "fp",
        "failed",
        "failure_potential",
        "fail_countdown",
    )

    def __init__(
        self,
        capital=1.0,
        fp0=0.0,
        fp1=0.0,
        fp=0.0,
        failed=False,
        failure_potential=False,
        fail_countdown=0,
    ):
        super(AgentState, self).__init__()
        self.capital = capital
        self.fp0 = fp0
        self.fp1 = fp1
        self.fp = fp
        self.failed = failed
        self.failure_potential = failure_potential
        self.fail_countdown = fail_countdown


class TimeSeriesRecord(Model):
    """Population aggregates recorded after each step (t=0 is the start)."""

    FIELDS = (
        "t",
        "failure_fraction",
        "mean_capital",
        "mean_fp0",
        "mean_fp1",
        "cv_fp0",
        "cv_fp1",
        "mean_fp",
        "mean_pp",
    )

    def __init__(
        self,
        t,
        failure_fraction,
        mean_capital,
        mean_fp0,
        mean_fp1,
        cv_fp0,
        cv_fp1,
        mean_fp,
        mean_pp,
    ):
        super(TimeSeriesRecord, self).__init__()
        self.t = t
        self.failure_fraction = failure_fraction
        self.mean_capital = mean_capital
        self.mean_fp0 = mean_fp0
        self.mean_fp1 = mean_fp1
        self.cv_fp0 = cv_fp0  # None when the mean is zero
        self.cv_fp1 = cv_fp1
        self.mean_fp = mean_fp
        self.mean_pp = mean_pp


class StationaryStats(Model):
    """
    Fixed means and coefficients of variation over the trailing window of a
    run, together with the convergence verdict.
    """

    FIELDS = (
        "window_start",
        "window_end",
        "fixed_mean_failure",
        "fixed_mean_capital",
        "fixed_mean_fp0",
        "fixed_mean_fp1",
        "cv_fp0",
        "cv_fp1",
        "converged",
    )

    def __init__(
        self,
        window_start,
        window_end,
        fixed_mean_failure,
        fixed_mean_capital,
        fixed_mean_fp0,
        fixed_mean_fp1,
        cv_fp0,
        cv_fp1,
        converged,
    ):
        super(StationaryStats, self).__init__()
        self.window_start = window_start
        self.window_end = window_end
        self.fixed_mean_failure = fixed_mean_failure
        self.fixed_mean_capital = fixed_mean_capital
        self.fixed_mean_fp0 = fixed_mean_fp0
        self.fixed_mean_fp1 = fixed_mean_fp1
        self.cv_fp0 = cv_fp0
        self.cv_fp1 = cv_fp1
        self.converged = converged


class MeanFieldResult(Model):
    """Analytic predictions of the mean-field reading of the model."""

    FIELDS = ("p_A", "p_B", "p_p_eff", "c_one_step", "c_fixed_point")

    def __init__(self, p_A, p_B, p_p_eff, c_one_step, c_fixed_point):
        super(MeanFieldResult, self).__init__()
        self.p_A = p_A
        self.p_B = p_B
        self.p_p_eff = p_p_eff
        self.c_one_step = c_one_step
        self.c_fixed_point = c_fixed_point  # None when it diverges


class RunResult(Model):
    """
    Everything a single realization produces: the parameters and seed, the
    time series (T+1 records), the final per-node snapshot, the stationary
    statistics, the network, and optionally the node x time failure matrix.
    """

    def __init__(
        self,
        params,
        seed,
        series,
        final_snapshot,
        stationary=None,
        network=None,
        states=None,
    ):
        super(RunResult, self).__init__()
        self.params = params
        self.seed = seed
        self.series = series
        self.final_snapshot = final_snapshot
        self.stationary = stationary
        self.network = network
        self.states = states

    def __eq__(self, other):
        if not isinstance(other, RunResult):
            return NotImplemented
        if self.build({}) != other.build({}):
            return False
        if self.states is None or other.states is None:
            return self.states is None and other.states is None
        return bool(np.array_equal(self.states, other.states))

    def column(self, name):
        """Return one TimeSeriesRecord field as an array, None becomes NaN."""
        values = [getattr(record, name) for record in self.series]
        return np.array(
            [np.nan if value is None else value for value in values],
            dtype=float,
        )

    def build(self, dct):
        dct["params"] = self.params.build({})
        dct["seed"] = self.seed
        dct["series"] = [record.build({}) for record in self.series]
        dct["final_snapshot"] = [
            agent.build({}) for agent in self.final_snapshot
        ]
        if self.stationary is not None:
            dct["stationary"] = self.stationary.build({})
        return dct

    def parse(self, dct):
        self.params = ModelParams.new(dct["params"])
        self.seed = dct["seed"]
        self.series = [TimeSeriesRecord.new(record) for record in dct["series"]]
        self.final_snapshot = [
            AgentState.new(agent) for agent in dct["final_snapshot"]
        ]
        stationary = dct.get("stationary")
        self.stationary = (
            StationaryStats.new(stationary) if stationary is not None else None
        )
        self.network = None
        self.states = None
        return self


class StationaryWindow(Model):
    """Fixed mean and coefficient of variation of one series' window."""

    FIELDS = ("window_start", "window_end", "fixed_mean", "cv", "converged")

    def __init__(self, window_start, window_end, fixed_mean, cv, converged):
        super(StationaryWindow, self).__init__()
        self.window_start = window_start
        self.window_end = window_end  # inclusive
        self.fixed_mean = fixed_mean
        self.cv = cv  # None when the window mean is zero
        self.converged = converged


class EnsembleResult(Model):
    """
    The realizations of an ensemble ordered by index, the per-step means
    over the realizations and the stationary statistics of those means.
    """

    def __init__(self, runs, means, stationary=None):
        super(EnsembleResult, self).__init__()
        self.runs = runs
        self.means = means
        self.stationary = stationary

    def build(self, dct):
        dct["runs"] = [run.build({}) for run in self.runs]
        dct["means"] = [record.build({}) for record in self.means]
        if self.stationary is not None:
            dct["stationary"] = self.stationary.build({})
        return dct


class SweepPoint(Model):
    """One row of a sweep: the stationary fixed means at one axis value."""

    FIELDS = (
        "axis_value",
        "fixed_mean_failure",
        "fixed_mean_capital",
        "fixed_mean_fp0",
        "fixed_mean_fp1",
        "converged",
    )
    DETAIL_FIELDS = FIELDS + ("realizations", "converged_fraction")

    def __init__(
        self,
        axis,
        axis_value,
        fixed_mean_failure,
        fixed_mean_capital,
        fixed_mean_fp0,
        fixed_mean_fp1,
        converged,
        realizations,
        converged_fraction,
    ):
        super(SweepPoint, self).__init__()
        self.axis = axis
        self.axis_value = axis_value
        self.fixed_mean_failure = fixed_mean_failure
        self.fixed_mean_capital = fixed_mean_capital
        self.fixed_mean_fp0 = fixed_mean_fp0
        self.fixed_mean_fp1 = fixed_mean_fp1
        self.converged = converged
        self.realizations = realizations
        self.converged_fraction = converged_fraction

    def detail_row(self):
        return [getattr(self, name) for name in self.DETAIL_FIELDS]
