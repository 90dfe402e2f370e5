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
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import dynamics
from .dynamics import Population
from .streams import RandomStreams, check_seed, derive_seed
from ..analytics.stationarity import (
    DEFAULT_THRESHOLD,
    DEFAULT_WINDOW_FRACTION,
    MIN_SERIES_LENGTH,
    optional_cv,
    stationary_stats,
    window_bounds,
)
from ..netgen.graph import generate_er
from ..shared.errors import InvalidParameterError
from ..shared.models import (
    EnsembleResult,
    ModelParams,
    RunResult,
    SweepPoint,
    TimeSeriesRecord,
)
from ..shared.utils import get_logger


def record(t, agents):
    """Aggregate the population into the time series record of step t."""
    flagged = ~np.isnan(agents.pp)
    return TimeSeriesRecord(
        t=t,
        failure_fraction=float(agents.failed.mean()),
        mean_capital=float(agents.capital.mean()),
        mean_fp0=float(agents.fp0.mean()),
        mean_fp1=float(agents.fp1.mean()),
        cv_fp0=optional_cv(agents.fp0),
        cv_fp1=optional_cv(agents.fp1),
        mean_fp=float(agents.fp.mean()),
        mean_pp=float(agents.pp[flagged].mean()) if flagged.any() else 0.0,
    )


class Engine(object):
    """
    The engine runs the realizations of one parameter set. A realization
    builds its network and initial population from its own seed, then
    applies the seven stages of a step T times, recording the population
    aggregates after each step.
    """

    def __init__(
        self,
        params,
        logger=None,
        record_states=False,
        window_fraction=DEFAULT_WINDOW_FRACTION,
        threshold=DEFAULT_THRESHOLD,
    ):
        super(Engine, self).__init__()
        self._params = params.validate()
        self._logger = logger or get_logger("Engine")
        self._record_states = record_states
        self._window_fraction = window_fraction
        self._threshold = threshold

        # Check the window before any work is done
        if self.has_stationary_window():
            window_bounds(params.T + 1, window_fraction)

    @property
    def params(self):
        return self._params

    def has_stationary_window(self):
        """Stationary statistics need a series of at least 8 records."""
        return self._params.T + 1 >= MIN_SERIES_LENGTH

    def network(self, streams):
        params = self._params
        return generate_er(
            params.n, params.p_c, streams.network_seed(), mode=params.centrality
        )

    def initial_population(self, net, streams):
        params = self._params
        return Population.initial(
            params.n,
            params.init_fp0,
            params.init_fp1,
            params.init_sd,
            net.centrality,
            params.f_m,
            streams.stream("init"),
        )

    def step(self, net, agents, streams, t):
        """Apply the stages of step t in order and return the new population."""
        p = self._params
        agents = dynamics.imitation_sweep(
            agents, p.p_r, p.s, streams.stream("imitation", t), p.imitation
        )
        agents = dynamics.exploration_sweep(
            agents,
            p.p_e,
            p.mu,
            p.sigma_e,
            streams.stream("exploration", t),
            p.exploration,
        )
        agents = dynamics.payoff_update(agents, net.centrality, p.f_m)
        agents = dynamics.originate_potentials(
            agents, p.p_n, streams.stream("origination", t)
        )
        agents = dynamics.propagate_potentials(
            net, agents, p.p_l, streams.stream("propagation", t)
        )
        agents = dynamics.resolve_failures(
            agents,
            p.pp_max,
            p.cp_half,
            p.f_m,
            p.failtime,
            streams.stream("resolution", t),
        )
        return dynamics.reset_potentials(agents, p.rec1, streams.stream("reset", t))

    def run(self, seed):
        """Run one realization from its seed and return its RunResult."""
        params = self._params
        streams = RandomStreams(seed)
        net = self.network(streams)
        agents = self.initial_population(net, streams)
        self._logger.debug(
            "Realization seed=%d on %r, T=%d", streams.seed, net, params.T
        )

        series = [record(0, agents)]
        states = None
        if self._record_states:
            states = np.zeros((params.n, params.T + 1), dtype=bool)
        for t in range(1, params.T + 1):
            agents = self.step(net, agents, streams, t)
            series.append(record(t, agents))
            if states is not None:
                states[:, t] = agents.failed
            self._logger.trace(
                "t=%d failure=%.6f capital=%.6f fp0=%.6f fp1=%.6f",
                t,
                series[-1].failure_fraction,
                series[-1].mean_capital,
                series[-1].mean_fp0,
                series[-1].mean_fp1,
            )

        result = RunResult(
            params,
            streams.seed,
            series,
            agents.snapshot(),
            network=net,
            states=states,
        )
        if self.has_stationary_window():
            result.stationary = self.stationary(
                {name: result.column(name) for name in TimeSeriesRecord.FIELDS}
            )
        return result

    def stationary(self, columns):
        return stationary_stats(columns, self._window_fraction, self._threshold)

    def run_ensemble(self, master_seed, realizations=None, workers=1):
        """
        Run the realizations k = 0..realizations-1, realization k using the
        sub-seed derived from (master_seed, k), possibly on a process pool.
        Results come back ordered by k.
        """
        master_seed = check_seed(master_seed)
        if realizations is None:
            realizations = self._params.realizations
        if realizations < 1:
            raise InvalidParameterError(
                "realizations must be >= 1, got %r" % realizations,
                "realizations",
            )
        if workers < 1:
            raise InvalidParameterError(
                "workers must be >= 1, got %r" % workers, "workers"
            )

        seeds = [derive_seed(master_seed, k) for k in range(realizations)]
        self._logger.info(
            "Running %d realization(s) with master seed %d on %d worker(s)",
            realizations,
            master_seed,
            workers,
        )
        if workers == 1 or realizations == 1:
            runs = [self.run(seed) for seed in seeds]
        else:
            tasks = [
                (
                    self._params,
                    seed,
                    self._record_states,
                    self._window_fraction,
                    self._threshold,
                )
                for seed in seeds
            ]
            with ProcessPoolExecutor(max_workers=workers) as executor:
                runs = list(executor.map(_run_task, tasks))

        means = ensemble_means(runs)
        result = EnsembleResult(runs, means)
        if self.has_stationary_window():
            result.stationary = self.stationary(
                {name: _column(means, name) for name in TimeSeriesRecord.FIELDS}
            )
        return result


def _run_task(task):
    params, seed, record_states, window_fraction, threshold = task
    engine = Engine(
        params,
        record_states=record_states,
        window_fraction=window_fraction,
        threshold=threshold,
    )
    return engine.run(seed)


def _column(records, name):
    values = [getattr(r, name) for r in records]
    return np.array([np.nan if v is None else v for v in values], dtype=float)


def ensemble_means(runs):
    """
    Average every series field over the realizations, step by step. A
    coefficient of variation missing in some realizations is averaged over
    the others, and stays missing when it is missing everywhere.
    """
    means = []
    for t in range(len(runs[0].series)):
        records = [run.series[t] for run in runs]
        values = {"t": t}
        for name in TimeSeriesRecord.FIELDS[1:]:
            column = _column(records, name)
            present = column[~np.isnan(column)]
            values[name] = float(present.mean()) if present.size else None
        means.append(TimeSeriesRecord(**values))
    return means


def step(net, agents, params, streams, t=1):
    """Apply one step of the dynamics with the given parameters."""
    return Engine(params).step(net, agents, streams, t)


def run(params, seed, logger=None, **kwargs):
    """Run a single realization, see Engine.run."""
    return Engine(params, logger, **kwargs).run(seed)


def run_ensemble(
    params, master_seed, realizations=None, workers=1, logger=None, **kwargs
):
    """Run an ensemble of realizations, see Engine.run_ensemble."""
    engine = Engine(params, logger, **kwargs)
    return engine.run_ensemble(master_seed, realizations, workers)


def sweep(
    base,
    axis,
    values,
    master_seed,
    realizations=None,
    workers=1,
    logger=None,
    **kwargs
):
    """
    Run one ensemble per axis value, every ensemble sharing the master seed,
    and summarize each with the fixed means over the stationary window.
    """
    logger = logger or get_logger("Engine")
    if axis not in ModelParams.sweepable():
        raise InvalidParameterError(
            "cannot sweep %r, axis must be one of %s"
            % (axis, ", ".join(ModelParams.sweepable())),
            "axis",
        )
    values = list(values)
    if not values:
        raise InvalidParameterError("the sweep has no value", "values")
    if base.T + 1 < MIN_SERIES_LENGTH:
        raise InvalidParameterError(
            "a sweep needs T >= %d to find a stationary window"
            % (MIN_SERIES_LENGTH - 1),
            "T",
        )

    # Validate every point before running any of them
    points = [base.replace(**{axis: value}) for value in values]
    rows = []
    for params in points:
        value = getattr(params, axis)
        logger.info("Sweep point %s = %r", axis, value)
        engine = Engine(params, logger, **kwargs)
        ensemble = engine.run_ensemble(master_seed, realizations, workers)
        stats = ensemble.stationary
        converged = [run.stationary.converged for run in ensemble.runs]
        rows.append(
            SweepPoint(
                axis=axis,
                axis_value=value,
                fixed_mean_failure=stats.fixed_mean_failure,
                fixed_mean_capital=stats.fixed_mean_capital,
                fixed_mean_fp0=stats.fixed_mean_fp0,
                fixed_mean_fp1=stats.fixed_mean_fp1,
                converged=stats.converged,
                realizations=len(ensemble.runs),
                converged_fraction=float(np.mean(converged)),
            )
        )
    return rows
