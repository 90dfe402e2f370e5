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
import sys

from ..analytics.oracles import format_block, oracle_values
from ..core import engine
from .errors import InvalidParameterError


def with_metaclass(meta, *bases):
    """Python 2 and 3 compatible way to add a meta-class."""

    class Metaclass(type):
        def __new__(cls, name, this_bases, d):
            return meta(name, bases, d)

        @classmethod
        def __prepare__(cls, name, _):
            return meta.__prepare__(name, bases)

    return type.__new__(Metaclass, "temporary_class", (), {})


class CommandFactory(type):
    """
    A metaclass that is used to register new command classes as they are
    being defined, and to find a command class from its name.
    """

    _COMMANDS = {}

    @staticmethod
    def __new__(mcs, name, bases, attrs):
        """Register a new command class into the factory."""
        cls = super(CommandFactory, mcs).__new__(mcs, name, bases, attrs)
        if (
            cls.__command__ is not None
            and cls.__command__ not in CommandFactory._COMMANDS
        ):
            CommandFactory._COMMANDS[cls.__command__] = cls
        return cls

    @classmethod
    def get_class(mcs, name):  # noqa: N804
        if name not in CommandFactory._COMMANDS:
            raise InvalidParameterError("unknown command %r" % name, "command")
        return CommandFactory._COMMANDS[name]

    @classmethod
    def names(mcs):  # noqa: N804
        return sorted(CommandFactory._COMMANDS)


class Command(with_metaclass(CommandFactory, object)):
    """
    The base class of the commands of the command line. A stochastic command
    needs a master seed and an output directory.
    """

    __command__ = None
    stochastic = True

    def __init__(self, logger):
        super(Command, self).__init__()
        assert self.__command__ is not None, "__command__ not implemented"
        self._logger = logger

    def execute(self, config, storage):
        """Run the command and write its outputs through the storage."""
        raise NotImplementedError

    def _options(self, config):
        return {
            "window_fraction": config.window_fraction,
            "threshold": config.threshold,
            "record_states": config.record_states,
        }


class RunCommand(Command):
    __command__ = "run"

    def execute(self, config, storage):
        result = engine.run(
            config.params, config.seed, self._logger, **self._options(config)
        )
        storage.insert_series(result.series)
        storage.insert_trajectory(result.series)
        storage.insert_snapshot(result.final_snapshot, result.network)
        storage.insert_network(result.network)
        if result.states is not None:
            storage.insert_states(result.states)

        last = result.series[-1]
        self._logger.info(
            "Run done: failure=%.6f capital=%.6f at t=%d",
            last.failure_fraction,
            last.mean_capital,
            last.t,
        )
        if result.stationary is not None:
            self._logger.info(
                "Stationary window [%d, %d]: converged=%s",
                result.stationary.window_start,
                result.stationary.window_end,
                result.stationary.converged,
            )


class EnsembleCommand(Command):
    __command__ = "ensemble"

    def execute(self, config, storage):
        ensemble = engine.run_ensemble(
            config.params,
            config.seed,
            config.params.realizations,
            config.workers,
            self._logger,
            **self._options(config)
        )
        storage.insert_ensemble(ensemble)
        if ensemble.stationary is not None:
            self._logger.info(
                "Ensemble fixed mean failure=%.6f capital=%.6f",
                ensemble.stationary.fixed_mean_failure,
                ensemble.stationary.fixed_mean_capital,
            )


class SweepCommand(Command):
    __command__ = "sweep"

    def execute(self, config, storage):
        options = self._options(config)
        options.pop("record_states")
        points = engine.sweep(
            config.params,
            config.axis,
            config.values,
            config.seed,
            config.params.realizations,
            config.workers,
            self._logger,
            **options
        )
        storage.insert_sweep(points)
        self._logger.info("Sweep over %s done: %d point(s)", config.axis, len(points))


class OracleCommand(Command):
    __command__ = "oracle"
    stochastic = False

    def execute(self, config, storage):
        block = format_block(oracle_values(config))
        sys.stdout.write(block)
        if storage is not None:
            storage.insert_oracle(block)
