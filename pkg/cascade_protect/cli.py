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
import argparse
import os

from .shared.commands import CommandFactory
from .shared.config import ExperimentConfig, load_config
from .shared.errors import CascadeError, InvalidParameterError
from .shared.models import CENTRALITY_MODES, EXPLORATION_MODES, IMITATION_MODES
from .shared.presets import preset_names
from .shared.storage import Storage
from .shared.utils import LOGGER_NAME, start_logging

LEVELS = ["CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG", "TRACE"]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cascade-protect",
        description="Simulate the evolution of protection strategies against "
        "cascading failures on random networks.",
    )
    parser.add_argument("command", choices=CommandFactory.names())
    parser.add_argument("--config", help="configuration file (key = value)")
    parser.add_argument("--seed", type=int, help="master seed (u64)")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--preset", choices=preset_names())
    parser.add_argument("--centrality", choices=CENTRALITY_MODES)
    parser.add_argument("--imitation", choices=IMITATION_MODES)
    parser.add_argument("--exploration", choices=EXPLORATION_MODES)
    parser.add_argument("--workers", type=int, help="realization worker count")
    parser.add_argument(
        "-l",
        "--level",
        type=str.upper,
        choices=LEVELS,
        default="INFO",
        help="log level (default: INFO)",
    )
    parser.add_argument("--log-dir", help="directory of the log file")
    return parser


def make_config(args, logger):
    """Load the configuration, then let the command line override it."""
    if args.config is not None:
        config = load_config(args.config, args.preset, logger)
    elif args.preset is not None:
        config = ExperimentConfig.from_settings({"preset": args.preset})
    else:
        config = ExperimentConfig()

    changes = {}
    for name in ("centrality", "imitation", "exploration"):
        if getattr(args, name) is not None:
            changes[name] = getattr(args, name)
    for name in ("workers", "seed"):
        if getattr(args, name) is not None:
            changes[name] = getattr(args, name)
    return config.replace(**changes) if changes else config


def start(args):
    log_path = None
    if args.log_dir is not None:
        if not os.path.exists(args.log_dir):
            os.makedirs(args.log_dir)
        log_path = os.path.join(
            args.log_dir, "cascade_protect.%s.log" % os.getpid()
        )
    logger = start_logging(log_path, LOGGER_NAME, args.level)
    logger.setLevel(args.level)

    try:
        config = make_config(args, logger)
        command = CommandFactory.get_class(args.command)(logger)
        storage = None
        if command.stochastic:
            if config.seed is None:
                raise InvalidParameterError(
                    "a master seed is mandatory for %s" % args.command, "seed"
                )
            if args.out is None:
                raise InvalidParameterError(
                    "an output directory is mandatory for %s" % args.command,
                    "out",
                )
        if args.out is not None:
            storage = Storage(args.out)
            storage.initialize()
        logger.debug("Executing %s with %r", args.command, config)
        command.execute(config, storage)
    except (CascadeError, OSError) as e:
        logger.error("%s failed: %s", args.command, e)
        return 1
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return start(args)
