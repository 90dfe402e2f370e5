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
import logging

_loggers = {}

# A TRACE level, more verbose than DEBUG, used for per-step diagnostics. It is
# registered at import time so that library users get Logger.trace without
# having to call start_logging() first.
TRACE = 5
logging.TRACE = TRACE
logging.addLevelName(TRACE, "TRACE")
logging.Logger.trace = lambda inst, msg, *args, **kwargs: inst.log(
    TRACE, msg, *args, **kwargs
)
logging.trace = lambda msg, *args, **kwargs: logging.log(
    TRACE, msg, *args, **kwargs
)

LOGGER_NAME = "CascadeProtect"


def start_logging(log_path, log_name, level):
    """
    Setup the logger: create a logger which logs into the console and, when a
    path is given, also into a log file (usually cascade_protect.%pid%.log
    inside the directory given with --log-dir).
    """
    global _loggers

    if log_name in _loggers:
        return _loggers[log_name]

    logger = logging.getLogger(log_name)
    if level is not None:
        if not isinstance(level, int):
            level = getattr(logging, level)
        logger.setLevel(level)

    # Log to the console with a first format
    logger.propagate = False  # avoid having 2 log lines
    stream_handler = logging.StreamHandler()
    log_format = "[cascade-protect][%(levelname)s] %(message)s"
    formatter = logging.Formatter(fmt=log_format)
    stream_handler.setFormatter(formatter)
    logger.addHandler(stream_handler)

    # Log to the disk with a second format
    if log_path is not None:
        file_handler = logging.FileHandler(log_path)
        log_format = "[%(asctime)s][%(levelname)s] %(message)s"
        formatter = logging.Formatter(fmt=log_format, datefmt="%H:%M:%S")
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    _loggers[log_name] = logger
    return logger


def get_logger(component):
    """Get the child logger used by a component when none was injected."""
    return logging.getLogger("%s.%s" % (LOGGER_NAME, component))
