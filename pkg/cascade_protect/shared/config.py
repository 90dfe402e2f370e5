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
import io

from .errors import ConfigParseError, InvalidParameterError
from .models import Model, ModelParams
from .presets import preset
from .utils import get_logger

PRESET_KEY = "preset"


def _to_int(text):
    try:
        return int(text)
    except ValueError:
        number = float(text)
        if not number.is_integer():
            raise ValueError("%r is not an integer" % text)
        return int(number)


def _to_bool(text):
    lowered = text.lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ValueError("%r is not a boolean" % text)


def _to_floats(text):
    if not text:
        return []
    return [float(item) for item in text.split(",")]


def _to_seed(text):
    return None if text.lower() == "none" else _to_int(text)


class ExperimentConfig(Model):
    """
    The configuration of an experiment: the model parameters plus the
    settings of the commands (the sweep axis and values, the stationarity
    window, the worker count, the master seed and the oracle inputs).
    """

    COMMAND_FIELDS = (
        "seed",
        "axis",
        "values",
        "window_fraction",
        "threshold",
        "record_states",
        "workers",
        # oracle inputs
        "gamma",
        "beta",
        "n_failed",
        "pp",
        "fp",
        "k",
        "unit_payoff",
        "trials",
        "failures",
        "p_fail",
    )
    CONVERTERS = {
        "seed": _to_seed,
        "axis": str,
        "values": _to_floats,
        "record_states": _to_bool,
        "workers": _to_int,
        "n_failed": _to_int,
        "trials": _to_int,
        "failures": _to_int,
    }

    @staticmethod
    def default_config():
        """Return the defaults of the command settings."""
        return {
            "seed": None,
            "axis": "p_l",
            "values": [],
            "window_fraction": 0.25,
            "threshold": 0.10,
            "record_states": False,
            "workers": 1,
            "gamma": 0.368,
            "beta": 1.0,
            "n_failed": 1,
            "pp": 0.5,
            "fp": 0.5,
            "k": 1.0,
            "unit_payoff": 1.0,
            "trials": 20,
            "failures": 8,
            "p_fail": 0.4,
        }

    def __init__(self, params=None, **kwargs):
        super(ExperimentConfig, self).__init__()
        unknown = set(kwargs) - set(self.COMMAND_FIELDS)
        if unknown:
            name = sorted(unknown)[0]
            raise InvalidParameterError("unknown setting %s" % name, name)
        self.params = params if params is not None else ModelParams()
        values = self.default_config()
        values.update(kwargs)
        for name in self.COMMAND_FIELDS:
            setattr(self, name, values[name])
        self.values = [float(value) for value in self.values]
        self.validate()

    @classmethod
    def known_keys(cls):
        return (PRESET_KEY,) + ModelParams.FIELDS + cls.COMMAND_FIELDS

    @classmethod
    def convert(cls, key, text):
        """Convert the text of a setting into its value."""
        if key == PRESET_KEY or key in ModelParams.OPTIONS:
            return text
        if key in ModelParams.INTEGERS:
            return _to_int(text)
        return cls.CONVERTERS.get(key, float)(text)

    @classmethod
    def from_settings(cls, settings):
        """
        Build a configuration from a flat dictionary of settings. A preset
        is applied first, then the other settings override it.
        """
        settings = dict(settings)
        merged = {}
        name = settings.pop(PRESET_KEY, None)
        if name is not None:
            merged.update(preset(name))
        merged.update(settings)

        model = {k: v for k, v in merged.items() if k in ModelParams.FIELDS}
        command = {k: v for k, v in merged.items() if k not in ModelParams.FIELDS}
        return cls(ModelParams(**model), **command)

    def settings(self):
        """Return every setting as a flat dictionary."""
        dct = {name: getattr(self.params, name) for name in ModelParams.FIELDS}
        for name in self.COMMAND_FIELDS:
            dct[name] = getattr(self, name)
        return dct

    def replace(self, **changes):
        """Return a copy of the configuration with some settings changed."""
        settings = self.settings()
        settings.update(changes)
        return self.from_settings(settings)

    def validate(self):
        def check(ok, name, message):
            if not ok:
                raise InvalidParameterError(
                    "%s %s, got %r" % (name, message, getattr(self, name)), name
                )

        for name in ("gamma", "beta", "pp", "fp", "p_fail"):
            check(0.0 <= getattr(self, name) <= 1.0, name, "must lie in [0, 1]")
        check(0.0 < self.window_fraction <= 1.0, "window_fraction", "must lie in (0, 1]")
        check(self.threshold >= 0.0, "threshold", "must be >= 0")
        check(self.workers >= 1, "workers", "must be >= 1")
        check(self.n_failed >= 0, "n_failed", "must be >= 0")
        check(self.trials >= 0, "trials", "must be >= 0")
        check(0 <= self.failures <= self.trials, "failures", "must lie in [0, trials]")
        check(self.seed is None or self.seed >= 0, "seed", "must be >= 0")
        check(
            self.axis in ModelParams.sweepable(),
            "axis",
            "must be a real-valued parameter",
        )
        return self

    @staticmethod
    def _format(value):
        if value is None:
            return "none"
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, float):
            return repr(value)
        if isinstance(value, list):
            return ",".join(repr(float(item)) for item in value)
        return str(value)

    def serialize(self):
        """Render the configuration as a document parse_config reads back."""
        out = io.StringIO()
        out.write("# model parameters\n")
        for name in ModelParams.FIELDS:
            out.write("%s = %s\n" % (name, self._format(getattr(self.params, name))))
        out.write("# command settings\n")
        for name in self.COMMAND_FIELDS:
            out.write("%s = %s\n" % (name, self._format(getattr(self, name))))
        return out.getvalue()

    def save_config(self, path, logger=None):
        """Save the configuration file."""
        logger = logger or get_logger("Config")
        with io.open(path, "w", encoding="utf-8", newline="\n") as config_file:
            config_file.write(self.serialize())
        logger.debug("Saved config to %s", path)


def parse_config(text, preset_name=None):
    """
    Parse a line-oriented `key = value` document, `#` starting a comment.
    Omitted keys take their defaults. Any error is reported with the number
    of the offending line. A preset_name replaces the preset of the document.
    """
    settings = {}
    lines = {}
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigParseError("malformed line %r" % line, number)
        if key not in ExperimentConfig.known_keys():
            raise ConfigParseError("unknown key %s" % key, number, key)
        if key in lines:
            raise ConfigParseError(
                "%s already set on line %d" % (key, lines[key]), number, key
            )
        if key == PRESET_KEY and lines:
            raise ConfigParseError("preset must be the first key", number, key)
        try:
            settings[key] = ExperimentConfig.convert(key, value)
        except ValueError as e:
            raise ConfigParseError("invalid %s: %s" % (key, e), number, key)
        lines[key] = number

    if preset_name is not None:
        settings[PRESET_KEY] = preset_name
    try:
        return ExperimentConfig.from_settings(settings)
    except InvalidParameterError as e:
        line = lines.get(e.name, lines.get(PRESET_KEY, 0))
        raise ConfigParseError(str(e), line, e.name)


def load_config(path, preset_name=None, logger=None):
    """Load and parse a configuration file."""
    logger = logger or get_logger("Config")
    with io.open(path, "r", encoding="utf-8") as config_file:
        config = parse_config(config_file.read(), preset_name)
    logger.debug("Loaded config from %s: %r", path, config)
    return config
