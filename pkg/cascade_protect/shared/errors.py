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


class CascadeError(Exception):
    """Base class of every error raised by the package."""


class InvalidParameterError(CascadeError, ValueError):
    """A parameter is outside of its documented range."""

    def __init__(self, message, name=None):
        super(InvalidParameterError, self).__init__(message)
        self.name = name


class ConfigParseError(InvalidParameterError):
    """
    A configuration document could not be parsed. The line number is 1-based
    and is also part of the message.
    """

    def __init__(self, message, line, name=None):
        super(ConfigParseError, self).__init__(
            "line %d: %s" % (line, message), name
        )
        self.line = line


class DegenerateGraphError(CascadeError):
    """The graph has no edge, its adjacency spectrum is all zeros."""


class ConvergenceError(CascadeError, RuntimeError):
    """The power iteration did not reach the tolerance within max_iter."""

    def __init__(self, residual, iterations):
        super(ConvergenceError, self).__init__(
            "no convergence after %d iterations (residual %g)"
            % (iterations, residual)
        )
        self.residual = residual
        self.iterations = iterations


class DegenerateChainError(CascadeError):
    """A two-state chain with gamma = beta = 0 has no unique stationary law."""


class NoStationaryCapitalError(CascadeError):
    """The capital recursion c = 1 + a c diverges because a >= 1."""


class DomainError(CascadeError, ValueError):
    """An argument lies outside of the function domain."""


class UndefinedCVError(CascadeError):
    """The coefficient of variation of a series with a zero mean."""
