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
import numpy as np

from ..shared.errors import (
    ConvergenceError,
    DegenerateGraphError,
    InvalidParameterError,
)

MODES = ("max", "euclid")


def power_iteration(adjacency, tol=1e-10, max_iter=10000, mode="max"):
    """
    Leading eigenvector of a symmetric nonnegative adjacency matrix.

    The iteration starts from the uniform vector and multiplies by (A + I),
    which has the same eigenvectors as A but a strictly dominant leading
    eigenvalue, so bipartite graphs (paths, stars) converge instead of
    oscillating. Iterates are rescaled to a maximum of 1; the loop stops when
    two successive iterates differ by less than tol in max-norm.
    """
    if tol <= 0:
        raise InvalidParameterError("tol must be > 0", "tol")
    if mode not in MODES:
        raise InvalidParameterError(
            "mode must be one of %s, got %r" % ("|".join(MODES), mode), "mode"
        )
    adjacency = np.asarray(adjacency, dtype=float)
    if not adjacency.any():
        raise DegenerateGraphError("centrality of a graph without edges")

    x = np.full(adjacency.shape[0], 1.0 / adjacency.shape[0])
    residual = np.inf
    for _ in range(max_iter):
        y = x + adjacency @ x
        y /= y.max()
        residual = np.abs(y - x).max()
        x = y
        if residual < tol:
            break
    else:
        raise ConvergenceError(residual, max_iter)

    if mode == "euclid":
        return x / np.linalg.norm(x)
    return x


def eigenvector_centrality(net, tol=1e-10, max_iter=10000, mode="max"):
    """
    Eigenvector centrality of the nodes of a network. The "max" mode scales
    the vector so that its largest entry is 1, "euclid" to unit length.
    Isolated nodes get a centrality of 0.
    """
    return power_iteration(net.adjacency, tol, max_iter, mode)
