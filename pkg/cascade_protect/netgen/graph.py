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

from .centrality import power_iteration
from ..shared.errors import InvalidParameterError


class NetworkModel(object):
    """
    An undirected Erdos-Renyi graph, immutable once built. It is stored both
    as a sorted edge list and as per-node neighbor arrays walked by the
    failure propagation (plus the dense adjacency used by the centrality),
    and carries the normalized eigenvector centrality of its nodes.
    """

    def __init__(self, n, p_c, seed, edges, centrality):
        super(NetworkModel, self).__init__()
        self._n = n
        self._p_c = p_c
        self._seed = seed
        self._edges = tuple(edges)

        adjacency = np.zeros((n, n), dtype=bool)
        if self._edges:
            rows, cols = np.array(self._edges, dtype=np.intp).T
            adjacency[rows, cols] = True
            adjacency[cols, rows] = True
        adjacency.setflags(write=False)
        self._adjacency = adjacency

        self._neighbors = tuple(np.flatnonzero(row) for row in adjacency)
        for neighbors in self._neighbors:
            neighbors.setflags(write=False)

        self._degrees = adjacency.sum(axis=1)
        self._degrees.setflags(write=False)

        self._centrality = np.array(centrality, dtype=float)
        self._centrality.setflags(write=False)

    @property
    def n(self):
        return self._n

    @property
    def p_c(self):
        return self._p_c

    @property
    def seed(self):
        return self._seed

    @property
    def edges(self):
        return self._edges

    @property
    def centrality(self):
        return self._centrality

    @property
    def adjacency(self):
        return self._adjacency

    @property
    def neighbors(self):
        return self._neighbors

    @property
    def degrees(self):
        return self._degrees

    def __repr__(self):
        return "NetworkModel(n=%d, p_c=%r, seed=%r, edges=%d)" % (
            self._n,
            self._p_c,
            self._seed,
            len(self._edges),
        )

    def export_edges(self):
        """
        Return the edge-list text of the graph: a header line, then one
        "i j" pair per line, 0-based, in ascending order.
        """
        lines = ["# er n=%d p=%r seed=%d" % (self._n, self._p_c, self._seed)]
        lines.extend("%d %d" % edge for edge in self._edges)
        return "\n".join(lines) + "\n"


def check_graph_parameters(n, p_c):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise InvalidParameterError("n must be an integer >= 1, got %r" % n, "n")
    if not 0.0 <= p_c <= 1.0:
        raise InvalidParameterError(
            "p_c must lie in [0, 1], got %r" % p_c, "p_c"
        )


def generate_er(n, p_c, seed, mode="max", tol=1e-10, max_iter=10000):
    """
    Generate G(n, p_c): each of the n(n-1)/2 candidate pairs, taken in the
    row-major order of the upper triangle, is kept when its uniform draw
    falls below p_c. The graph is a pure function of (n, p_c, seed).
    """
    check_graph_parameters(n, p_c)
    n = int(n)
    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(rows.size) < p_c
    edges = list(zip(rows[keep].tolist(), cols[keep].tolist()))

    if edges:
        adjacency = np.zeros((n, n), dtype=float)
        adjacency[rows[keep], cols[keep]] = 1.0
        adjacency[cols[keep], rows[keep]] = 1.0
        centrality = power_iteration(adjacency, tol, max_iter, mode)
    else:
        # Without edges every node is isolated and gets a zero centrality
        centrality = np.zeros(n)
    return NetworkModel(n, float(p_c), seed, edges, centrality)


def build_network(n, edges, seed=0, mode="max", tol=1e-10, max_iter=10000):
    """
    Build a network from an explicit edge list (used for hand-made graphs
    such as stars and paths). Pairs are normalized to i < j and sorted;
    self-loops and duplicates are rejected. p_c is set to the edge density.
    """
    n = int(n)
    pairs = set()
    for i, j in edges:
        if i == j:
            raise InvalidParameterError("self-loop on node %d" % i, "edges")
        if not (0 <= i < n and 0 <= j < n):
            raise InvalidParameterError("node out of range in %r" % ((i, j),), "edges")
        pair = (min(i, j), max(i, j))
        if pair in pairs:
            raise InvalidParameterError("duplicate edge %r" % (pair,), "edges")
        pairs.add(pair)
    edges = sorted(pairs)

    adjacency = np.zeros((n, n), dtype=float)
    for i, j in edges:
        adjacency[i, j] = adjacency[j, i] = 1.0
    if edges:
        centrality = power_iteration(adjacency, tol, max_iter, mode)
    else:
        centrality = np.zeros(n)
    candidates = n * (n - 1) // 2
    p_c = len(edges) / float(candidates) if candidates else 0.0
    return NetworkModel(n, p_c, seed, edges, centrality)
