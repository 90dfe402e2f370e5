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
import csv
import io
import math
import os

import numpy as np

from .models import AgentState, StationaryStats, SweepPoint, TimeSeriesRecord

DECIMALS = 6


def format_value(value):
    """
    Format one CSV field: reals with 6 decimals, booleans as 1/0 and missing
    values (None or NaN) as an empty field.
    """
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return "%d" % value
    if isinstance(value, (float, np.floating)):
        if math.isnan(value):
            return ""
        return "%.*f" % (DECIMALS, value)
    return str(value)


class Storage(object):
    """
    This object writes the output tables of the commands into an output
    directory. Every table is a CSV file with a header row; the first insert
    into a table truncates it, the next ones append to it.
    """

    def __init__(self, out_dir):
        self._out_dir = out_dir
        self._tables = {}
        self._created = set()

    @property
    def out_dir(self):
        return self._out_dir

    def path(self, filename):
        return os.path.join(self._out_dir, filename)

    def initialize(self):
        """Create the output directory and declare the fixed tables."""
        if not os.path.isdir(self._out_dir):
            os.makedirs(self._out_dir)
        series = list(TimeSeriesRecord.FIELDS)
        self._declare("series", "series.csv", series)
        self._declare(
            "trajectory",
            "trajectory.csv",
            ["t", "mean_fp0", "mean_fp1", "cv_fp0", "cv_fp1"],
        )
        self._declare(
            "snapshot",
            "snapshot.csv",
            ["node"] + list(AgentState.FIELDS) + ["centrality", "degree"],
        )
        self._declare(
            "ensemble_series",
            "ensemble_series.csv",
            ["realization", "seed"] + series,
        )
        self._declare("ensemble_mean", "ensemble_mean.csv", series)
        self._declare(
            "ensemble_summary",
            "ensemble_summary.csv",
            ["realization", "seed"] + list(StationaryStats.FIELDS),
        )
        self._declare("sweep", "sweep.csv", list(SweepPoint.FIELDS))
        self._declare(
            "sweep_detail", "sweep_detail.csv", list(SweepPoint.DETAIL_FIELDS)
        )

    def insert_series(self, records):
        """Insert the time series of a run."""
        self._insert("series", [record.row() for record in records])

    def insert_trajectory(self, records):
        """Insert the strategy means of a run, the phase portrait data."""
        columns = self._tables["trajectory"][1]
        self._insert(
            "trajectory",
            [[getattr(record, name) for name in columns] for record in records],
        )

    def insert_snapshot(self, snapshot, net):
        """Insert the final state of every node with its position in the net."""
        rows = []
        for node, agent in enumerate(snapshot):
            row = [node] + agent.row()
            row += [float(net.centrality[node]), int(net.degrees[node])]
            rows.append(row)
        self._insert("snapshot", rows)

    def insert_states(self, states):
        """Insert the node x time failure matrix, one row per step."""
        n, length = states.shape
        columns = ["t"] + ["node_%d" % node for node in range(n)]
        self._declare("states", "states.csv", columns)
        self._insert(
            "states",
            [[t] + [bool(v) for v in states[:, t]] for t in range(length)],
        )

    def insert_network(self, net):
        """Write the edge list of the network."""
        with io.open(
            self.path("network.edges"), "w", encoding="utf-8", newline="\n"
        ) as edges_file:
            edges_file.write(net.export_edges())

    def insert_ensemble(self, ensemble):
        """Insert the per-realization series and summaries and the means."""
        series_rows, summary_rows = [], []
        for index, run in enumerate(ensemble.runs):
            for record in run.series:
                series_rows.append([index, run.seed] + record.row())
            if run.stationary is not None:
                summary_rows.append([index, run.seed] + run.stationary.row())
        self._insert("ensemble_series", series_rows)
        self._insert("ensemble_mean", [record.row() for record in ensemble.means])
        self._insert("ensemble_summary", summary_rows)

    def insert_sweep(self, points):
        """Insert the rows of a sweep, in the order of the axis values."""
        self._insert("sweep", [point.row() for point in points])
        self._insert("sweep_detail", [point.detail_row() for point in points])

    def insert_oracle(self, block):
        """Write the key-value block of the oracles."""
        with io.open(
            self.path("oracle.txt"), "w", encoding="utf-8", newline="\n"
        ) as oracle_file:
            oracle_file.write(block)

    def _declare(self, table, filename, columns):
        self._tables[table] = (filename, list(columns))
        self._created.discard(table)

    def _insert(self, table, rows):
        """Write rows into a table, creating its file on the first insert."""
        filename, columns = self._tables[table]
        mode = "a" if table in self._created else "w"
        with io.open(
            self.path(filename), mode, encoding="utf-8", newline=""
        ) as table_file:
            writer = csv.writer(table_file, lineterminator="\n")
            if mode == "w":
                writer.writerow(columns)
            for row in rows:
                writer.writerow([format_value(value) for value in row])
        self._created.add(table)
