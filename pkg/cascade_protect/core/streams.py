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

from ..shared.errors import InvalidParameterError

# Every random draw of a realization comes from a named stage stream. The
# order of this tuple is part of the reproducibility contract.
STAGES = (
    "network",
    "init",
    "imitation",
    "exploration",
    "origination",
    "propagation",
    "resolution",
    "reset",
)


def check_seed(seed):
    if isinstance(seed, bool) or int(seed) != seed or seed < 0:
        raise InvalidParameterError(
            "seed must be a non-negative integer, got %r" % (seed,), "seed"
        )
    return int(seed)


def derive_seed(seed, *path):
    """
    Derive a 64-bit sub-seed from a seed and a path of non-negative integers
    (e.g. the realization index). Distinct paths give independent seeds.
    """
    sequence = np.random.SeedSequence(entropy=check_seed(seed), spawn_key=path)
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


class RandomStreams(object):
    """
    The random streams of one realization. Each stage owns a Philox key
    derived from the realization seed; the stream of a (stage, step) pair is
    the Philox counter block starting at the step index, so any stream can be
    rebuilt without replaying the ones before it.
    """

    def __init__(self, seed):
        super(RandomStreams, self).__init__()
        self._seed = check_seed(seed)
        self._keys = {}
        for index, stage in enumerate(STAGES):
            sequence = np.random.SeedSequence(
                entropy=self._seed, spawn_key=(index,)
            )
            self._keys[stage] = sequence.generate_state(2, dtype=np.uint64)

    @property
    def seed(self):
        return self._seed

    def network_seed(self):
        """The seed handed to the graph generator."""
        return derive_seed(self._seed, STAGES.index("network"))

    def stream(self, stage, step=0):
        """Return the generator of the given stage at the given step."""
        counter = np.array([0, 0, 0, step], dtype=np.uint64)
        bit_generator = np.random.Philox(counter=counter, key=self._keys[stage])
        return np.random.Generator(bit_generator)
