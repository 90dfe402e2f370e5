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
"""
Per-step kernels of the model. Each kernel takes the population, the
parameters it needs and a numpy Generator, and returns a new population; the
input is never modified. Draw counts do not depend on the state (every kernel
draws full-length arrays), which keeps the streams aligned across runs.
"""
import numpy as np
from scipy.special import expit

from ..shared.models import AgentState


class Population(object):
    """
    The agents of the network, stored column-wise. The protection
    probability column holds the value computed at the last failure
    resolution for flagged nodes, and NaN elsewhere.
    """

    COLUMNS = (
        "capital",
        "fp0",
        "fp1",
        "fp",
        "failed",
        "failure_potential",
        "fail_countdown",
        "pp",
    )

    def __init__(
        self,
        capital,
        fp0,
        fp1,
        fp,
        failed=None,
        failure_potential=None,
        fail_countdown=None,
        pp=None,
    ):
        super(Population, self).__init__()
        n = len(capital)
        self.capital = np.array(capital, dtype=float)
        self.fp0 = np.array(fp0, dtype=float)
        self.fp1 = np.array(fp1, dtype=float)
        self.fp = np.array(fp, dtype=float)
        self.failed = _column(failed, n, bool)
        self.failure_potential = _column(failure_potential, n, bool)
        self.fail_countdown = _column(fail_countdown, n, int)
        self.pp = np.full(n, np.nan) if pp is None else np.array(pp, dtype=float)

    @classmethod
    def initial(cls, n, init_fp0, init_fp1, init_sd, centrality, f_m, rng):
        """
        Every agent starts with a unit capital, without failure, and with
        strategies drawn from Normal(init_fp0, init_sd) and
        Normal(init_fp1, init_sd).
        """
        fp0 = rng.normal(init_fp0, init_sd, size=n)
        fp1 = rng.normal(init_fp1, init_sd, size=n)
        fp = protection_level(fp0, fp1, centrality, f_m)
        return cls(np.ones(n), fp0, fp1, fp)

    @classmethod
    def from_states(cls, states):
        """Build a population from a sequence of AgentState."""
        columns = {name: [] for name in AgentState.FIELDS}
        for state in states:
            for name in AgentState.FIELDS:
                columns[name].append(getattr(state, name))
        return cls(**columns)

    def copy(self):
        return Population(*[getattr(self, name) for name in self.COLUMNS])

    def __len__(self):
        return len(self.capital)

    @property
    def ongoing(self):
        """Nodes in a failure that lasts beyond the current step."""
        return self.fail_countdown > 0

    def snapshot(self):
        """Return the state of every agent as a list of AgentState."""
        return [
            AgentState(
                capital=float(self.capital[i]),
                fp0=float(self.fp0[i]),
                fp1=float(self.fp1[i]),
                fp=float(self.fp[i]),
                failed=bool(self.failed[i]),
                failure_potential=bool(self.failure_potential[i]),
                fail_countdown=int(self.fail_countdown[i]),
            )
            for i in range(len(self))
        ]


def _column(values, n, dtype):
    if values is None:
        return np.zeros(n, dtype=dtype)
    return np.array(values, dtype=dtype)


def _scalar(value):
    """Unwrap 0-d arrays so that scalar calls return plain floats."""
    if np.ndim(value) == 0:
        return float(value)
    return value


def protection_level(fp0, fp1, centrality, f_m):
    """
    Protection level f_p = f_p0 + f_p1 C, truncated to the closed interval
    [0, 1 - f_m]. The strategies themselves are left untouched.
    """
    fp = np.asarray(fp0, dtype=float) + np.asarray(fp1, dtype=float) * centrality
    return _scalar(np.clip(fp, 0.0, 1.0 - f_m))


def capital_update(c, f_m, fp):
    """One unit of payoff plus what is left after maintenance and protection."""
    return _scalar(1.0 + (1.0 - f_m - np.asarray(fp, dtype=float)) * c)


def protection_probability(pp_max, cp_half, fp, c):
    """
    Saturating protection p_p = pp_max / (1 + cp_half / (f_p c)).

    Without investment (f_p c = 0) the protection is 0 when cp_half > 0, and
    pp_max when cp_half = 0.
    """
    investment = np.asarray(fp, dtype=float) * np.asarray(c, dtype=float)
    if cp_half == 0:
        return _scalar(np.full(np.shape(investment), float(pp_max)))
    with np.errstate(divide="ignore", invalid="ignore"):
        pp = pp_max / (1.0 + cp_half / investment)
    return _scalar(np.where(investment > 0, pp, 0.0))


def imitation_probability(s, delta_c):
    """Fermi rule 1 / (1 + exp(-s delta_c)), saturating without overflow."""
    return _scalar(expit(s * np.asarray(delta_c, dtype=float)))


def imitation_sweep(agents, p_r, s, rng, mode="sequential"):
    """
    Each agent, in index order, picks with probability p_r a uniformly random
    role model other than itself and copies its strategy pair with the Fermi
    probability of their capital difference. Agents in an ongoing failure
    are not focal agents but can still be copied.

    In "sequential" mode a copy is visible at once, so an agent copying a
    role model with a lower index gets the strategy that role model holds
    after its own update. In "synchronous" mode every copy reads the
    strategies held at the start of the sweep.
    """
    agents = agents.copy()
    n = len(agents)
    if n < 2:
        return agents

    attempt = rng.random(n) < p_r
    offsets = rng.integers(0, n - 1, size=n)
    accept = rng.random(n)

    index = np.arange(n)
    roles = offsets + (offsets >= index)
    delta = agents.capital[roles] - agents.capital
    copies = attempt & (accept < imitation_probability(s, delta)) & ~agents.ongoing

    source = np.where(copies, roles, index)
    if mode == "sequential":
        # Pointer jumping: an agent copying an earlier agent that also copied
        # inherits that agent's source, until every source is resolved.
        pending = copies & (roles < index)
        while pending.any():
            jump = source[source]
            pending_next = pending[source]
            source = np.where(pending, jump, source)
            pending = pending & pending_next

    fp0 = agents.fp0[source]
    fp1 = agents.fp1[source]
    agents.fp0 = fp0
    agents.fp1 = fp1
    return agents


def exploration_sweep(agents, p_e, mu, sigma_e, rng, mode="independent"):
    """
    Perturb strategies by Normal(mu, sigma_e) increments. In "independent"
    mode each of the two values of every agent moves with probability p_e/2;
    in "single" mode an agent moves with probability p_e and then picks one
    of its two values. Values are not truncated.
    """
    agents = agents.copy()
    n = len(agents)
    if mode == "single":
        explore = rng.random(n) < p_e
        second = rng.integers(0, 2, size=n).astype(bool)
        increment = rng.normal(mu, sigma_e, size=n)
        agents.fp0 = agents.fp0 + np.where(explore & ~second, increment, 0.0)
        agents.fp1 = agents.fp1 + np.where(explore & second, increment, 0.0)
        return agents

    explore = rng.random((n, 2)) < 0.5 * p_e
    increment = rng.normal(mu, sigma_e, size=(n, 2))
    agents.fp0 = agents.fp0 + np.where(explore[:, 0], increment[:, 0], 0.0)
    agents.fp1 = agents.fp1 + np.where(explore[:, 1], increment[:, 1], 0.0)
    return agents


def payoff_update(agents, centrality, f_m):
    """
    Recompute the protection level of every agent and pay the agents that
    are not in an ongoing failure; ongoing failures keep a zero capital.
    """
    agents = agents.copy()
    agents.fp = protection_level(agents.fp0, agents.fp1, centrality, f_m)
    paid = ~agents.ongoing
    agents.capital = np.where(
        paid, capital_update(agents.capital, f_m, agents.fp), 0.0
    )
    return agents


def originate_potentials(agents, p_n, rng):
    """Flag each node with probability p_n, existing flags persist."""
    agents = agents.copy()
    agents.failure_potential |= rng.random(len(agents)) < p_n
    return agents


def propagate_potentials(net, agents, p_l, rng):
    """
    Every node failed at the previous step flags each of its neighbors with
    probability p_l. Nodes flagged here do not propagate in the same step.
    One row of draws is taken per failed node, in ascending node order.
    """
    agents = agents.copy()
    sources = np.flatnonzero(agents.failed)
    if sources.size == 0:
        return agents
    draws = rng.random((sources.size, len(agents)))
    for source, row in zip(sources, draws):
        targets = net.neighbors[source]
        agents.failure_potential[targets[row[targets] < p_l]] = True
    return agents


def resolve_failures(agents, pp_max, cp_half, f_m, failtime, rng):
    """
    Clear the failures whose countdown ran out, then turn each flagged node
    that is not failed into a failure with probability 1 - p_p. A new failure
    wipes the capital and lasts failtime steps.
    """
    agents = agents.copy()
    n = len(agents)
    draws = rng.random(n)

    agents.failed = agents.failed & agents.ongoing
    exposed = agents.failure_potential & ~agents.failed
    fp = np.clip(agents.fp, 0.0, 1.0 - f_m)
    pp = np.asarray(protection_probability(pp_max, cp_half, fp, agents.capital))
    agents.pp = np.where(exposed, pp, np.nan)

    fails = exposed & (draws < 1.0 - pp)
    agents.failed = agents.failed | fails
    agents.fail_countdown = np.where(fails, failtime, agents.fail_countdown)
    agents.capital = np.where(agents.failed, 0.0, agents.capital)
    return agents


def reset_potentials(agents, rec1, rng):
    """
    Clear each failure potential with probability rec1 and count down the
    remaining steps of the failed nodes.
    """
    agents = agents.copy()
    agents.failure_potential &= ~(rng.random(len(agents)) < rec1)
    agents.fail_countdown = np.where(
        agents.failed & agents.ongoing,
        agents.fail_countdown - 1,
        agents.fail_countdown,
    )
    return agents
