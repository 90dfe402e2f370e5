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
import pytest
from hypothesis import given, settings, strategies as st

from cascade_protect.core import dynamics
from cascade_protect.core.dynamics import Population
from cascade_protect.netgen.graph import build_network


class ScriptedRng(object):
    """Hands out prepared draws in order, in place of a numpy Generator."""

    def __init__(self, *draws):
        self._draws = [np.asarray(draw) for draw in draws]

    def _next(self):
        return self._draws.pop(0)

    def random(self, size=None):
        return self._next()

    def integers(self, low, high=None, size=None):
        return self._next()

    def normal(self, loc=0.0, scale=1.0, size=None):
        return self._next()


def population(fp0, fp1, capital=None, **columns):
    n = len(fp0)
    capital = np.ones(n) if capital is None else capital
    fp = np.clip(np.asarray(fp0) + np.asarray(fp1), 0.0, 0.9)
    return Population(capital, fp0, fp1, fp, **columns)


def test_protection_level_is_truncated():
    assert dynamics.protection_level(0.4, 0.5, 1.0, 0.1) == pytest.approx(0.9)
    assert dynamics.protection_level(0.3, 0.2, 0.5, 0.1) == pytest.approx(0.4)
    assert dynamics.protection_level(0.8, 0.5, 1.0, 0.1) == pytest.approx(0.9)
    assert dynamics.protection_level(-0.2, 0.1, 1.0, 0.1) == 0.0
    levels = dynamics.protection_level(
        np.array([0.1, 2.0]), np.array([0.1, 0.0]), np.array([1.0, 0.0]), 0.1
    )
    assert np.allclose(levels, [0.2, 0.9])


def test_capital_update():
    assert dynamics.capital_update(1.0, 0.1, 0.5) == pytest.approx(1.4)
    assert dynamics.capital_update(0.0, 0.1, 0.5) == 1.0
    assert dynamics.capital_update(2.0, 0.1, 0.9) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "pp_max, cp_half, investment, expected",
    [
        (1.0, 1.0, 0.9, 0.4737),
        (0.1, 1.0, 0.9, 0.0474),
        (0.1, 0.1, 0.1, 0.05),
        (1.0, 0.1, 0.1, 0.5),
    ],
)
def test_protection_scenarios(pp_max, cp_half, investment, expected):
    pp = dynamics.protection_probability(pp_max, cp_half, investment, 1.0)
    assert pp == pytest.approx(expected, abs=1e-4)


def test_protection_without_investment():
    assert dynamics.protection_probability(1.0, 0.1, 0.0, 5.0) == 0.0
    assert dynamics.protection_probability(1.0, 0.1, 0.5, 0.0) == 0.0
    assert dynamics.protection_probability(0.7, 0.0, 0.0, 0.0) == 0.7
    pp = dynamics.protection_probability(1.0, 0.0, np.array([0.0, 0.5]), 1.0)
    assert pp.tolist() == [1.0, 1.0]


def test_imitation_probability():
    assert dynamics.imitation_probability(100.0, 0.0) == 0.5
    assert dynamics.imitation_probability(1e6, 1.0) == 1.0
    assert dynamics.imitation_probability(1e6, -1.0) == 0.0
    assert dynamics.imitation_probability(0.0, 5.0) == 0.5
    assert dynamics.imitation_probability(1.0, 1.0) == pytest.approx(
        1.0 / (1.0 + np.exp(-1.0))
    )


def test_sequential_imitation_sees_earlier_copies():
    agents = population([0.1, 0.2, 0.3], [0.4, 0.5, 0.6])
    # agent 0 does not try, agent 1 copies agent 0, agent 2 copies agent 1
    draws = ([0.9, 0.0, 0.0], [0, 0, 1], [0.0, 0.0, 0.0])

    sequential = dynamics.imitation_sweep(
        agents, 0.5, 1.0, ScriptedRng(*draws), "sequential"
    )
    assert sequential.fp0.tolist() == [0.1, 0.1, 0.1]
    assert sequential.fp1.tolist() == [0.4, 0.4, 0.4]

    synchronous = dynamics.imitation_sweep(
        agents, 0.5, 1.0, ScriptedRng(*draws), "synchronous"
    )
    assert synchronous.fp0.tolist() == [0.1, 0.1, 0.2]
    assert synchronous.fp1.tolist() == [0.4, 0.4, 0.5]

    # the input population is left untouched
    assert agents.fp0.tolist() == [0.1, 0.2, 0.3]


def test_imitation_skips_ongoing_failures():
    agents = population(
        [0.1, 0.2, 0.3], [0.4, 0.5, 0.6], fail_countdown=[0, 2, 0]
    )
    draws = ([0.9, 0.0, 0.0], [0, 0, 1], [0.0, 0.0, 0.0])
    result = dynamics.imitation_sweep(agents, 0.5, 1.0, ScriptedRng(*draws))
    assert result.fp0.tolist() == [0.1, 0.2, 0.2]


def test_imitation_single_agent_is_a_no_op():
    agents = population([0.3], [0.4])
    result = dynamics.imitation_sweep(agents, 1.0, 1.0, np.random.default_rng(0))
    assert result.fp0.tolist() == [0.3]


@settings(max_examples=50, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=30),
    p_r=st.floats(min_value=0.0, max_value=1.0),
    s=st.floats(min_value=0.0, max_value=1000.0),
    seed=st.integers(min_value=0, max_value=2 ** 32),
    mode=st.sampled_from(["sequential", "synchronous"]),
)
def test_imitation_copies_whole_pairs(n, p_r, s, seed, mode):
    rng = np.random.default_rng(seed)
    agents = population(rng.random(n), rng.random(n), capital=rng.random(n) * 3)
    result = dynamics.imitation_sweep(agents, p_r, s, rng, mode)
    before = set(zip(agents.fp0.tolist(), agents.fp1.tolist()))
    after = set(zip(result.fp0.tolist(), result.fp1.tolist()))
    assert after <= before
    assert np.array_equal(result.capital, agents.capital)


def test_no_imitation_without_revision():
    rng = np.random.default_rng(3)
    agents = population(rng.random(8), rng.random(8))
    result = dynamics.imitation_sweep(agents, 0.0, 100.0, rng)
    assert np.array_equal(result.fp0, agents.fp0)
    assert np.array_equal(result.fp1, agents.fp1)


def test_exploration_modes():
    agents = population(np.zeros(50), np.zeros(50))
    assert np.array_equal(
        dynamics.exploration_sweep(
            agents, 0.0, 0.0, 0.1, np.random.default_rng(1)
        ).fp0,
        agents.fp0,
    )

    independent = dynamics.exploration_sweep(
        agents, 1.0, 0.25, 0.0, np.random.default_rng(1), "independent"
    )
    moved = np.concatenate([independent.fp0, independent.fp1])
    assert set(moved.tolist()) <= {0.0, 0.25}
    assert 0 < (moved == 0.25).sum() < moved.size

    single = dynamics.exploration_sweep(
        agents, 1.0, 0.25, 0.0, np.random.default_rng(1), "single"
    )
    assert np.allclose(single.fp0 + single.fp1, 0.25)


def test_payoff_skips_ongoing_failures():
    agents = population(
        [0.2, 0.2],
        [0.3, 0.3],
        capital=[2.0, 0.0],
        failed=[False, True],
        fail_countdown=[0, 3],
    )
    result = dynamics.payoff_update(agents, np.array([1.0, 1.0]), 0.1)
    assert result.fp.tolist() == pytest.approx([0.5, 0.5])
    assert result.capital[0] == pytest.approx(1.0 + 0.4 * 2.0)
    assert result.capital[1] == 0.0


def test_payoff_pays_failures_about_to_end():
    agents = population(
        [0.2], [0.3], capital=[0.0], failed=[True], fail_countdown=[0]
    )
    result = dynamics.payoff_update(agents, np.array([1.0]), 0.1)
    assert result.capital.tolist() == [1.0]


def test_origination():
    agents = population(np.zeros(20), np.zeros(20))
    rng = np.random.default_rng(5)
    assert not dynamics.originate_potentials(agents, 0.0, rng).failure_potential.any()
    assert dynamics.originate_potentials(agents, 1.0, rng).failure_potential.all()

    flagged = population([0.0, 0.0], [0.0, 0.0], failure_potential=[True, False])
    kept = dynamics.originate_potentials(flagged, 0.0, rng)
    assert kept.failure_potential.tolist() == [True, False]


def test_propagation_follows_links():
    star = build_network(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    agents = population(np.zeros(5), np.zeros(5), failed=[True] + [False] * 4)
    rng = np.random.default_rng(11)

    spread = dynamics.propagate_potentials(star, agents, 1.0, rng)
    assert spread.failure_potential.tolist() == [False, True, True, True, True]
    assert not dynamics.propagate_potentials(
        star, agents, 0.0, rng
    ).failure_potential.any()

    leaf = population(np.zeros(5), np.zeros(5), failed=[False, True, False, False, False])
    spread = dynamics.propagate_potentials(star, leaf, 1.0, rng)
    assert spread.failure_potential.tolist() == [True, False, False, False, False]


def test_full_protection_prevents_failures():
    agents = population(
        np.full(10, 0.3), np.zeros(10), failure_potential=[True] * 10
    )
    result = dynamics.resolve_failures(
        agents, 1.0, 0.0, 0.1, 1, np.random.default_rng(2)
    )
    assert not result.failed.any()
    assert np.allclose(result.pp, 1.0)


def test_no_protection_fails_every_exposed_node():
    agents = population(
        np.full(4, 0.3),
        np.zeros(4),
        capital=np.full(4, 2.0),
        failure_potential=[True, True, False, False],
    )
    result = dynamics.resolve_failures(
        agents, 0.0, 1.0, 0.1, 3, np.random.default_rng(2)
    )
    assert result.failed.tolist() == [True, True, False, False]
    assert result.fail_countdown.tolist() == [3, 3, 0, 0]
    assert result.capital.tolist() == [0.0, 0.0, 2.0, 2.0]
    assert result.pp[:2].tolist() == [0.0, 0.0]
    assert np.isnan(result.pp[2:]).all()


def test_failure_cycle_with_unit_failtime():
    agents = population(
        [0.3], [0.0], capital=[1.0], failure_potential=[True]
    )
    never = dict(pp_max=0.0, cp_half=1.0, f_m=0.1, failtime=1)

    agents = dynamics.resolve_failures(agents, rng=ScriptedRng([0.5]), **never)
    assert agents.failed.tolist() == [True]
    assert agents.fail_countdown.tolist() == [1]

    agents = dynamics.reset_potentials(agents, 1.0, ScriptedRng([0.0]))
    assert agents.failure_potential.tolist() == [False]
    assert agents.fail_countdown.tolist() == [0]

    # the failure ends at the next resolution and the node is paid again
    agents = dynamics.payoff_update(agents, np.array([0.0]), 0.1)
    assert agents.capital.tolist() == [1.0]
    agents = dynamics.resolve_failures(agents, rng=ScriptedRng([0.5]), **never)
    assert agents.failed.tolist() == [False]


def test_long_failures_count_down():
    agents = population(
        [0.3], [0.0], failed=[True], fail_countdown=[3]
    )
    for remaining in (2, 1, 0, 0):
        agents = dynamics.reset_potentials(agents, 0.0, np.random.default_rng(0))
        assert agents.fail_countdown.tolist() == [remaining]


def test_initial_population():
    rng = np.random.default_rng(8)
    agents = Population.initial(6, 0.7, 0.7, 0.0, np.linspace(0, 1, 6), 0.1, rng)
    assert agents.capital.tolist() == [1.0] * 6
    assert not agents.failed.any()
    assert not agents.failure_potential.any()
    assert agents.fp0.tolist() == [0.7] * 6
    assert np.allclose(agents.fp, np.minimum(0.7 + 0.7 * np.linspace(0, 1, 6), 0.9))
    snapshot = agents.snapshot()
    assert len(snapshot) == 6
    assert Population.from_states(snapshot).fp1.tolist() == [0.7] * 6


def test_documented_values():
    assert dynamics.capital_update(1.0, 0.1, 0.4) == pytest.approx(1.5)
    assert dynamics.imitation_probability(100.0, 0.1) == pytest.approx(0.9999546, abs=1e-7)
    assert dynamics.imitation_probability(1.0, -1.0) == pytest.approx(0.2689, abs=1e-4)


def test_strong_selection_between_two_agents():
    agents = population([0.1, 0.6], [0.2, 0.7], capital=[0.0, 10.0])
    result = dynamics.imitation_sweep(agents, 1.0, 1e6, np.random.default_rng(4))
    assert result.fp0.tolist() == [0.6, 0.6]
    assert result.fp1.tolist() == [0.7, 0.7]


def test_exploration_without_noise():
    rng = np.random.default_rng(6)
    agents = population(rng.random(10), rng.random(10))
    result = dynamics.exploration_sweep(agents, 1.0, 0.0, 0.0, rng)
    assert np.array_equal(result.fp0, agents.fp0)
    assert np.array_equal(result.fp1, agents.fp1)


def test_sampling_rates():
    rng = np.random.default_rng(10)
    agents = population(np.zeros(10000), np.zeros(10000))
    flagged = dynamics.originate_potentials(agents, 0.1, rng).failure_potential
    assert abs(flagged.sum() - 1000) <= 150

    flagged_all = population(
        np.zeros(10000), np.zeros(10000), failure_potential=np.ones(10000, bool)
    )
    kept = dynamics.reset_potentials(flagged_all, 0.5, rng).failure_potential
    assert abs((~kept).sum() - 5000) <= 250

    # fp c = 0.1 with pp_max = 1 and cp_half = 0.1 protects half of the time
    exposed = population(
        np.full(10000, 0.1), np.zeros(10000), failure_potential=np.ones(10000, bool)
    )
    failed = dynamics.resolve_failures(exposed, 1.0, 0.1, 0.1, 1, rng).failed
    assert failed.mean() == pytest.approx(0.5, abs=0.02)


def test_propagation_on_complete_graph():
    complete = build_network(10, [(i, j) for i in range(10) for j in range(i + 1, 10)])
    agents = population(np.zeros(10), np.zeros(10), failed=[True] + [False] * 9)
    rng = np.random.default_rng(12)
    hits = [
        dynamics.propagate_potentials(complete, agents, 0.3, rng).failure_potential[1:].sum()
        for _ in range(2000)
    ]
    assert np.mean(hits) == pytest.approx(2.7, abs=0.15)


def test_exploration_rates_and_noise():
    agents = population(np.zeros(50000), np.zeros(50000))
    result = dynamics.exploration_sweep(
        agents, 1.0, 0.0, 0.1, np.random.default_rng(14)
    )
    values = np.concatenate([result.fp0, result.fp1])
    moved = values[values != 0.0]
    assert moved.size / values.size == pytest.approx(0.5, abs=0.01)
    assert moved.std() == pytest.approx(0.1, abs=0.005)

    single = dynamics.exploration_sweep(
        agents, 1.0, 0.0, 0.1, np.random.default_rng(15), "single"
    )
    assert np.all((single.fp0 != 0.0) ^ (single.fp1 != 0.0))
    assert (single.fp0 != 0.0).mean() == pytest.approx(0.5, abs=0.01)


@given(
    s=st.floats(0.0, 100.0),
    delta=st.floats(-50.0, 50.0),
)
def test_imitation_probability_is_symmetric(s, delta):
    total = dynamics.imitation_probability(s, delta) + dynamics.imitation_probability(
        s, -delta
    )
    assert total == pytest.approx(1.0, abs=1e-12)


nonnegative = st.one_of(st.just(0.0), st.floats(1e-3, 10.0))
fraction = st.one_of(st.just(0.0), st.floats(1e-3, 1.0))


@given(
    pp_max=fraction,
    cp_half=nonnegative,
    fp=fraction,
    c=nonnegative,
    first=nonnegative,
    second=nonnegative,
)
def test_protection_probability_is_monotone(pp_max, cp_half, fp, c, first, second):
    low, high = sorted((first, second))
    base = dict(pp_max=pp_max, cp_half=cp_half, fp=fp, c=c)

    def protection(**changes):
        return dynamics.protection_probability(**dict(base, **changes))

    assert protection(c=low) <= protection(c=high) + 1e-12
    assert protection(cp_half=low) >= protection(cp_half=high) - 1e-12
    low, high = low / 10.0, high / 10.0
    assert protection(fp=low) <= protection(fp=high) + 1e-12
    assert protection(pp_max=low) <= protection(pp_max=high) + 1e-12


def test_equal_capital_copies_half_of_the_time():
    agents = population(np.arange(10000.0), np.arange(10000.0))
    result = dynamics.imitation_sweep(
        agents, 1.0, 50.0, np.random.default_rng(16), "synchronous"
    )
    assert (result.fp0 != agents.fp0).mean() == pytest.approx(0.5, abs=0.02)


def test_propagation_draws_per_neighbor():
    path = build_network(4, [(0, 1), (1, 2), (2, 3)])
    agents = population(
        np.zeros(4), np.zeros(4), failed=[False, True, False, True]
    )
    # node 1 reaches node 0 but not node 2, node 3 reaches node 2;
    # draws on non-neighbors are never read
    draws = ([[0.1, 0.0, 0.9, 0.0], [0.0, 0.0, 0.1, 0.0]],)
    spread = dynamics.propagate_potentials(path, agents, 0.5, ScriptedRng(*draws))
    assert spread.failure_potential.tolist() == [True, False, True, False]
