import random

import pytest

from metasched.cpm import compute_cpm
from metasched.model import Activity, ProjectNetwork
from metasched.oracle import (
    OracleGuard,
    OracleLimitError,
    exhaustive_rcpsp,
    exhaustive_tctp,
    longest_path_makespan,
    oracle_serial_sgs,
)
from metasched.rcpsp import random_activity_list, serial_sgs

from conftest import random_dag


class TestLongestPath:
    def test_table1(self, table1):
        assert longest_path_makespan(table1) == 126

    def test_agrees_with_cpm_on_random_networks(self, table1):
        rng = random.Random(13)
        for _ in range(50):
            net = random_dag(rng)
            assert longest_path_makespan(net) == compute_cpm(net).makespan

    def test_cycle_detected(self):
        net = ProjectNetwork(
            activities=(Activity(1, 2), Activity(2, 3)),
            predecessors={1: frozenset({2}), 2: frozenset({1})},
        )
        with pytest.raises(OracleLimitError, match="cycle"):
            longest_path_makespan(net)


class TestExhaustiveTctp:
    def test_reduced_instance_front(self, table2_sub6):
        result = exhaustive_tctp(table2_sub6)
        assert len(result.front) == 12
        assert result.front[0] == (36, 88600)
        assert result.front[-1] == (54, 63400)

    def test_front_is_non_dominated_and_sorted(self, table2_sub6):
        front = exhaustive_tctp(table2_sub6).front
        assert list(front) == sorted(front)
        costs = [c for _, c in front]
        assert costs == sorted(costs, reverse=True)
        assert len(set(costs)) == len(costs)

    def test_min_total_cost_at_zero_indirect(self, table2_sub6):
        result = exhaustive_tctp(table2_sub6, indirect_cost=0)
        assert result.min_total_cost == 63400
        assert set(result.best_choices) == set(table2_sub6.network.ids)

    def test_min_total_cost_tracks_indirect_cost(self, table2_sub6):
        # With a huge daily cost the optimum must sit at the fastest duration.
        result = exhaustive_tctp(table2_sub6, indirect_cost=10**6)
        assert result.min_total_cost == 36 * 10**6 + 88600

    def test_guard_on_activity_count(self, table2):
        with pytest.raises(OracleLimitError, match="exceeds"):
            exhaustive_tctp(table2)


class TestExhaustiveRcpsp:
    def test_reduced_instance_capacity3(self, table1_sub8):
        assert exhaustive_rcpsp(table1_sub8, 3) == 129

    def test_generous_capacity_matches_cpm(self, table1_sub8):
        assert exhaustive_rcpsp(table1_sub8, 8) == compute_cpm(table1_sub8).makespan

    def test_optimum_never_beaten_by_random_lists(self, table1_sub8):
        best = exhaustive_rcpsp(table1_sub8, 3)
        rng = random.Random(17)
        for _ in range(30):
            order = random_activity_list(table1_sub8, rng)
            assert serial_sgs(table1_sub8, 3, order).makespan >= best

    def test_state_budget_enforced(self, table1_sub8):
        with pytest.raises(OracleLimitError, match="budget"):
            exhaustive_rcpsp(table1_sub8, 3, OracleGuard(max_activities=8, max_states=10))

    def test_guard_on_activity_count(self, table1):
        with pytest.raises(OracleLimitError, match="exceeds"):
            exhaustive_rcpsp(table1, 7)


def test_oracle_sgs_agrees_with_production_decoder(table1):
    rng = random.Random(19)
    for _ in range(30):
        net = random_dag(rng, max_activities=10)
        capacity = rng.randint(3, 6)
        order = random_activity_list(net, rng)
        reference = oracle_serial_sgs(net, capacity, order)
        assert serial_sgs(net, capacity, order).start_times == reference
