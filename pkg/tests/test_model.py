import random

import pytest

from metasched.instances import read_bundled
from metasched.model import (
    Activity,
    AoaArc,
    InstanceError,
    ProjectNetwork,
    derive_precedence_from_nodes,
    induced_subnetwork,
    parse_aoa_instance,
    parse_tctp_instance,
    serialize_aoa_instance,
    validate_network,
)

TABLE1_TEXT = read_bundled("table1")
TABLE2_TEXT = read_bundled("table2")


class TestDerivePrecedence:
    def test_table1_node_sharing(self):
        net = derive_precedence_from_nodes(parse_aoa_instance(TABLE1_TEXT))
        assert net.predecessors[14] == {2, 5, 12}
        assert net.predecessors[1] == frozenset()
        assert net.predecessors[17] == {3, 8, 10}

    def test_single_arc(self):
        net = derive_precedence_from_nodes((AoaArc(1, 1, 2, 5),))
        assert net.ids == (1,)
        assert net.predecessors[1] == frozenset()

    def test_order_independent(self):
        arcs = parse_aoa_instance(TABLE1_TEXT)
        rng = random.Random(0)
        for _ in range(10):
            shuffled = list(arcs)
            rng.shuffle(shuffled)
            assert derive_precedence_from_nodes(tuple(shuffled)).predecessors == (
                derive_precedence_from_nodes(arcs).predecessors
            )

    def test_duplicate_id_rejected(self):
        arcs = (AoaArc(1, 0, 1, 5), AoaArc(1, 1, 2, 5))
        with pytest.raises(InstanceError, match="duplicate"):
            derive_precedence_from_nodes(arcs)

    def test_cyclic_node_structure_rejected(self):
        arcs = (AoaArc(1, 1, 2, 5), AoaArc(2, 2, 1, 5))
        with pytest.raises(InstanceError, match="cycle"):
            derive_precedence_from_nodes(arcs)


class TestParseAoa:
    def test_table1_arcs(self):
        arcs = parse_aoa_instance(TABLE1_TEXT)
        assert len(arcs) == 17
        assert (arcs[0].start_node, arcs[0].end_node, arcs[0].duration) == (0, 2, 20)

    def test_empty_instance(self):
        with pytest.raises(InstanceError, match="empty instance"):
            parse_aoa_instance('{"format": "aoa-v1", "arcs": []}')

    def test_negative_duration_names_activity(self):
        doc = '{"format": "aoa-v1", "arcs": [{"id": 3, "start": 0, "end": 1, "duration": -5}]}'
        with pytest.raises(InstanceError, match="3"):
            parse_aoa_instance(doc)

    def test_wrong_format_tag(self):
        with pytest.raises(InstanceError, match="aoa-v1"):
            parse_aoa_instance('{"format": "nope", "arcs": [{}]}')

    def test_demand_defaults_to_one(self):
        arcs = parse_aoa_instance('{"format": "aoa-v1", "arcs": [{"id": 1, "start": 0, "end": 1, "duration": 2}]}')
        assert arcs[0].demand == 1

    def test_roundtrip(self):
        arcs = parse_aoa_instance(TABLE1_TEXT)
        assert parse_aoa_instance(serialize_aoa_instance(arcs)) == arcs


class TestParseTctp:
    def test_activity4_options(self):
        inst = parse_tctp_instance(TABLE2_TEXT, indirect_cost_override=0)
        opts = [(o.duration, o.direct_cost) for o in inst.options[4]]
        assert opts == [(12, 45000), (16, 35000), (20, 30000), (20, 30000), (20, 30000)]

    def test_padded_duplicate_options_preserved(self):
        inst = parse_tctp_instance(TABLE2_TEXT, indirect_cost_override=0)
        assert [(o.duration, o.direct_cost) for o in inst.options[3]][2:] == [(33, 3200)] * 3

    def test_dependencies(self):
        inst = parse_tctp_instance(TABLE2_TEXT, indirect_cost_override=0)
        assert inst.network.predecessors[18] == {16, 17}
        assert inst.n_activities == 18

    def test_indirect_cost_required(self):
        with pytest.raises(InstanceError, match="indirect cost required"):
            parse_tctp_instance(TABLE2_TEXT)

    def test_unknown_dependency(self):
        doc = (
            '{"format": "tctp-v1", "indirect_cost_per_day": 0, "activities": '
            '[{"id": 1, "depends": [99], "options": [{"duration": 1, "cost": 1}]}]}'
        )
        with pytest.raises(InstanceError, match="99"):
            parse_tctp_instance(doc)


class TestValidateNetwork:
    def test_table1_clean(self, table1):
        assert validate_network(table1) == []

    def test_mutual_cycle(self):
        net = ProjectNetwork(
            activities=(Activity(1, 2), Activity(2, 3)),
            predecessors={1: frozenset({2}), 2: frozenset({1})},
        )
        report = validate_network(net)
        assert any("cycle" in entry and "1" in entry and "2" in entry for entry in report)

    def test_dangling_reference(self):
        net = ProjectNetwork(
            activities=(Activity(1, 2),),
            predecessors={1: frozenset({99})},
        )
        assert any("99" in entry for entry in validate_network(net))


def test_topological_order_is_acyclic_witness(table1):
    order = table1.topological_order()
    position = {aid: i for i, aid in enumerate(order)}
    for aid, preds in table1.predecessors.items():
        assert all(position[p] < position[aid] for p in preds)


def test_induced_subnetwork_drops_outside_edges(table1):
    sub = induced_subnetwork(table1, set(range(1, 9)))
    assert set(sub.ids) == set(range(1, 9))
    assert sub.predecessors[7] == {1}
    assert sub.predecessors[8] == {1}
