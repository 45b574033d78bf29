import random

import pytest

from splicecert import (
    Arm,
    Arrowhead,
    CablingSpec,
    EdgeNotInternal,
    SpliceDiagram,
    UnknownEdge,
    classify,
    edge_determinant,
    end_nodes,
    exceptional_type,
    is_minimal,
    subdivide_edge,
    validate,
)
from splicecert.diagram import MultiNode, OneNode

from conftest import load, random_valid_diagram


def star(*weights):
    return SpliceDiagram.one_node(list(weights))


class TestConstruction:
    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            SpliceDiagram(["v"], ["v"], [])

    def test_unknown_endpoint_rejected(self):
        with pytest.raises(ValueError, match="unknown vertex"):
            SpliceDiagram(["v"], ["K"], [("v", "L", 2, None)])

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError, match="self-loop"):
            SpliceDiagram(["v"], [], [("v", "v", 2, 3)])

    def test_duplicate_edge_rejected(self):
        with pytest.raises(ValueError, match="duplicate edge"):
            SpliceDiagram(["v"], ["K"], [("v", "K", 2, None), ("K", "v", None, 3)])

    def test_leaf_side_weight_rejected(self):
        with pytest.raises(ValueError, match="cannot carry a weight"):
            SpliceDiagram(["v"], ["K"], [("v", "K", 2, 5)])

    def test_node_side_weight_required(self):
        with pytest.raises(ValueError, match="positive integer"):
            SpliceDiagram(["v"], ["K"], [("v", "K", None, None)])

    def test_nonpositive_weight_rejected(self):
        with pytest.raises(ValueError, match="positive integer"):
            SpliceDiagram(["v"], ["K"], [("v", "K", 0, None)])

    def test_arrow_on_node_rejected(self):
        with pytest.raises(ValueError, match="non-leaf"):
            SpliceDiagram(["v"], ["K"], [("v", "K", 2, None)], arrows={"v": (1, 0)})

    def test_bad_name_rejected(self):
        with pytest.raises(ValueError, match="vertex name"):
            SpliceDiagram(["a b"], [], [])

    def test_accessors(self):
        d = star(2, 3, 13)
        assert d.nodes == ("v",)
        assert d.leaves == ("K1", "K2", "K3")
        assert d.near_weight("v", "K3") == 13
        assert d.near_weight("K3", "v") is None
        assert d.valence("v") == 3
        assert d.weights_at("v") == {"K1": 2, "K2": 3, "K3": 13}
        with pytest.raises(UnknownEdge):
            d.near_weight("K1", "K2")


class TestValidate:
    def test_brieskorn_star_valid(self):
        assert validate(star(2, 3, 5)).is_valid

    def test_non_coprime_weights_flagged(self):
        report = validate(star(2, 4, 5))
        assert not report.is_valid
        assert [v.code for v in report.violations] == ["coprimality"]
        assert report.violations[0].where == "v"

    def test_cabled_example_valid_with_unit_determinant(self):
        d = load("m345_cabled.sd")
        assert validate(d).is_valid
        assert edge_determinant(d, ("v", "w")) == 5 * 5 - (3 * 4) * (2 * 1) == 1

    def test_negative_determinant_flagged(self):
        base = star(3, 4, 5)
        spec = CablingSpec(("v", "K3"), 3, new_arms=(Arm(2, "K3"), Arm(1, "K")))
        cabled, report = subdivide_edge(base, spec)
        assert edge_determinant(cabled, ("v", "c1")) == 5 * 3 - 12 * 2 == -9
        assert [v.code for v in report.violations] == ["edge-determinant"]

    def test_cycle_reported(self):
        d = SpliceDiagram(
            ["a", "b", "c"],
            [],
            [("a", "b", 1, 1), ("b", "c", 1, 1), ("c", "a", 1, 1)],
        )
        codes = {v.code for v in validate(d)}
        assert "not-a-tree" in codes

    def test_disconnected_reported(self):
        d = SpliceDiagram(["v"], ["K", "L"], [("v", "K", 2, None)])
        codes = [v.code for v in validate(d)]
        assert "not-a-tree" in codes
        assert "leaf-valence" in codes  # L has no edge
        assert "node-valence" in codes  # v has valence 1

    def test_small_node_valence_flagged(self):
        d = SpliceDiagram(["v", "w"], ["K"], [("v", "w", 2, 3), ("v", "K", 5, None)])
        codes = [v.code for v in validate(d)]
        assert codes.count("node-valence") == 2

    def test_report_codes_stable_under_relabelling(self):
        rng = random.Random(7)
        for _ in range(20):
            d = random_valid_diagram(rng)
            names = list(d.vertices)
            shuffled = names[:]
            rng.shuffle(shuffled)
            mapping = {old: f"x{i}" for i, old in enumerate(shuffled)}
            relabelled = d.relabelled(mapping)
            left = sorted(v.code for v in validate(d))
            right = sorted(v.code for v in validate(relabelled))
            assert left == right == []


class TestEdgeDeterminant:
    def test_symmetry(self):
        d = load("m345_cabled.sd")
        assert edge_determinant(d, ("v", "w")) == edge_determinant(d, ("w", "v"))

    def test_leaf_edge_rejected(self):
        d = star(2, 3, 5)
        with pytest.raises(EdgeNotInternal):
            edge_determinant(d, ("v", "K1"))

    def test_unknown_edge(self):
        d = load("m345_cabled.sd")
        with pytest.raises(UnknownEdge):
            edge_determinant(d, ("v", "K3"))


class TestShape:
    def test_one_node(self):
        assert classify(star(2, 3, 13)) == OneNode((2, 3, 13))

    def test_two_node_end_nodes(self):
        d = load("m345_cabled.sd")
        assert classify(d) == MultiNode(("v", "w"))

    def test_chain_end_nodes_are_pair_carriers(self):
        d = load("chain_reduction.sd")
        assert end_nodes(d) == ("pa", "pb")

    def test_exceptional_tags(self):
        assert exceptional_type(star(2, 3, 5)) == "M235"
        assert exceptional_type(star(2, 3, 7)) == "M237"
        assert exceptional_type(star(2, 3, 11)) == "M2311"
        assert exceptional_type(star(2, 3, 13)) is None
        assert exceptional_type(load("m345_cabled.sd")) is None


class TestMinimality:
    def test_star_minimal(self):
        assert is_minimal(star(2, 3, 13)).is_minimal

    def test_weight_one_plain_leaf_flagged(self):
        d = SpliceDiagram(
            ["v"], ["K1", "K2", "K3"],
            [("v", "K1", 1, None), ("v", "K2", 3, None), ("v", "K3", 5, None)],
        )
        report = is_minimal(d)
        assert not report.is_minimal
        assert report.violations[0].code == "weight-one-leaf"

    def test_weight_one_arrowhead_exempt(self):
        d = SpliceDiagram(
            ["v"], ["K1", "K2", "K3"],
            [("v", "K1", 1, None), ("v", "K2", 3, None), ("v", "K3", 5, None)],
            arrows={"K1": Arrowhead(1, 0)},
        )
        assert is_minimal(d).is_minimal

    def test_valence_two_flagged(self):
        d = SpliceDiagram(
            ["v"], ["K1", "K2"], [("v", "K1", 2, None), ("v", "K2", 3, None)]
        )
        report = is_minimal(d)
        assert not report.is_minimal
        assert {v.code for v in report.violations} == {"valence-two"}


class TestSubdivideEdge:
    def test_unknown_edge(self):
        d = star(2, 3, 5)
        with pytest.raises(UnknownEdge):
            subdivide_edge(d, CablingSpec(("v", "nope"), 2))

    def test_old_end_must_be_node(self):
        d = star(2, 3, 5)
        with pytest.raises(ValueError, match="must be a node"):
            subdivide_edge(d, CablingSpec(("K1", "v"), 2))

    def test_node_name_collision(self):
        d = star(2, 3, 5)
        with pytest.raises(ValueError, match="already in use"):
            subdivide_edge(d, CablingSpec(("v", "K3"), 2, node_name="v"))

    def test_far_node_needs_weight(self):
        d = load("m345_cabled.sd")
        with pytest.raises(ValueError, match="weight_toward_far_side"):
            subdivide_edge(d, CablingSpec(("v", "w"), 2))

    def test_leaf_cable_reattaches(self):
        d = star(3, 4, 5)
        spec = CablingSpec(("v", "K3"), 5, new_arms=(Arm(2, "K3"), Arm(1, "K")))
        cabled, report = subdivide_edge(d, spec)
        assert report.is_valid
        assert cabled.nodes == ("c1", "v")
        assert cabled.near_weight("v", "c1") == 5  # unchanged on the old side
        assert cabled.near_weight("c1", "v") == 5
        assert cabled.near_weight("c1", "K3") == 2
        assert cabled.near_weight("c1", "K") == 1
        # input untouched
        assert d.leaves == ("K1", "K2", "K3")
        assert d.nodes == ("v",)

    def test_internal_subdivision_keeps_far_weight(self):
        d = load("m345_cabled.sd")
        spec = CablingSpec(
            ("v", "w"), 7, weight_toward_far_side=1, new_arms=(Arm(1, "L"),)
        )
        cabled, _ = subdivide_edge(d, spec)
        assert cabled.near_weight("v", "c1") == 5
        assert cabled.near_weight("c1", "v") == 7
        assert cabled.near_weight("c1", "w") == 1
        assert cabled.near_weight("w", "c1") == 5

    def test_leaf_split_preserved(self):
        rng = random.Random(11)
        for _ in range(25):
            d = random_valid_diagram(rng)
            node = d.nodes[0]
            leaf = next(w for w in d.neighbours(node) if d.is_leaf(w))
            near_side = set(d.leaves) - {leaf}
            spec = CablingSpec(
                (node, leaf), 3, new_arms=(Arm(2, leaf), Arm(1, d.fresh_name("K")))
            )
            cabled, _ = subdivide_edge(d, spec)
            fresh = next(n for n in cabled.nodes if n not in d.nodes)
            far = set(cabled.leaves_beyond(node, fresh))
            assert far == {leaf} | {a.label for a in spec.new_arms}
            assert set(cabled.leaves) - far == near_side

    def test_contracting_new_node_restores_tree_shape(self):
        d = load("m345_cabled.sd")
        spec = CablingSpec(
            ("v", "w"), 7, weight_toward_far_side=1, new_arms=(Arm(1, "L"),)
        )
        cabled, _ = subdivide_edge(d, spec)
        # Delete the fresh node's arms and contract it: adjacency of the
        # surviving vertices matches the original tree.
        survivors = {
            x: {y for y in cabled.neighbours(x) if y not in ("c1", "L")} | (
                {"w"} if x == "v" else {"v"} if x == "w" else set()
            )
            for x in d.vertices
        }
        assert survivors == {x: set(d.neighbours(x)) for x in d.vertices}


class TestRelabelling:
    def test_round_trip(self):
        d = load("m345_cabled.sd")
        mapping = {name: f"r_{name}" for name in d.vertices}
        back = {f"r_{name}": name for name in d.vertices}
        assert d.relabelled(mapping).relabelled(back) == d
