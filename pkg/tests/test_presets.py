import itertools
from fractions import Fraction

import pytest

from uggap.construction import EdgeData, EdgeRecord, build_gap_pair, classify_good_edges
from uggap.gf2 import rref_basis
from uggap.instances import validate
from uggap.lifting import lift
from uggap.presets import (
    REGISTRY,
    instance_token_names,
    pair_names,
    resolve_instance_token,
    resolve_pair,
)
from uggap.solver import exact_opt


class TestRegistry:
    def test_names(self):
        assert pair_names() == ("fig2", "fig3")

    def test_unknown_pair(self):
        with pytest.raises(KeyError):
            resolve_pair("fig9")

    def test_all_instances_validate_cleanly(self):
        for pair in REGISTRY.values():
            for inst in (pair.u1, pair.u2):
                assert validate(inst) == []


class TestFig2:
    def test_shape(self):
        pair = resolve_pair("fig2")
        assert pair.graph.vertices == ("v1", "v2", "v3")
        assert len(pair.graph.edges) == 3
        assert pair.u1.m == 1

    def test_bundles(self):
        pair = resolve_pair("fig2")
        assert all(pair.u1.bundle(u, v) == (0,) for u, v in pair.graph.edges)
        assert pair.u2.bundle("v1", "v2") == (0,)
        assert pair.u2.bundle("v1", "v3") == (0,)
        assert pair.u2.bundle("v2", "v3") == (1,)

    def test_edge_data_is_all_zero_subspaces(self):
        pair = resolve_pair("fig2")
        for e, rec in pair.edge_data.records.items():
            assert rec.space.dim == 0
            assert rec.b == (1 if e == ("v2", "v3") else 0)

    def test_exact_optima(self):
        pair = resolve_pair("fig2")
        assert exact_opt(pair.u1).optimum == 1
        assert exact_opt(pair.u2).optimum == Fraction(2, 3)

    def test_lifted_sizes(self):
        pair = resolve_pair("fig2")
        l1, l2 = pair.lifted()
        assert len(l1.graph.vertices) == 6
        assert l1.constraint_count == 12
        assert exact_opt(l2).optimum == Fraction(2, 3)


class TestFig3:
    def test_frozen_bundles(self):
        pair = resolve_pair("fig3")
        u1 = {e: pair.u1.bundle(*e) for e in pair.graph.edges}
        assert u1 == {
            ("v1", "v2"): (0b00, 0b01),
            ("v1", "v3"): (0b00, 0b10),
            ("v1", "v4"): (0b00, 0b11),
            ("v2", "v3"): (0b00, 0b11),
            ("v2", "v4"): (0b00, 0b10),
            ("v3", "v4"): (0b00, 0b01),
        }
        assert pair.u2.bundle("v3", "v4") == (0b10, 0b11)
        for e in pair.graph.edges[:-1]:
            assert pair.u2.bundle(*e) == pair.u1.bundle(*e)

    def test_exact_optima(self):
        pair = resolve_pair("fig3")
        assert exact_opt(pair.u1).optimum == Fraction(1, 2)
        assert exact_opt(pair.u2).optimum == Fraction(5, 12)

    def test_all_edges_good_at_r_2(self):
        pair = resolve_pair("fig3")
        good, bad = classify_good_edges(pair.graph, pair.edge_data, pair.r)
        assert bad == ()

    def test_opposite_edges_share_direction(self):
        # the three perfect matchings of K4, one direction each
        pair = resolve_pair("fig3")
        rec = pair.edge_data.record
        assert rec("v1", "v2").space == rec("v3", "v4").space
        assert rec("v1", "v3").space == rec("v2", "v4").space
        assert rec("v1", "v4").space == rec("v2", "v3").space

    def test_search_over_free_directions_has_unique_hit(self):
        # Two subspaces and one shift are pinned by the worked example;
        # the other four directions are fixed by requiring every edge
        # good at r=2 and the second optimum exactly 5/12.  Replaying
        # the canonical-order search must find exactly the shipped data.
        pair = resolve_pair("fig3")
        graph = pair.graph
        fixed = {("v1", "v4"): 0b11, ("v3", "v4"): 0b01}
        free = [("v1", "v2"), ("v1", "v3"), ("v2", "v3"), ("v2", "v4")]
        b = {e: 0 for e in graph.edges}
        b[("v3", "v4")] = 0b10
        hits = []
        for combo in itertools.product([0b01, 0b10, 0b11], repeat=4):
            gen = dict(fixed)
            gen.update(dict(zip(free, combo)))
            data = EdgeData(
                2,
                1,
                {e: EdgeRecord(rref_basis([gen[e]], 2), b[e]) for e in graph.edges},
            )
            good, bad = classify_good_edges(graph, data, 2)
            if bad:
                continue
            out = build_gap_pair(graph, data, 2)
            if exact_opt(out.u2).optimum == Fraction(5, 12):
                hits.append(combo)
        assert hits == [(0b01, 0b10, 0b11, 0b10)]
        shipped = tuple(pair.edge_data.record(*e).space.basis[0] for e in free)
        assert shipped == hits[0]


class TestTokens:
    def test_catalog(self):
        assert len(instance_token_names()) == 8
        assert "fig3-u2-lifted" in instance_token_names()

    def test_resolution(self):
        pair = resolve_pair("fig3")
        assert resolve_instance_token("fig3-u1") == pair.u1
        assert resolve_instance_token("fig3-u2-lifted") == lift(pair.u2)
        assert resolve_instance_token("fig2-u2") == resolve_pair("fig2").u2

    @pytest.mark.parametrize(
        "bad", ["fig5-u1", "fig3-u3", "fig3-u1-liftedx", "fig3", "u1-fig3", ""]
    )
    def test_bad_tokens(self, bad):
        assert resolve_instance_token(bad) is None
