import hashlib
import json
import math

import numpy as np
import pytest

import hyperkit as hk

SQRT3 = math.sqrt(3.0)

GHJ_DOCUMENT = """
{
  "format_version": 1,
  "kind": "hypergroup",
  "labels": ["k0", "k1"],
  "unit": 0,
  "lambda": [
    [[1, 0], [0, 1]],
    [[0, 1], [{"a": 2, "b": -1, "c": 1, "d": 3}, {"a": -1, "b": 1, "c": 1, "d": 3}]]
  ]
}
"""


class TestQuadraticLiteral:
    def test_value(self):
        lit = hk.QuadraticLiteral(2, -1, 1, 3)
        assert abs(lit.value() - (2 - SQRT3)) < 1e-15

    def test_golden(self):
        lit = hk.QuadraticLiteral(5, 1, 2, 5)
        assert abs(lit.value() - (5 + math.sqrt(5)) / 2) < 1e-15

    def test_pretty(self):
        assert hk.QuadraticLiteral(2, -1, 1, 3).pretty() == "2-√3"
        assert hk.QuadraticLiteral(5, 1, 2, 5).pretty() == "(5+√5)/2"
        assert hk.QuadraticLiteral(1, 0, 2, 0).pretty() == "1/2"

    def test_rejects_bad_fields(self):
        with pytest.raises(hk.StructureError):
            hk.QuadraticLiteral(1, 1, 0, 2)
        with pytest.raises(hk.StructureError):
            hk.QuadraticLiteral(1, 1, 1, 4)  # 4 = 2^2 is not square-free
        with pytest.raises(hk.StructureError):
            hk.QuadraticLiteral(1, 1, 1, -1)

    def test_match_round_trip(self):
        for lit in (
            hk.QuadraticLiteral(2, -1, 1, 3),
            hk.QuadraticLiteral(5, 1, 2, 5),
            hk.QuadraticLiteral(0, 1, 2, 2),
            hk.QuadraticLiteral(1, 0, 3, 0),
        ):
            found = hk.match_quadratic(lit.value())
            assert found is not None
            assert abs(found.value() - lit.value()) < 1e-9

    def test_match_examples(self):
        found = hk.match_quadratic(2 - SQRT3)
        assert (found.a, found.b, found.c, found.d) == (2, -1, 1, 3)
        found = hk.match_quadratic((5 + math.sqrt(5)) / 2)
        assert (found.a, found.b, found.c, found.d) == (5, 1, 2, 5)
        found = hk.match_quadratic(0.5)
        assert found.d == 0 and (found.a, found.c) == (1, 2)

    def test_match_rejects_transcendental(self):
        assert hk.match_quadratic(math.pi, tol=1e-12) is None


class TestHypergroupDocuments:
    def test_parse_ghj_with_quadratic_literals(self, tables):
        table = hk.parse_hypergroup(GHJ_DOCUMENT)
        assert np.max(np.abs(table.lam - tables["ghj"].lam)) < 1e-12
        assert table.involution == (0, 1)  # inferred

    def test_involution_inferred_for_z2(self):
        doc = {
            "format_version": 1,
            "kind": "hypergroup",
            "labels": ["e", "g"],
            "unit": 0,
            "lambda": [[[1, 0], [0, 1]], [[0, 1], [1, 0]]],
        }
        table = hk.parse_hypergroup(json.dumps(doc))
        assert table.involution == (0, 1)

    def test_ambiguous_involution_is_hard_error(self):
        doc = {
            "format_version": 1,
            "kind": "hypergroup",
            "labels": ["e", "a", "b"],
            "unit": 0,
            "lambda": [
                [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                [[0, 1, 0], [0.5, 0.25, 0.25], [0.5, 0.25, 0.25]],
                [[0, 0, 1], [0.5, 0.25, 0.25], [0.5, 0.25, 0.25]],
            ],
        }
        with pytest.raises(hk.StructureError, match="involution"):
            hk.parse_hypergroup(json.dumps(doc))

    def test_negative_entry_fails_validation_with_report(self):
        doc = {
            "format_version": 1,
            "kind": "hypergroup",
            "labels": ["e", "g"],
            "unit": 0,
            "involution": [0, 1],
            "lambda": [[[1, 0], [0, 1]], [[0, 1], [1.2, -0.2]]],
        }
        with pytest.raises(hk.AxiomError) as info:
            hk.parse_hypergroup(json.dumps(doc))
        assert info.value.report is not None
        assert any(v.axiom == "nonnegativity" for v in info.value.report.violations)

    def test_schema_errors(self):
        with pytest.raises(hk.StructureError):
            hk.parse_hypergroup("not json at all {")
        with pytest.raises(hk.StructureError):
            hk.parse_hypergroup(json.dumps({"kind": "hypergroup"}))
        with pytest.raises(hk.StructureError):
            hk.parse_hypergroup(
                json.dumps({"format_version": 2, "kind": "hypergroup", "labels": [],
                            "unit": 0, "lambda": []})
            )
        with pytest.raises(hk.StructureError):
            hk.parse_hypergroup(json.dumps({"format_version": 1, "kind": "group"}))


class TestRoundTrips:
    def test_hypergroups(self, tables):
        for name, table in tables.items():
            text = hk.serialize_hypergroup(table)
            back = hk.parse_hypergroup(text)
            assert back.labels == table.labels and back.unit == table.unit
            assert back.involution == table.involution
            assert np.max(np.abs(back.lam - table.lam)) < 1e-9, name
            assert hk.serialize_hypergroup(back) == text

    def test_fusion_rings(self, rings):
        for ring in rings.values():
            text = hk.serialize_fusion_ring(ring)
            back = hk.parse_fusion_ring(text)
            assert back.labels == ring.labels and back.conj == ring.conj
            assert np.array_equal(back.N, ring.N)
            assert hk.serialize_fusion_ring(back) == text

    def test_groups(self, groups):
        for group in groups.values():
            text = hk.serialize_group(group)
            back = hk.parse_group(text)
            assert np.array_equal(back.mul, group.mul)
            assert back.identity == group.identity and back.labels == group.labels
            assert hk.serialize_group(back) == text

    def test_groupoids(self, groupoids):
        for name, g in groupoids.items():
            text = hk.serialize_groupoid(g)
            back = hk.parse_groupoid(text)
            assert back.objects == g.objects and back.mor == g.mor
            assert back.star == g.star and back.units == g.units
            for x in range(g.n_objects):
                for y in range(g.n_objects):
                    for z in range(g.n_objects):
                        assert np.max(
                            np.abs(back.comp[x][y][z] - g.comp[x][y][z])
                        ) < 1e-9, name
            assert hk.serialize_groupoid(back) == text

    def test_character_tables(self, tables):
        ct = hk.characters(tables["z3"])
        text = hk.serialize_character_table(ct)
        back = hk.parse_character_table(text)
        assert back.labels == ct.labels
        assert np.max(np.abs(back.chars - ct.chars)) < 1e-15
        assert np.array_equal(back.haar_weights, ct.haar_weights)
        assert hk.serialize_character_table(back) == text

    def test_serialization_hash_is_stable(self, tables):
        digests = {
            hashlib.sha256(hk.serialize_hypergroup(tables["ghj"]).encode()).hexdigest()
            for _ in range(3)
        }
        assert len(digests) == 1

    def test_canonical_output_is_valid_json(self, tables, groupoids):
        json.loads(hk.serialize_hypergroup(tables["conj-s3"]))
        json.loads(hk.serialize_groupoid(groupoids["two-object"]))


class TestParseDocument:
    def test_dispatch_by_kind(self, tables, groups):
        table = hk.parse_document(hk.serialize_hypergroup(tables["z2"]))
        assert isinstance(table, hk.HypergroupTable)
        group = hk.parse_document(hk.serialize_group(groups["q8"]))
        assert isinstance(group, hk.CayleyGroup)

    def test_report_kinds_checked(self):
        doc = {
            "format_version": 1,
            "kind": "validation_report",
            "passed": True,
            "violations": [],
        }
        assert hk.parse_document(json.dumps(doc))["passed"] is True
        with pytest.raises(hk.StructureError):
            hk.parse_document(json.dumps({"format_version": 1, "kind": "validation_report"}))

    def test_unknown_kind(self):
        with pytest.raises(hk.StructureError):
            hk.parse_document(json.dumps({"format_version": 1, "kind": "mystery"}))


class TestRegistryCompleteness:
    def test_expected_names_present(self, tables, rings, groups, groupoids):
        assert set(tables) == {
            "z2", "z3", "s3-group", "conj-s3", "s3-double-coset",
            "ghj", "fibonacci-rescaled", "ising-rescaled",
        }
        assert set(rings) == {"fibonacci", "ising", "s3-irreps"}
        assert set(groups) == {f"z{n}" for n in range(2, 13)} | {"s3", "s4", "d4", "q8"}
        assert set(groupoids) == {"ghj", "ising", "conj-s3", "two-object"}

    def test_all_entries_validate(self, tables, rings, groups, groupoids):
        for table in tables.values():
            assert hk.validate(table).passed
        for ring in rings.values():
            hk.validate_fusion_ring(ring)
        for group in groups.values():
            hk.validate_cayley(group)
        for g in groupoids.values():
            assert hk.validate_groupoid(g).passed

    def test_group_orders(self, groups):
        orders = {name: group.order for name, group in groups.items()}
        assert orders["s4"] == 24 and orders["d4"] == 8 and orders["q8"] == 8
        assert all(orders[f"z{n}"] == n for n in range(2, 13))
        assert max(orders.values()) <= 24
