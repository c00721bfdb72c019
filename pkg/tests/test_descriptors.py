"""Tests for JSON descriptor parsing."""

from __future__ import annotations

import pytest

from mcb_workbench.arrangements import Arrangement, braid_arrangement
from mcb_workbench.descriptors import (
    DescriptorError,
    MissingField,
    RawFamily,
    UnknownType,
    as_matroid,
    get_supported_types,
    load_descriptor,
    parse_descriptor,
    read_descriptor,
    to_descriptor,
)
from mcb_workbench.lines import HHFamily, LineArrangement, TVector
from mcb_workbench.matroid import NotIntersectionClosed, uniform_matroid
from mcb_workbench.nestohedra import BuildingSet, NotUnionClosed
from mcb_workbench.paving import PavingBlocks

from .conftest import FANO_LINES, K4_EDGES


class TestParseDescriptor:
    """Test dispatch on the 'type' field."""

    def test_supported_types(self):
        assert get_supported_types() == [
            "flats",
            "graph",
            "uniform",
            "building_set",
            "family",
            "arrangement",
            "graph_arrangement",
            "lines",
            "paving",
            "hh",
        ]

    def test_flats(self, u23):
        data = {"type": "flats", "n": 3, "flats": [[], [1], [2], [3], [1, 2, 3]]}
        assert parse_descriptor(data) == u23

    def test_flats_are_validated(self):
        data = {"type": "flats", "n": 3, "flats": [[], [1, 2], [2, 3], [1, 2, 3]]}
        with pytest.raises(NotIntersectionClosed):
            parse_descriptor(data)

    def test_graph(self, k4):
        assert parse_descriptor({"type": "graph", "vertices": 4, "edges": K4_EDGES}) == k4

    def test_uniform(self):
        assert parse_descriptor({"type": "uniform", "r": 2, "n": 4}) == uniform_matroid(2, 4)

    def test_building_set(self):
        parsed = parse_descriptor(
            {"type": "building_set", "n": 2, "members": [[1], [2], [1, 2]]}
        )
        assert isinstance(parsed, BuildingSet)
        assert parsed.is_connected()

    def test_building_set_is_validated(self):
        data = {"type": "building_set", "n": 3, "members": [[1], [2], [3], [1, 2], [2, 3]]}
        with pytest.raises(NotUnionClosed):
            parse_descriptor(data)

    def test_family_is_not_validated(self):
        parsed = parse_descriptor({"type": "family", "n": 3, "members": [[1, 2], [2, 3]]})
        assert parsed == RawFamily(n=3, members=(0b011, 0b110))

    def test_arrangement_with_rationals(self):
        parsed = parse_descriptor(
            {"type": "arrangement", "dim": 2, "normals": [["1/2", "0"], ["0", "-3"]]}
        )
        assert isinstance(parsed, Arrangement)
        assert parsed.normals == ((1, 0), (0, 1))

    def test_arrangement_dim_mismatch(self):
        with pytest.raises(DescriptorError) as exc_info:
            parse_descriptor({"type": "arrangement", "dim": 3, "normals": [["1", "0"]]})
        assert "'dim' is 3" in str(exc_info.value)

    def test_bad_rational(self):
        with pytest.raises(DescriptorError):
            parse_descriptor({"type": "arrangement", "normals": [["1/0", "1"]]})

    def test_graph_arrangement(self):
        parsed = parse_descriptor(
            {"type": "graph_arrangement", "vertices": 3, "edges": [[1, 2], [2, 3], [1, 3]]}
        )
        assert as_matroid(parsed) == as_matroid(braid_arrangement(3))

    def test_lines_from_incidences(self):
        parsed = parse_descriptor(
            {"type": "lines", "n_lines": 4, "points": [[1, 2, 3], [1, 4], [2, 4], [3, 4]]}
        )
        assert isinstance(parsed, LineArrangement)
        assert TVector.of(parsed).counts == ((2, 3), (3, 1))

    def test_lines_from_triples(self):
        parsed = parse_descriptor(
            {"type": "lines", "triples": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}
        )
        assert isinstance(parsed, LineArrangement)
        assert parsed.n_lines == 3

    def test_paving(self):
        parsed = parse_descriptor({"type": "paving", "n": 7, "m": 2, "blocks": FANO_LINES})
        assert isinstance(parsed, PavingBlocks)
        assert len(parsed.blocks) == 7

    def test_hh(self):
        parsed = parse_descriptor({"type": "hh", "kind": "three_modular", "params": {"m": "4"}})
        assert isinstance(parsed, HHFamily)
        assert parsed.arrangement.n_lines == 9

    def test_unknown_type(self):
        with pytest.raises(UnknownType) as exc_info:
            parse_descriptor({"type": "polymatroid"})
        assert "Supported: flats" in str(exc_info.value)

    def test_missing_field(self):
        with pytest.raises(MissingField) as exc_info:
            parse_descriptor({"type": "uniform", "r": 2})
        assert "needs 'n'" in str(exc_info.value)

    def test_not_an_object(self):
        with pytest.raises(DescriptorError):
            parse_descriptor([1, 2, 3])

    def test_elements_are_one_based(self):
        with pytest.raises(ValueError):
            parse_descriptor({"type": "family", "n": 2, "members": [[0, 1]]})


class TestFiles:
    """Test reading descriptors from disk."""

    def test_load(self, write_descriptor, u23):
        path = write_descriptor({"type": "uniform", "r": 2, "n": 3})
        assert load_descriptor(path) == u23

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(DescriptorError) as exc_info:
            read_descriptor(path)
        assert "is not valid JSON" in str(exc_info.value)

    def test_not_an_object(self, write_descriptor):
        path = write_descriptor([1, 2])
        with pytest.raises(DescriptorError):
            read_descriptor(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError) as exc_info:
            read_descriptor(tmp_path / "missing.json")
        assert "Failed to read descriptor" in str(exc_info.value)


class TestConversions:
    """Test matroid extraction and descriptor output."""

    def test_as_matroid_from_paving(self):
        parsed = parse_descriptor({"type": "paving", "n": 7, "m": 2, "blocks": FANO_LINES})
        assert as_matroid(parsed).rank == 3

    def test_as_matroid_from_hh(self):
        parsed = parse_descriptor({"type": "hh", "kind": "near_pencil", "params": {"k": 4}})
        assert as_matroid(parsed).n == 4

    def test_building_set_has_no_matroid(self):
        parsed = parse_descriptor({"type": "building_set", "n": 1, "members": [[1]]})
        with pytest.raises(DescriptorError) as exc_info:
            as_matroid(parsed)
        assert "carries no matroid" in str(exc_info.value)

    def test_to_descriptor_reparses(self):
        data = {"type": "hh", "kind": "two_modular", "params": {"a": 2, "b": 3}}
        assert to_descriptor(parse_descriptor(data)) == data
        family = {"type": "family", "n": 3, "members": [[1, 2], [2, 3]]}
        assert to_descriptor(parse_descriptor(family)) == family
