"""Shared pytest fixtures for MCB workbench tests."""

from __future__ import annotations

import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import pytest

from mcb_workbench.arrangements import Arrangement
from mcb_workbench.catalog import Catalog
from mcb_workbench.descriptors import Parsed, as_matroid
from mcb_workbench.lines import HHFamily, LineArrangement
from mcb_workbench.matroid import Matroid, boolean_matroid, matroid_from_graph, uniform_matroid
from mcb_workbench.models import (
    ClaimObservation,
    ClaimRecord,
    ClaimStatus,
    McbReport,
    McbWitness,
    ResultSet,
)
from mcb_workbench.paving import PavingBlocks

K4_EDGES = [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]
FANO_LINES = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]]


@pytest.fixture
def u23() -> Matroid:
    """Three points on a line: rank 2, hyperplanes are the singletons."""
    return uniform_matroid(2, 3)


@pytest.fixture
def boolean3() -> Matroid:
    return boolean_matroid(3)


@pytest.fixture
def k4() -> Matroid:
    """Cycle matroid of the complete graph on four vertices."""
    return matroid_from_graph(4, K4_EDGES)


@pytest.fixture
def write_descriptor(tmp_path: Path) -> Callable[[dict[str, Any], str], Path]:
    """Write a descriptor dict as JSON and return its path."""

    def _write(data: dict[str, Any], name: str = "input.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def failing_report() -> McbReport:
    """MCB(2) failure of U_{2,3}: element 3 is covered away by {1} and {2}."""
    return McbReport(
        holds=False,
        degree_queried=2,
        witness=McbWitness(missing=2, cover=(0b001, 0b010)),
    )


@pytest.fixture
def sample_result_set(failing_report: McbReport) -> ResultSet:
    return ResultSet.from_record("mcb check", failing_report)


@pytest.fixture
def sample_claim_record() -> ClaimRecord:
    """A refuted claim with one agreeing and one disagreeing observation."""
    record = ClaimRecord(
        id="C9",
        title="Graphic degree predicate",
        anchor="bounded by vertices of degree ≥ 2",
        status=ClaimStatus.REFUTED,
        instances_tested=2,
    )
    record.observations.append(
        ClaimObservation("graph/path", "predicate vs failure", "False", "1", True)
    )
    record.observations.append(
        ClaimObservation("graph/triangle", "predicate vs failure", "True", "2", False)
    )
    record.witnesses.append({"instance": "graph/triangle", "descriptor": {"type": "graph"}})
    record.notes.append("Counterexample at the triangle")
    return record


CATALOG_MAX_ELEMENTS = 7


def _element_count(parsed: Parsed) -> int:
    if isinstance(parsed, HHFamily):
        return parsed.arrangement.n_lines
    if isinstance(parsed, LineArrangement):
        return parsed.n_lines
    if isinstance(parsed, Arrangement):
        return len(parsed)
    assert isinstance(parsed, Matroid | PavingBlocks)
    return parsed.n


@pytest.fixture(scope="session")
def catalog_matroids() -> list[tuple[str, Matroid]]:
    """Every matroid-bearing catalog entry (seed 0) on at most seven elements."""
    matroids = []
    for entry in Catalog(seed=0):
        if entry.family == "building_set":
            continue
        parsed = entry.build()
        if _element_count(parsed) <= CATALOG_MAX_ELEMENTS:
            matroids.append((entry.name, as_matroid(parsed)))
    return matroids
