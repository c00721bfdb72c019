"""Named instance catalog.

Entries are stored as JSON descriptors and parsed on demand, so every catalog
instance goes through the same validators as user input.
"""

from __future__ import annotations

import random
from collections.abc import Iterator
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Any

import networkx as nx
from loguru import logger

from .bitsets import full_mask, mask_of, popcount
from .descriptors import Parsed, parse_descriptor, to_descriptor
from .nestohedra import building_set_closure
from .paving import fano_blocks, random_sparse_paving


@dataclass(frozen=True)
class CatalogEntry:
    """One named instance.

    Attributes:
        name: Unique name, ``family/label``.
        family: Descriptor family (uniform, graph, paving, hh, ...).
        descriptor: JSON descriptor of the instance.
    """

    name: str
    family: str
    descriptor: dict[str, Any]

    def build(self) -> Parsed:
        return parse_descriptor(self.descriptor)

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "family": self.family, "descriptor": self.descriptor}

    def get_tsv_headers(self) -> list[str]:
        return ["name", "family", "type"]

    def to_tsv_row(self) -> list[str]:
        return [self.name, self.family, str(self.descriptor["type"])]


def _atlas_edges(graph: nx.Graph) -> list[list[int]]:
    return [[u + 1, v + 1] for u, v in sorted(tuple(sorted(e)) for e in graph.edges)]


class Catalog:
    """Deterministic instance families; ``seed`` drives the random ones."""

    UNIFORM_MAX_N = 7
    GRAPH_MAX_VERTICES = 5
    ARRANGEMENT_MAX_VERTICES = 6
    HH_MAX_M = 8
    BUILDING_SET_EXHAUSTIVE_N = 4
    BUILDING_SET_RANDOM_N = 5
    BUILDING_SET_RANDOM_COUNT = 12
    SPARSE_PAVING_SEEDS = 4

    def __init__(self, seed: int = 0) -> None:
        self.seed = seed

    @cached_property
    def entries(self) -> list[CatalogEntry]:
        entries = [
            *self._uniform(),
            *self._graphs(),
            *self._paving(),
            *self._line_families(),
            *self._arrangements(),
            *self._building_sets(),
        ]
        logger.debug(f"Catalog built with seed {self.seed}: {len(entries)} entries")
        return entries

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def families(self) -> list[str]:
        return list(dict.fromkeys(e.family for e in self.entries))

    def by_family(self, family: str) -> list[CatalogEntry]:
        return [e for e in self.entries if e.family == family]

    def get(self, name: str) -> CatalogEntry:
        for entry in self.entries:
            if entry.name == name:
                return entry
        error_msg = f"No catalog entry named '{name}'"
        logger.error(error_msg)
        raise KeyError(error_msg)

    def _uniform(self) -> Iterator[CatalogEntry]:
        for n in range(1, self.UNIFORM_MAX_N + 1):
            for r in range(n + 1):
                yield CatalogEntry(
                    f"uniform/U{r},{n}", "uniform", {"type": "uniform", "r": r, "n": n}
                )

    def _atlas(self, max_vertices: int) -> Iterator[tuple[int, nx.Graph]]:
        for index, graph in enumerate(nx.graph_atlas_g()):
            if graph.number_of_nodes() > max_vertices:
                break
            if graph.number_of_edges() > 0:
                yield index, graph

    def _graphs(self) -> Iterator[CatalogEntry]:
        for index, graph in self._atlas(self.GRAPH_MAX_VERTICES):
            yield CatalogEntry(
                f"graph/atlas-{index}",
                "graph",
                {
                    "type": "graph",
                    "vertices": graph.number_of_nodes(),
                    "edges": _atlas_edges(graph),
                },
            )

    def _paving(self) -> Iterator[CatalogEntry]:
        yield CatalogEntry("paving/fano", "paving", fano_blocks().to_descriptor())
        yield CatalogEntry(
            "paving/four-points",
            "paving",
            {"type": "paving", "n": 4, "m": 2, "blocks": [[1, 2, 3], [1, 4], [2, 4], [3, 4]]},
        )
        for offset in range(self.SPARSE_PAVING_SEEDS):
            seed = self.seed + offset
            paving = random_sparse_paving(7, 2, seed)
            yield CatalogEntry(f"paving/sparse-7-2-s{seed}", "paving", paving.to_descriptor())

    def _line_families(self) -> Iterator[CatalogEntry]:
        params: list[tuple[str, dict[str, int]]] = [
            ("near_pencil", {"k": k}) for k in range(3, 7)
        ]
        pairs = ((2, 3), (2, 4), (3, 4), (3, 5))
        params += [("two_modular", {"a": a, "b": b}) for a, b in pairs]
        params += [("three_modular", {"m": m}) for m in range(4, self.HH_MAX_M + 1)]
        params += [("four_modular", {})]
        for kind, values in params:
            label = "-".join(str(v) for v in values.values())
            name = f"hh/{kind}-{label}" if label else f"hh/{kind}"
            yield CatalogEntry(name, "hh", {"type": "hh", "kind": kind, "params": values})

    def _arrangements(self) -> Iterator[CatalogEntry]:
        for k in range(1, 5):
            yield CatalogEntry(
                f"arrangement/pencil-{k}",
                "arrangement",
                {"type": "arrangement", "dim": 2, "normals": [["1", str(j)] for j in range(k)]},
            )
        for d in range(1, 4):
            normals = [[str(int(i == j)) for j in range(d)] for i in range(d)]
            yield CatalogEntry(
                f"arrangement/coordinate-{d}",
                "arrangement",
                {"type": "arrangement", "dim": d, "normals": normals},
            )
        for index, graph in self._atlas(self.ARRANGEMENT_MAX_VERTICES):
            yield CatalogEntry(
                f"graph_arrangement/atlas-{index}",
                "graph_arrangement",
                {
                    "type": "graph_arrangement",
                    "vertices": graph.number_of_nodes(),
                    "edges": _atlas_edges(graph),
                },
            )

    def _building_sets(self) -> Iterator[CatalogEntry]:
        seen: set[tuple[int, tuple[int, ...]]] = set()
        count = 0

        def emit(n: int, generators: list[int]) -> Iterator[CatalogEntry]:
            nonlocal count
            closure = building_set_closure(n, generators)
            key = (n, closure.members)
            if key in seen:
                return
            seen.add(key)
            count += 1
            yield CatalogEntry(
                f"building_set/n{n}-{count}", "building_set", to_descriptor(closure)
            )

        for n in range(1, self.BUILDING_SET_EXHAUSTIVE_N + 1):
            candidates = [m for m in range(1, full_mask(n) + 1) if popcount(m) >= 2]
            for size in range(len(candidates) + 1):
                for generators in combinations(candidates, size):
                    yield from emit(n, list(generators))

        rng = random.Random(self.seed)
        n = self.BUILDING_SET_RANDOM_N
        for _ in range(self.BUILDING_SET_RANDOM_COUNT):
            generators = [
                mask_of(rng.sample(range(n), rng.randint(2, n - 1)))
                for _ in range(rng.randint(1, 3))
            ]
            yield from emit(n, generators)
