"""JSON descriptors for every input the workbench accepts.

Element indices are 1-based in descriptors and 0-based internally; rational
coordinates are written as strings such as "-3/2".
"""

from __future__ import annotations

import json
from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from loguru import logger

from .arrangements import Arrangement, graphic_arrangement, intersection_matroid
from .bitsets import from_one_based, to_one_based
from .lines import HHFamily, LineArrangement, hh_family
from .matroid import Matroid, matroid_from_flats, matroid_from_graph, uniform_matroid
from .nestohedra import BuildingSet
from .paving import PavingBlocks


class DescriptorError(ValueError):
    """Base exception for descriptor errors."""

    pass


class UnknownType(DescriptorError):
    pass


class MissingField(DescriptorError):
    pass


def _fail(error: type[DescriptorError], message: str) -> DescriptorError:
    logger.error(message)
    return error(message)


@dataclass(frozen=True)
class RawFamily:
    """A set family that has not been validated as anything yet."""

    n: int
    members: tuple[int, ...]


Parsed = (
    Matroid | BuildingSet | Arrangement | LineArrangement | PavingBlocks | HHFamily | RawFamily
)


def _field(data: dict[str, Any], name: str) -> Any:
    if name not in data:
        raise _fail(MissingField, f"Descriptor of type '{data.get('type')}' needs '{name}'")
    return data[name]


def _masks(lists: list[list[int]], n: int) -> list[int]:
    return [from_one_based(members, n) for members in lists]


def _rational(value: Any) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError) as e:
        raise _fail(DescriptorError, f"'{value}' is not a rational number") from e


def _parse_flats(data: dict[str, Any]) -> Matroid:
    n = int(_field(data, "n"))
    return matroid_from_flats(n, _masks(_field(data, "flats"), n))


def _parse_graph(data: dict[str, Any]) -> Matroid:
    return matroid_from_graph(int(_field(data, "vertices")), _field(data, "edges"))


def _parse_uniform(data: dict[str, Any]) -> Matroid:
    return uniform_matroid(int(_field(data, "r")), int(_field(data, "n")))


def _parse_building_set(data: dict[str, Any]) -> BuildingSet:
    n = int(_field(data, "n"))
    return BuildingSet.validated(n, _masks(_field(data, "members"), n))


def _parse_family(data: dict[str, Any]) -> RawFamily:
    n = int(_field(data, "n"))
    return RawFamily(n=n, members=tuple(_masks(_field(data, "members"), n)))


def _parse_arrangement(data: dict[str, Any]) -> Arrangement:
    normals = [[_rational(x) for x in row] for row in _field(data, "normals")]
    arrangement = Arrangement.from_normals(normals)
    dim = data.get("dim")
    if dim is not None and int(dim) != arrangement.dim:
        raise _fail(DescriptorError, f"'dim' is {dim} but normals have {arrangement.dim} entries")
    return arrangement


def _parse_graph_arrangement(data: dict[str, Any]) -> Arrangement:
    return graphic_arrangement(int(_field(data, "vertices")), _field(data, "edges"))


def _parse_lines(data: dict[str, Any]) -> LineArrangement:
    if "triples" in data:
        return LineArrangement.from_triples(
            [[_rational(x) for x in triple] for triple in data["triples"]]
        )
    n_lines = int(_field(data, "n_lines"))
    return LineArrangement.from_incidences(n_lines, _masks(_field(data, "points"), n_lines))


def _parse_paving(data: dict[str, Any]) -> PavingBlocks:
    n = int(_field(data, "n"))
    return PavingBlocks.validated(n, int(_field(data, "m")), _masks(_field(data, "blocks"), n))


def _parse_hh(data: dict[str, Any]) -> HHFamily:
    params = {k: int(v) for k, v in data.get("params", {}).items()}
    return hh_family(str(_field(data, "kind")), **params)


PARSERS: dict[str, Callable[[dict[str, Any]], Parsed]] = {
    "flats": _parse_flats,
    "graph": _parse_graph,
    "uniform": _parse_uniform,
    "building_set": _parse_building_set,
    "family": _parse_family,
    "arrangement": _parse_arrangement,
    "graph_arrangement": _parse_graph_arrangement,
    "lines": _parse_lines,
    "paving": _parse_paving,
    "hh": _parse_hh,
}


def get_supported_types() -> list[str]:
    return list(PARSERS)


def parse_descriptor(data: dict[str, Any]) -> Parsed:
    """Validate a descriptor dict and build the object it describes.

    Raises:
        UnknownType: The 'type' field names no known descriptor.
        MissingField: A required field is absent.
        ValueError: The described object fails its own validation.
    """
    if not isinstance(data, dict):
        raise _fail(DescriptorError, "A descriptor must be a JSON object")
    kind = data.get("type")
    parser = PARSERS.get(str(kind))
    if parser is None:
        raise _fail(
            UnknownType,
            f"Unknown descriptor type '{kind}'. Supported: {', '.join(get_supported_types())}",
        )
    parsed = parser(data)
    logger.debug(f"Parsed '{kind}' descriptor: {parsed}")
    return parsed


def read_descriptor(path: Path) -> dict[str, Any]:
    """Read a descriptor file without building anything.

    Raises:
        OSError: The file cannot be read.
        DescriptorError: The file is not a JSON object.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        error_msg = f"Failed to read descriptor {path}: {type(e).__name__}: {e}"
        logger.error(error_msg)
        raise OSError(error_msg) from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise _fail(DescriptorError, f"{path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise _fail(DescriptorError, f"{path} does not hold a JSON object")
    return data


def load_descriptor(path: Path) -> Parsed:
    return parse_descriptor(read_descriptor(path))


def as_matroid(parsed: Parsed) -> Matroid:
    """The matroid carried by any matroid-bearing descriptor.

    Raises:
        DescriptorError: The descriptor describes no matroid.
    """
    if isinstance(parsed, Matroid):
        return parsed
    if isinstance(parsed, Arrangement):
        return intersection_matroid(parsed)
    if isinstance(parsed, LineArrangement):
        return parsed.matroid()
    if isinstance(parsed, HHFamily):
        return parsed.matroid()
    if isinstance(parsed, PavingBlocks):
        return parsed.to_matroid()
    raise _fail(DescriptorError, f"A {type(parsed).__name__} descriptor carries no matroid")


def to_descriptor(obj: Parsed) -> dict[str, Any]:
    if isinstance(obj, RawFamily):
        return {"type": "family", "n": obj.n, "members": [to_one_based(m) for m in obj.members]}
    if isinstance(obj, HHFamily):
        return {"type": "hh", "kind": obj.kind, "params": dict(obj.params)}
    return obj.to_descriptor()
