"""Data models for MCB decisions, profiles, claim records and exportable results.

Every model follows the same serialization contract so that the export
strategies can stay format-agnostic: ``to_dict()`` for JSON,
``get_tsv_headers()`` plus ``to_tsv_row()`` for TSV.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Protocol

from loguru import logger

from .bitsets import to_one_based


def format_degree(value: int | None) -> str:
    """Render a degree where None stands for infinity."""
    return "inf" if value is None else str(value)


class Exportable(Protocol):
    def to_dict(self) -> dict[str, Any]: ...

    def get_tsv_headers(self) -> list[str]: ...

    def to_tsv_row(self) -> list[str]: ...


@dataclass(frozen=True)
class McbWitness:
    """Failure witness: members whose union is exactly [n] minus one element.

    Attributes:
        missing: The omitted element p (0-based).
        cover: Bitsets of the covering members, lexicographic order.
    """

    missing: int
    cover: tuple[int, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"p": self.missing + 1, "cover": [to_one_based(m) for m in self.cover]}

    def __str__(self) -> str:
        members = " + ".join(str(to_one_based(m)) for m in self.cover)
        return f"p={self.missing + 1}: {members}"


@dataclass(frozen=True)
class McbReport:
    """Outcome of an MCB(a) query.

    Attributes:
        holds: True when no cover of size at most a omits exactly one element.
        degree_queried: The degree a.
        witness: Present exactly when ``holds`` is False.
    """

    holds: bool
    degree_queried: int
    witness: McbWitness | None = None

    def __post_init__(self) -> None:
        if not self.holds and self.witness is None:
            error_msg = f"Failing MCB({self.degree_queried}) report needs a witness"
            logger.error(error_msg)
            raise ValueError(error_msg)

    def to_dict(self) -> dict[str, Any]:
        return {
            "holds": self.holds,
            "degree": self.degree_queried,
            "witness": self.witness.to_dict() if self.witness else None,
        }

    def get_tsv_headers(self) -> list[str]:
        return ["degree", "holds", "witness_p", "witness_cover"]

    def to_tsv_row(self) -> list[str]:
        if self.witness is None:
            return [str(self.degree_queried), str(self.holds).lower(), "", ""]
        cover = ";".join(",".join(map(str, to_one_based(m))) for m in self.witness.cover)
        return [
            str(self.degree_queried),
            str(self.holds).lower(),
            str(self.witness.missing + 1),
            cover,
        ]


@dataclass(frozen=True)
class McbProfile:
    """Minimal failure and nontrivial degrees; None means infinity."""

    min_failure_degree: int | None
    min_nontrivial_degree: int | None
    failure_witness: McbWitness | None = None

    def holds_for(self, a: int) -> bool:
        """MCB(a) holds exactly below the minimal failure degree."""
        return self.min_failure_degree is None or a < self.min_failure_degree

    def to_dict(self) -> dict[str, Any]:
        return {
            "min_failure_degree": self.min_failure_degree,
            "min_nontrivial_degree": self.min_nontrivial_degree,
            "witness": self.failure_witness.to_dict() if self.failure_witness else None,
        }

    def get_tsv_headers(self) -> list[str]:
        return ["min_failure_degree", "min_nontrivial_degree"]

    def to_tsv_row(self) -> list[str]:
        return [format_degree(self.min_failure_degree), format_degree(self.min_nontrivial_degree)]


class ClaimStatus(str, Enum):
    VERIFIED = "VERIFIED"
    REFUTED = "REFUTED"
    PARTIAL = "PARTIAL"
    OUT_OF_SCOPE = "OUT_OF_SCOPE"


@dataclass
class ClaimObservation:
    """One (claim, instance) comparison.

    ``agrees`` is None for data-only rows that assert nothing.
    """

    instance: str
    quantity: str
    expected: str
    observed: str
    agrees: bool | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "instance": self.instance,
            "quantity": self.quantity,
            "expected": self.expected,
            "observed": self.observed,
            "agrees": self.agrees,
        }


@dataclass
class ClaimRecord:
    """Evaluation of one quantitative statement on its instance family.

    Attributes:
        id: Claim identifier C1..C12.
        title: Short name of the statement.
        anchor: Verbatim quote the statement is identified by.
        status: Outcome after exact comparison.
        instances_tested: Number of instances evaluated.
        witnesses: Re-runnable inputs for every refutation.
        observations: Per-instance comparison rows.
        notes: Interpretation remarks.
    """

    id: str
    title: str
    anchor: str
    status: ClaimStatus = ClaimStatus.PARTIAL
    instances_tested: int = 0
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    observations: list[ClaimObservation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def observe(
        self,
        instance: str,
        quantity: str,
        expected: object,
        observed: object,
        agrees: bool | None = None,
    ) -> ClaimObservation:
        row = ClaimObservation(instance, quantity, str(expected), str(observed), agrees)
        self.observations.append(row)
        return row

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "title": self.title,
            "anchor": self.anchor,
            "status": self.status.value,
            "instances": self.instances_tested,
            "witnesses": self.witnesses,
            "observations": [o.to_dict() for o in self.observations],
            "notes": self.notes,
        }

    def get_tsv_headers(self) -> list[str]:
        return ["id", "status", "instance", "quantity", "expected", "observed", "agrees"]

    def to_tsv_rows(self) -> list[list[str]]:
        if not self.observations:
            return [[self.id, self.status.value, "", "", "", "", ""]]
        return [
            [
                self.id,
                self.status.value,
                o.instance,
                o.quantity,
                o.expected,
                o.observed,
                "" if o.agrees is None else str(o.agrees).lower(),
            ]
            for o in self.observations
        ]


@dataclass
class ResultSet:
    """Format-neutral command result handed to the exporter.

    Attributes:
        command: Name of the producing command, for logging.
        payload: JSON document.
        headers: TSV header row.
        rows: TSV data rows.
    """

    command: str
    payload: dict[str, Any]
    headers: list[str]
    rows: list[list[str]] = field(default_factory=list)

    @classmethod
    def from_record(
        cls, command: str, record: Exportable, extra: dict[str, Any] | None = None
    ) -> ResultSet:
        payload = dict(extra or {})
        payload.update(record.to_dict())
        return cls(
            command=command,
            payload=payload,
            headers=record.get_tsv_headers(),
            rows=[record.to_tsv_row()],
        )

    @classmethod
    def from_claims(cls, records: list[ClaimRecord], seed: int) -> ResultSet:
        rows: list[list[str]] = []
        for record in records:
            rows.extend(record.to_tsv_rows())
        headers = ClaimRecord("", "", "").get_tsv_headers()
        return cls(
            command="claims",
            payload={"seed": seed, "claims": [r.to_dict() for r in records]},
            headers=headers,
            rows=rows,
        )
