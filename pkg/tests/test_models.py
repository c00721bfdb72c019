"""Tests for MCB data models and their serialization contract."""

from __future__ import annotations

import pytest

from mcb_workbench.models import (
    ClaimRecord,
    ClaimStatus,
    McbProfile,
    McbReport,
    McbWitness,
    ResultSet,
    format_degree,
)


class TestFormatDegree:
    """Test degree rendering with infinity."""

    def test_finite(self):
        assert format_degree(3) == "3"

    def test_infinite(self):
        """None stands for infinity in every TSV column."""
        assert format_degree(None) == "inf"


class TestMcbWitness:
    """Test failure witnesses."""

    def test_to_dict_is_one_based(self):
        witness = McbWitness(missing=2, cover=(0b001, 0b010))
        assert witness.to_dict() == {"p": 3, "cover": [[1], [2]]}

    def test_str(self):
        witness = McbWitness(missing=0, cover=(0b110,))
        assert str(witness) == "p=1: [2, 3]"


class TestMcbReport:
    """Test MCB(a) reports."""

    def test_holding_report_has_no_witness(self):
        report = McbReport(holds=True, degree_queried=1)
        assert report.to_dict() == {"holds": True, "degree": 1, "witness": None}
        assert report.to_tsv_row() == ["1", "true", "", ""]

    def test_failing_report_requires_witness(self):
        """A failing report without a witness is rejected."""
        with pytest.raises(ValueError) as exc_info:
            McbReport(holds=False, degree_queried=2)
        assert "needs a witness" in str(exc_info.value)

    def test_failing_report_tsv(self, failing_report):
        assert failing_report.get_tsv_headers() == [
            "degree",
            "holds",
            "witness_p",
            "witness_cover",
        ]
        assert failing_report.to_tsv_row() == ["2", "false", "3", "1;2"]

    def test_failing_report_dict(self, failing_report):
        data = failing_report.to_dict()
        assert data["holds"] is False
        assert data["witness"] == {"p": 3, "cover": [[1], [2]]}


class TestMcbProfile:
    """Test failure and nontrivial degree profiles."""

    def test_holds_below_failure_degree(self):
        profile = McbProfile(min_failure_degree=3, min_nontrivial_degree=2)
        assert profile.holds_for(1)
        assert profile.holds_for(2)
        assert not profile.holds_for(3)
        assert not profile.holds_for(7)

    def test_infinite_failure_holds_everywhere(self):
        profile = McbProfile(min_failure_degree=None, min_nontrivial_degree=None)
        assert profile.holds_for(100)
        assert profile.to_tsv_row() == ["inf", "inf"]
        assert profile.to_dict()["min_failure_degree"] is None


class TestClaimRecord:
    """Test claim records."""

    def test_defaults(self):
        record = ClaimRecord(id="C1", title="t", anchor="a")
        assert record.status is ClaimStatus.PARTIAL
        assert record.instances_tested == 0
        assert record.witnesses == []
        assert record.to_tsv_rows() == [["C1", "PARTIAL", "", "", "", "", ""]]

    def test_observe_stringifies(self):
        record = ClaimRecord(id="C2", title="t", anchor="a")
        row = record.observe("bs/1", "degree", 2, None, agrees=False)
        assert row.expected == "2"
        assert row.observed == "None"
        assert record.observations == [row]

    def test_to_dict(self, sample_claim_record):
        data = sample_claim_record.to_dict()
        assert data["id"] == "C9"
        assert data["status"] == "REFUTED"
        assert data["instances"] == 2
        assert len(data["observations"]) == 2
        assert data["notes"] == ["Counterexample at the triangle"]

    def test_tsv_one_row_per_observation(self, sample_claim_record):
        rows = sample_claim_record.to_tsv_rows()
        assert len(rows) == 2
        assert rows[0][-1] == "true"
        assert rows[1][-1] == "false"
        assert all(len(r) == len(sample_claim_record.get_tsv_headers()) for r in rows)

    def test_data_only_observation_has_empty_agreement(self):
        record = ClaimRecord(id="C5", title="t", anchor="a")
        record.observe("m", "dims", "", "1,0")
        assert record.to_tsv_rows()[0][-1] == ""


class TestResultSet:
    """Test format-neutral result sets."""

    def test_from_record(self, failing_report):
        result = ResultSet.from_record("mcb check", failing_report, {"n": 3})
        assert result.command == "mcb check"
        assert result.payload["n"] == 3
        assert result.payload["holds"] is False
        assert result.headers == failing_report.get_tsv_headers()
        assert result.rows == [failing_report.to_tsv_row()]

    def test_from_record_extra_does_not_override_record(self, failing_report):
        result = ResultSet.from_record("mcb check", failing_report, {"holds": "shadowed"})
        assert result.payload["holds"] is False

    def test_from_claims(self, sample_claim_record):
        result = ResultSet.from_claims([sample_claim_record], seed=7)
        assert result.payload["seed"] == 7
        assert result.payload["claims"][0]["id"] == "C9"
        assert result.headers[0] == "id"
        assert len(result.rows) == 2

    def test_from_claims_empty(self):
        result = ResultSet.from_claims([], seed=0)
        assert result.rows == []
        assert result.headers == [
            "id",
            "status",
            "instance",
            "quantity",
            "expected",
            "observed",
            "agrees",
        ]
