"""Comprehensive tests for CLI module."""

from __future__ import annotations

import argparse
import json
import sys

import pytest
from loguru import logger

from mcb_workbench.cli import (
    HANDLERS,
    async_main,
    create_parser,
    execute,
    main,
    setup_logging,
)
from mcb_workbench.paving import block_partition_paving


@pytest.fixture(autouse=True)
def restore_logging():
    """async_main binds loguru to the captured stderr; rebind it afterwards."""
    yield
    logger.remove()
    logger.add(sys.stderr)


def stdout_json(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


class TestSetupLogging:
    """Test logging setup."""

    def test_setup_logging_configures_logger(self, mocker):
        """Test that setup_logging configures loguru."""
        mock_logger = mocker.patch("mcb_workbench.cli.logger")
        setup_logging()
        mock_logger.remove.assert_called_once()
        mock_logger.add.assert_called_once()

    def test_setup_logging_level(self, mocker):
        mock_logger = mocker.patch("mcb_workbench.cli.logger")
        setup_logging("DEBUG")
        assert mock_logger.add.call_args.kwargs["level"] == "DEBUG"


class TestCreateParser:
    """Test argument parser creation."""

    def test_create_parser_returns_parser(self):
        assert isinstance(create_parser(), argparse.ArgumentParser)

    def test_every_action_has_a_handler(self):
        parser = create_parser()
        commands = parser._subparsers._group_actions[0].choices
        pairs = {
            (command, action)
            for command, sub in commands.items()
            for action in sub._subparsers._group_actions[0].choices
        }
        assert pairs == set(HANDLERS)

    def test_mcb_check_arguments(self):
        args = create_parser().parse_args(
            ["mcb", "check", "-i", "m.json", "-a", "2", "-f", "tsv", "-o", "out.tsv"]
        )
        assert (args.command, args.action) == ("mcb", "check")
        assert args.degree == 2
        assert args.format == "tsv"
        assert str(args.output) == "out.tsv"

    def test_defaults(self):
        args = create_parser().parse_args(["chow", "hilbert", "--input", "m.json"])
        assert args.method == "fy"
        assert args.format == "json"
        assert args.output is None

    def test_claims_selection(self):
        args = create_parser().parse_args(["claims", "run", "--id", "C1", "--id", "C3"])
        assert args.ids == ["C1", "C3"]
        assert not args.all
        assert args.seed == 0

    def test_claims_requires_selection(self):
        with pytest.raises(SystemExit) as exc_info:
            create_parser().parse_args(["claims", "run"])
        assert exc_info.value.code == 2

    def test_input_is_required(self):
        with pytest.raises(SystemExit):
            create_parser().parse_args(["mcb", "profile"])

    def test_unknown_format(self):
        with pytest.raises(SystemExit):
            create_parser().parse_args(["mcb", "profile", "-i", "m.json", "-f", "csv"])

    def test_verbose_and_quiet_exclusive(self):
        with pytest.raises(SystemExit):
            create_parser().parse_args(["-v", "-q", "catalog", "list"])


class TestMcbCommands:
    """Test the mcb and bset commands end to end."""

    @pytest.mark.asyncio
    async def test_mcb_check_json(self, write_descriptor, capsys):
        path = write_descriptor({"type": "uniform", "r": 2, "n": 3})
        exit_code = await async_main(["mcb", "check", "-i", str(path), "-a", "2"])
        assert exit_code == 0
        assert stdout_json(capsys) == {
            "holds": False,
            "degree": 2,
            "witness": {"p": 3, "cover": [[1], [2]]},
        }

    @pytest.mark.asyncio
    async def test_mcb_check_tsv(self, write_descriptor, capsys):
        path = write_descriptor({"type": "uniform", "r": 2, "n": 3})
        exit_code = await async_main(["mcb", "check", "-i", str(path), "-a", "1", "-f", "tsv"])
        assert exit_code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines == ["degree\tholds\twitness_p\twitness_cover", "1\ttrue\t\t"]

    @pytest.mark.asyncio
    async def test_mcb_profile_to_file(self, write_descriptor, tmp_path, capsys):
        path = write_descriptor({"type": "graph", "vertices": 4, "edges": [[1, 2], [2, 3]]})
        output = tmp_path / "out" / "profile.json"
        exit_code = await async_main(["mcb", "profile", "-i", str(path), "-o", str(output)])
        assert exit_code == 0
        assert capsys.readouterr().out == ""
        data = json.loads(output.read_text(encoding="utf-8"))
        assert data["n"] == 2
        assert data["min_failure_degree"] == 1

    @pytest.mark.asyncio
    async def test_bset_closure(self, write_descriptor, capsys):
        path = write_descriptor({"type": "family", "n": 3, "members": [[1, 2], [2, 3]]})
        exit_code = await async_main(["bset", "closure", "-i", str(path)])
        assert exit_code == 0
        data = stdout_json(capsys)
        assert data["type"] == "building_set"
        assert [1, 2, 3] in data["members"]

    @pytest.mark.asyncio
    async def test_bset_components(self, write_descriptor, capsys):
        path = write_descriptor(
            {"type": "building_set", "n": 3, "members": [[1], [2], [3], [1, 2, 3]]}
        )
        exit_code = await async_main(["bset", "components", "-i", str(path)])
        assert exit_code == 0
        assert stdout_json(capsys)["components"] == 3


class TestChowCommands:
    """Test the chow commands end to end."""

    @pytest.mark.asyncio
    @pytest.mark.parametrize("method", ["fy", "presentation"])
    async def test_hilbert(self, write_descriptor, capsys, method):
        path = write_descriptor({"type": "uniform", "r": 3, "n": 3})
        exit_code = await async_main(["chow", "hilbert", "-i", str(path), "--method", method])
        assert exit_code == 0
        data = stdout_json(capsys)
        assert data["coefficients"] == [1, 4, 1]
        assert data["palindromic"] is True

    @pytest.mark.asyncio
    async def test_annihilator(self, write_descriptor, capsys):
        path = write_descriptor({"type": "uniform", "r": 3, "n": 3})
        exit_code = await async_main(
            ["chow", "annihilator", "-i", str(path), "--flat", "1,2", "-f", "tsv"]
        )
        assert exit_code == 0
        assert capsys.readouterr().out.splitlines()[1] == "1,2\t1,1,0\t2"

    @pytest.mark.asyncio
    async def test_bad_flat(self, write_descriptor):
        path = write_descriptor({"type": "uniform", "r": 3, "n": 3})
        exit_code = await async_main(["chow", "annihilator", "-i", str(path), "--flat", "1,x"])
        assert exit_code == 1


class TestArrangementCommands:
    """Test the arr commands end to end."""

    @pytest.mark.asyncio
    async def test_hh(self, capsys):
        exit_code = await async_main(["arr", "hh", "--kind", "three_modular", "--m", "4"])
        assert exit_code == 0
        data = stdout_json(capsys)
        assert data["lines"] == 9
        assert data["tvector"] == {"t2": 6, "t3": 4, "t4": 3}

    @pytest.mark.asyncio
    async def test_hh_missing_parameter(self):
        assert await async_main(["arr", "hh", "--kind", "two_modular", "--a", "2"]) == 1

    @pytest.mark.asyncio
    async def test_degrees(self, capsys):
        exit_code = await async_main(["arr", "degrees", "--lines", "12", "--m", "5"])
        assert exit_code == 0
        data = stdout_json(capsys)
        assert (data["low"], data["high"]) == (5, 6)

    @pytest.mark.asyncio
    async def test_not_supersolvable(self, write_descriptor, capsys):
        path = write_descriptor(
            {
                "type": "arrangement",
                "normals": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"], ["1", "1", "1"]],
            }
        )
        exit_code = await async_main(["arr", "supersolvable", "-i", str(path)])
        assert exit_code == 0
        assert stdout_json(capsys) == {"supersolvable": False}

    @pytest.mark.asyncio
    async def test_pencil(self, write_descriptor, capsys):
        path = write_descriptor({"type": "arrangement", "normals": [["1", "0"], ["0", "1"]]})
        exit_code = await async_main(["arr", "pencil", "-i", str(path)])
        assert exit_code == 0
        data = stdout_json(capsys)
        assert data["invariant"] == [True, True]
        assert data["e"] == [1, 1, 2]

    @pytest.mark.asyncio
    async def test_pencil_needs_both_axis_vectors(self, write_descriptor):
        path = write_descriptor({"type": "arrangement", "normals": [["1", "0"], ["0", "1"]]})
        assert await async_main(["arr", "pencil", "-i", str(path), "--u", "1,0,0"]) == 1

    @pytest.mark.asyncio
    async def test_graphic_rejects_other_types(self, write_descriptor):
        path = write_descriptor({"type": "uniform", "r": 2, "n": 3})
        assert await async_main(["arr", "graphic", "-i", str(path)]) == 1

    @pytest.mark.asyncio
    async def test_wrong_descriptor_type(self, write_descriptor):
        path = write_descriptor({"type": "uniform", "r": 2, "n": 3})
        assert await async_main(["arr", "regions", "-i", str(path)]) == 1


class TestPavingCommands:
    """Test the paving commands end to end."""

    @pytest.mark.asyncio
    async def test_bounds_with_default_designation(self, write_descriptor, capsys):
        paving, _ = block_partition_paving((3, 3), 2)
        path = write_descriptor(paving.to_descriptor())
        exit_code = await async_main(["paving", "bounds", "-i", str(path)])
        assert exit_code == 0
        data = stdout_json(capsys)
        assert data["designated"] == [[1, 2, 3], [4, 5, 6]]
        assert data["size_bound"] == 2
        assert data["ratio_bound"] == 2
        assert data["regime"]["bound"] == 1

    @pytest.mark.asyncio
    async def test_cover(self, write_descriptor, capsys):
        path = write_descriptor(
            {"type": "paving", "n": 4, "m": 2, "blocks": [[1, 2, 3], [1, 4], [2, 4], [3, 4]]}
        )
        exit_code = await async_main(["paving", "cover", "-i", str(path)])
        assert exit_code == 0
        data = stdout_json(capsys)
        assert data["min_hyperplane_cover"] == 2
        assert data["min_failure_degree"] == 1

    @pytest.mark.asyncio
    async def test_invalid_paving(self, write_descriptor):
        path = write_descriptor({"type": "paving", "n": 4, "m": 2, "blocks": [[1, 2, 3]]})
        assert await async_main(["paving", "validate", "-i", str(path)]) == 1

    @pytest.mark.asyncio
    async def test_random_is_seeded(self, capsys):
        argv = ["paving", "random", "--n", "7", "--m", "2", "--seed", "4"]
        assert await async_main(argv) == 0
        first = capsys.readouterr().out
        assert await async_main(argv) == 0
        assert capsys.readouterr().out == first


class TestCatalogCommands:
    """Test catalog listing and claims selection errors."""

    @pytest.mark.asyncio
    async def test_catalog_family(self, capsys):
        exit_code = await async_main(["catalog", "list", "--family", "paving", "-f", "tsv"])
        assert exit_code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "name\tfamily\ttype"
        assert "paving/fano\tpaving\tpaving" in lines

    @pytest.mark.asyncio
    async def test_unknown_claim_id(self):
        assert await async_main(["claims", "run", "--id", "C42"]) == 1


class TestExecute:
    """Test error handling around command handlers."""

    @pytest.mark.asyncio
    async def test_missing_input(self, tmp_path):
        exit_code = await async_main(["mcb", "profile", "-i", str(tmp_path / "none.json")])
        assert exit_code == 1

    @pytest.mark.asyncio
    async def test_unknown_command(self):
        args = argparse.Namespace(command="unknown", action="run")
        assert await execute(args) == 1

    @pytest.mark.asyncio
    async def test_keyboard_interrupt(self, mocker):
        handler = mocker.AsyncMock(side_effect=KeyboardInterrupt())
        mocker.patch.dict("mcb_workbench.cli.HANDLERS", {("catalog", "list"): handler})
        assert await async_main(["catalog", "list"]) == 130

    @pytest.mark.asyncio
    async def test_general_exception(self, mocker):
        handler = mocker.AsyncMock(side_effect=RuntimeError("boom"))
        mocker.patch.dict("mcb_workbench.cli.HANDLERS", {("catalog", "list"): handler})
        assert await async_main(["catalog", "list"]) == 1


class TestMain:
    """Test main entry point."""

    def test_main_success(self, mocker):
        """Test main with successful execution."""
        mocker.patch("mcb_workbench.cli.asyncio.run", return_value=0)
        with pytest.raises(SystemExit) as exc_info:
            main(["catalog", "list"])
        assert exc_info.value.code == 0

    def test_main_keyboard_interrupt(self, mocker):
        """Test main with keyboard interrupt."""
        mocker.patch("mcb_workbench.cli.asyncio.run", side_effect=KeyboardInterrupt())
        with pytest.raises(SystemExit) as exc_info:
            main(["catalog", "list"])
        assert exc_info.value.code == 130

    def test_main_exception(self, mocker):
        """Test main with unexpected exception."""
        mocker.patch("mcb_workbench.cli.asyncio.run", side_effect=Exception("Unexpected error"))
        with pytest.raises(SystemExit) as exc_info:
            main(["catalog", "list"])
        assert exc_info.value.code == 1

    def test_main_runs_a_command(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            main(["arr", "degrees", "--lines", "12", "--m", "5", "-f", "tsv"])
        assert exc_info.value.code == 0
        assert capsys.readouterr().out.startswith("low\t")
