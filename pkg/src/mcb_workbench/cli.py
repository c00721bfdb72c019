"""Command Line Interface for the MCB workbench.

Main entry point for the application. Every subcommand reads a JSON descriptor
(or builds a named family), runs one computation and hands a format-neutral
ResultSet to the Exporter, which prints it or writes it to --output.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from collections.abc import Awaitable, Callable
from pathlib import Path
from typing import TypeVar

from loguru import logger

from .arrangements import (
    Arrangement,
    check_pencil_invariant,
    default_pencil,
    extend_by_pencil,
    graphic_mcb_predicate,
    regions_count,
    supersolvable_decompose,
    supersolvable_mcb_recursive,
)
from .bitsets import from_one_based, popcount, to_one_based
from .catalog import Catalog
from .chow import (
    annihilator_quotient_dims,
    fy_basis_enumerate,
    hilbert_fy,
    hilbert_presentation_oracle,
)
from .claims import run_claims
from .cover import is_mcb, matroid_profile
from .descriptors import (
    DescriptorError,
    Parsed,
    RawFamily,
    as_matroid,
    load_descriptor,
    read_descriptor,
)
from .exporter import Exporter
from .lines import (
    HH_KINDS,
    HHFamily,
    LineArrangement,
    hh_family,
    line_arrangement_tvector,
    unexpected_degree_range,
)
from .matroid import Matroid
from .models import ResultSet
from .nestohedra import (
    BuildingSet,
    bs_components,
    bs_mcb,
    bs_profile,
    building_set_closure,
    nestmcb_predicate,
)
from .paving import (
    PavingBlocks,
    PavingFamilyParams,
    min_hyperplane_cover,
    pav_bound_part1,
    pav_bound_part2,
    random_sparse_paving,
)

T = TypeVar("T")
Handler = Callable[[argparse.Namespace], Awaitable[ResultSet]]


def setup_logging(level: str = "INFO") -> None:
    """Configure loguru logger with custom format and level.

    Removes default handler and adds stderr output with timestamp,
    level, and colored output for better readability. Standard output
    is reserved for results.
    """
    logger.remove()
    logger.add(
        sys.stderr,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
        "<level>{level: <8}</level> | <level>{message}</level>",
        level=level,
        colorize=True,
    )


def create_parser() -> argparse.ArgumentParser:
    """Create and configure argument parser with all commands and options.

    Returns:
        Configured ArgumentParser with mcb, bset, chow, arr, paving, claims
        and catalog subcommands.
    """
    parser: argparse.ArgumentParser = argparse.ArgumentParser(
        prog="mcb-workbench",
        description="Matroidal Cayley-Bacharach workbench - exact MCB computations",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Minimal failure and nontrivial degrees of a matroid
  %(prog)s mcb profile --input u23.json

  # Decide MCB(2) and print TSV
  %(prog)s mcb check --input k4.json --degree 2 --format tsv

  # Hilbert series of the Chow ring
  %(prog)s chow hilbert --input b3.json

  # A member of the three-modular line family
  %(prog)s arr hh --kind three_modular --m 5

  # Full claims report
  %(prog)s claims run --all --seed 0 --output report.json
        """,
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    verbosity.add_argument("--quiet", "-q", action="store_true", help="Warnings and errors only")

    subparsers = parser.add_subparsers(dest="command", help="Command to execute")
    subparsers.required = True

    def add_output_arguments(subparser: argparse.ArgumentParser) -> None:
        """Add --format and --output, shared by every action."""
        subparser.add_argument(
            "--format",
            "-f",
            default="json",
            choices=Exporter.get_supported_formats(),
            help="Output format (default: json)",
        )
        subparser.add_argument(
            "--output",
            "-o",
            type=Path,
            help=(
                "Output file path; a bare name gets the format extension "
                "(default: standard output)"
            ),
        )

    def add_action(
        group: argparse._SubParsersAction,
        name: str,
        help_text: str,
        with_input: bool = True,
    ) -> argparse.ArgumentParser:
        action = group.add_parser(name, help=help_text)
        if with_input:
            action.add_argument(
                "--input", "-i", type=Path, required=True, help="JSON descriptor file"
            )
        add_output_arguments(action)
        return action

    def add_group(name: str, help_text: str) -> argparse._SubParsersAction:
        command = subparsers.add_parser(name, help=help_text)
        actions = command.add_subparsers(dest="action", help="Action to execute")
        actions.required = True
        return actions

    # === mcb ===
    mcb = add_group("mcb", "MCB(a) for matroids")
    add_action(mcb, "check", "Decide MCB(a)").add_argument(
        "--degree", "-a", type=int, required=True, help="Degree a >= 1"
    )
    add_action(mcb, "profile", "Minimal failure and nontrivial degrees")

    # === bset ===
    bset = add_group("bset", "Building sets")
    add_action(bset, "closure", "Building set closure of a family")
    add_action(bset, "mcb", "Decide MCB(a) over B minus [n]").add_argument(
        "--degree", "-a", type=int, required=True, help="Degree a >= 1"
    )
    add_action(bset, "predicate", "Two maximal proper sub-members per maximal member")
    add_action(bset, "components", "Components of the maximal members, and n - c")
    add_action(bset, "profile", "Minimal failure and nontrivial degrees")

    # === chow ===
    chow = add_group("chow", "Chow rings of matroids")
    add_action(chow, "hilbert", "Hilbert series coefficients").add_argument(
        "--method",
        choices=["fy", "presentation"],
        default="fy",
        help="FY flag formula or graded presentation (default: fy)",
    )
    add_action(chow, "basis", "FY monomial basis in one degree").add_argument(
        "--degree", "-d", type=int, required=True, help="Degree"
    )
    add_action(chow, "annihilator", "Dimensions of A*(M) / Ann(x_F)").add_argument(
        "--flat", required=True, help="Hyperplane F as comma-separated 1-based elements"
    )

    # === arr ===
    arr = add_group("arr", "Hyperplane and line arrangements")
    add_action(arr, "matroid", "Intersection matroid as flats")
    add_action(arr, "tvector", "t-vector of a line arrangement")
    add_action(arr, "supersolvable", "Modular chain and exponents")
    add_action(arr, "regions", "Regions from chi(-1) and from Euler's formula")
    add_action(arr, "graphic", "Degree predicate on a graph and its failure degree")
    add_action(arr, "recursive", "MCB(a) split along the modular chain").add_argument(
        "--degree", "-a", type=int, required=True, help="Degree a >= 1"
    )
    pencil = add_action(arr, "pencil", "Extend by a pencil through a codimension-2 axis")
    pencil.add_argument("--u", help="First axis normal, comma-separated (default: automatic)")
    pencil.add_argument("--w", help="Second axis normal, comma-separated (default: automatic)")
    pencil.add_argument("--count", type=int, default=2, help="Hyperplanes to add (default: 2)")
    hh = add_action(arr, "hh", "Modular line families", with_input=False)
    hh.add_argument("--kind", required=True, choices=HH_KINDS, help="Family")
    for key in ("m", "a", "b", "k"):
        hh.add_argument(f"--{key}", type=int, help=f"Family parameter {key}")
    degrees = add_action(arr, "degrees", "Unexpected-curve degree range", with_input=False)
    degrees.add_argument("--lines", type=int, required=True, help="Number of lines n")
    degrees.add_argument("--m", type=int, required=True, help="Modular multiplicity m")

    # === paving ===
    paving = add_group("paving", "Paving matroids")
    add_action(paving, "validate", "Validate an m-partition")
    add_action(paving, "cover", "Smallest number of blocks covering [n]")
    bounds = add_action(paving, "bounds", "MCB bounds from large blocks")
    bounds.add_argument(
        "--designated",
        action="append",
        help="Designated block, comma-separated; repeat per block (default: largest blocks)",
    )
    bounds.add_argument("--ratio", type=int, help="Ratio bound C (default: max // min + 1)")
    random_action = add_action(paving, "random", "Seeded sparse paving matroid", with_input=False)
    random_action.add_argument("--n", type=int, required=True, help="Ground set size")
    random_action.add_argument("--m", type=int, required=True, help="Block parameter m")
    random_action.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")

    # === claims ===
    claims = add_group("claims", "Claims verification report")
    run = add_action(claims, "run", "Evaluate claims", with_input=False)
    selection = run.add_mutually_exclusive_group(required=True)
    selection.add_argument("--all", action="store_true", help="Evaluate every claim")
    selection.add_argument(
        "--id", action="append", dest="ids", help="Claim id such as C3, repeatable"
    )
    run.add_argument("--seed", type=int, default=0, help="Catalog seed (default: 0)")
    run.add_argument("--progress", action="store_true", help="Show a progress bar")

    # === catalog ===
    catalog = add_group("catalog", "Named instance catalog")
    listing = add_action(catalog, "list", "List catalog entries", with_input=False)
    listing.add_argument("--family", help="Only this family")
    listing.add_argument("--seed", type=int, default=0, help="Catalog seed (default: 0)")

    return parser


def _expect(parsed: Parsed, kind: type[T], label: str) -> T:
    if not isinstance(parsed, kind):
        error_msg = f"Expected a {label} descriptor, got {type(parsed).__name__}"
        logger.error(error_msg)
        raise DescriptorError(error_msg)
    return parsed


def _elements(text: str, n: int) -> int:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        error_msg = f"'{text}' is not a comma-separated list of integers"
        logger.error(error_msg)
        raise DescriptorError(error_msg) from e
    return from_one_based(values, n)


def _vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as e:
        error_msg = f"'{text}' is not a comma-separated integer vector"
        logger.error(error_msg)
        raise DescriptorError(error_msg) from e


def _matroid(args: argparse.Namespace) -> Matroid:
    return as_matroid(load_descriptor(args.input))


def _arrangement(args: argparse.Namespace) -> Arrangement:
    return _expect(load_descriptor(args.input), Arrangement, "arrangement")


def _building_set(args: argparse.Namespace) -> BuildingSet:
    return _expect(load_descriptor(args.input), BuildingSet, "building_set")


def _paving(args: argparse.Namespace) -> PavingBlocks:
    return _expect(load_descriptor(args.input), PavingBlocks, "paving")


# === mcb ===


async def mcb_check(args: argparse.Namespace) -> ResultSet:
    return ResultSet.from_record("mcb check", is_mcb(_matroid(args), args.degree))


async def mcb_profile(args: argparse.Namespace) -> ResultSet:
    matroid = _matroid(args)
    return ResultSet.from_record(
        "mcb profile", matroid_profile(matroid), {"n": matroid.n, "rank": matroid.rank}
    )


# === bset ===


async def bset_closure(args: argparse.Namespace) -> ResultSet:
    parsed = load_descriptor(args.input)
    if not isinstance(parsed, (RawFamily, BuildingSet)):
        error_msg = f"Expected a family descriptor, got {type(parsed).__name__}"
        logger.error(error_msg)
        raise DescriptorError(error_msg)
    closure = building_set_closure(parsed.n, parsed.members)
    return ResultSet(
        command="bset closure",
        payload=closure.to_descriptor(),
        headers=["member"],
        rows=[[",".join(map(str, to_one_based(m)))] for m in closure.members],
    )


async def bset_mcb(args: argparse.Namespace) -> ResultSet:
    return ResultSet.from_record("bset mcb", bs_mcb(_building_set(args), args.degree))


async def bset_predicate(args: argparse.Namespace) -> ResultSet:
    return ResultSet.from_record("bset predicate", nestmcb_predicate(_building_set(args)))


async def bset_components(args: argparse.Namespace) -> ResultSet:
    return ResultSet.from_record("bset components", bs_components(_building_set(args)))


async def bset_profile(args: argparse.Namespace) -> ResultSet:
    return ResultSet.from_record("bset profile", bs_profile(_building_set(args)))


# === chow ===


async def chow_hilbert(args: argparse.Namespace) -> ResultSet:
    matroid = _matroid(args)
    if args.method == "presentation":
        series = hilbert_presentation_oracle(matroid)
    else:
        series = hilbert_fy(matroid)
    return ResultSet(
        command="chow hilbert",
        payload={
            "method": args.method,
            "coefficients": series.to_list(),
            "polynomial": str(series),
            "palindromic": series.is_palindromic(),
        },
        headers=["degree", "dimension"],
        rows=[[str(d), str(c)] for d, c in enumerate(series.to_list())],
    )


async def chow_basis(args: argparse.Namespace) -> ResultSet:
    monomials = fy_basis_enumerate(_matroid(args), args.degree)
    return ResultSet(
        command="chow basis",
        payload={
            "degree": args.degree,
            "count": len(monomials),
            "monomials": [m.to_dict() for m in monomials],
        },
        headers=["monomial"],
        rows=[[str(m)] for m in monomials],
    )


async def chow_annihilator(args: argparse.Namespace) -> ResultSet:
    matroid = _matroid(args)
    flat = _elements(args.flat, matroid.n)
    return ResultSet.from_record("chow annihilator", annihilator_quotient_dims(matroid, flat))


# === arr ===


async def arr_matroid(args: argparse.Namespace) -> ResultSet:
    matroid = _matroid(args)
    return ResultSet(
        command="arr matroid",
        payload={**matroid.to_descriptor(), "rank": matroid.rank},
        headers=["rank", "flat"],
        rows=[
            [str(matroid.rank_of_flat(f)), ",".join(map(str, to_one_based(f)))]
            for f in matroid.flats
        ],
    )


async def arr_tvector(args: argparse.Namespace) -> ResultSet:
    parsed = load_descriptor(args.input)
    if isinstance(parsed, HHFamily):
        parsed = parsed.arrangement
    lines = _expect(parsed, LineArrangement, "lines")
    return ResultSet.from_record("arr tvector", line_arrangement_tvector(lines))


async def arr_supersolvable(args: argparse.Namespace) -> ResultSet:
    chain = supersolvable_decompose(_arrangement(args))
    if chain is None:
        return ResultSet(
            command="arr supersolvable",
            payload={"supersolvable": False},
            headers=["supersolvable", "e", "chain"],
            rows=[["false", "", ""]],
        )
    return ResultSet.from_record("arr supersolvable", chain)


async def arr_regions(args: argparse.Namespace) -> ResultSet:
    return ResultSet.from_record("arr regions", regions_count(_arrangement(args)))


async def arr_graphic(args: argparse.Namespace) -> ResultSet:
    data = read_descriptor(args.input)
    if data.get("type") not in ("graph", "graph_arrangement"):
        error_msg = f"Expected a graph descriptor, got type '{data.get('type')}'"
        logger.error(error_msg)
        raise DescriptorError(error_msg)
    check = graphic_mcb_predicate(int(data["vertices"]), data["edges"])
    return ResultSet.from_record("arr graphic", check)


async def arr_recursive(args: argparse.Namespace) -> ResultSet:
    check = supersolvable_mcb_recursive(_arrangement(args), args.degree)
    return ResultSet.from_record("arr recursive", check)


async def arr_pencil(args: argparse.Namespace) -> ResultSet:
    base = _arrangement(args)
    if (args.u is None) != (args.w is None):
        error_msg = "Give both --u and --w, or neither"
        logger.error(error_msg)
        raise DescriptorError(error_msg)
    if args.u is None:
        u, w = default_pencil(base)
    else:
        u, w = _vector(args.u), _vector(args.w)
    extended = extend_by_pencil(base, u, w, args.count)
    invariant = check_pencil_invariant(base, extended)
    chain = supersolvable_decompose(extended)
    payload = {
        "arrangement": extended.to_descriptor(),
        "axis": {"u": list(u), "w": list(w)},
        "invariant": invariant,
        "e": list(chain.e) if chain else None,
    }
    return ResultSet(
        command="arr pencil",
        payload=payload,
        headers=["hyperplane", "normal"],
        rows=[
            [str(i + 1), ",".join(map(str, normal))] for i, normal in enumerate(extended.normals)
        ],
    )


async def arr_hh(args: argparse.Namespace) -> ResultSet:
    params = {k: getattr(args, k) for k in ("m", "a", "b", "k") if getattr(args, k) is not None}
    family = hh_family(args.kind, **params)
    return ResultSet.from_record("arr hh", family)


async def arr_degrees(args: argparse.Namespace) -> ResultSet:
    return ResultSet.from_record("arr degrees", unexpected_degree_range(args.lines, args.m))


# === paving ===


async def paving_validate(args: argparse.Namespace) -> ResultSet:
    paving = _paving(args)
    sizes = sorted({popcount(b) for b in paving.blocks}, reverse=True)
    return ResultSet(
        command="paving validate",
        payload={
            "valid": True,
            "n": paving.n,
            "m": paving.m,
            "rank": paving.m + 1,
            "blocks": len(paving.blocks),
            "block_sizes": sizes,
        },
        headers=["valid", "n", "m", "blocks"],
        rows=[["true", str(paving.n), str(paving.m), str(len(paving.blocks))]],
    )


async def paving_cover(args: argparse.Namespace) -> ResultSet:
    paving = _paving(args)
    cover = min_hyperplane_cover(paving)
    profile = matroid_profile(paving.to_matroid())
    return ResultSet.from_record("paving cover", profile, {"min_hyperplane_cover": cover})


def _largest_cover(paving: PavingBlocks) -> list[int]:
    chosen: list[int] = []
    union = 0
    for block in paving.blocks:
        if union == paving.ground:
            break
        chosen.append(block)
        union |= block
    return chosen


async def paving_bounds(args: argparse.Namespace) -> ResultSet:
    paving = _paving(args)
    if args.designated:
        designated = [_elements(text, paving.n) for text in args.designated]
    else:
        designated = _largest_cover(paving)
    size_bound = pav_bound_part2(paving, designated)
    sizes = [popcount(b) for b in designated]
    ratio = args.ratio if args.ratio is not None else max(sizes) // min(sizes) + 1
    regime = pav_bound_part1(PavingFamilyParams.from_blocks(paving, designated, ratio))
    return ResultSet(
        command="paving bounds",
        payload={
            "designated": [to_one_based(b) for b in designated],
            "k": len(designated),
            "ratio_bound": ratio,
            "size_bound": size_bound,
            "regime": regime.to_dict(),
        },
        headers=["k", "ratio_bound", "size_bound", "regime_bound", "in_regime"],
        rows=[
            [
                str(len(designated)),
                str(ratio),
                str(size_bound),
                str(regime.bound),
                str(regime.in_regime).lower(),
            ]
        ],
    )


async def paving_random(args: argparse.Namespace) -> ResultSet:
    paving = random_sparse_paving(args.n, args.m, args.seed)
    return ResultSet(
        command="paving random",
        payload=paving.to_descriptor(),
        headers=["block"],
        rows=[[",".join(map(str, to_one_based(b)))] for b in paving.blocks],
    )


# === claims and catalog ===


async def claims_run(args: argparse.Namespace) -> ResultSet:
    selection = None if args.all else args.ids
    records = await run_claims(selection, seed=args.seed, progress=args.progress)
    return ResultSet.from_claims(records, args.seed)


async def catalog_list(args: argparse.Namespace) -> ResultSet:
    catalog = Catalog(seed=args.seed)
    entries = catalog.by_family(args.family) if args.family else catalog.entries
    return ResultSet(
        command="catalog list",
        payload={"seed": args.seed, "entries": [e.to_dict() for e in entries]},
        headers=["name", "family", "type"],
        rows=[e.to_tsv_row() for e in entries],
    )


HANDLERS: dict[tuple[str, str], Handler] = {
    ("mcb", "check"): mcb_check,
    ("mcb", "profile"): mcb_profile,
    ("bset", "closure"): bset_closure,
    ("bset", "mcb"): bset_mcb,
    ("bset", "predicate"): bset_predicate,
    ("bset", "components"): bset_components,
    ("bset", "profile"): bset_profile,
    ("chow", "hilbert"): chow_hilbert,
    ("chow", "basis"): chow_basis,
    ("chow", "annihilator"): chow_annihilator,
    ("arr", "matroid"): arr_matroid,
    ("arr", "tvector"): arr_tvector,
    ("arr", "supersolvable"): arr_supersolvable,
    ("arr", "regions"): arr_regions,
    ("arr", "graphic"): arr_graphic,
    ("arr", "recursive"): arr_recursive,
    ("arr", "pencil"): arr_pencil,
    ("arr", "hh"): arr_hh,
    ("arr", "degrees"): arr_degrees,
    ("paving", "validate"): paving_validate,
    ("paving", "cover"): paving_cover,
    ("paving", "bounds"): paving_bounds,
    ("paving", "random"): paving_random,
    ("claims", "run"): claims_run,
    ("catalog", "list"): catalog_list,
}


async def execute(args: argparse.Namespace) -> int:
    """Run one command and emit its result.

    Args:
        args: Parsed command line arguments.

    Returns:
        Exit code: 0 for success, 1 for validation or I/O errors, 130 on interrupt.
    """
    handler = HANDLERS.get((args.command, args.action))
    if handler is None:
        logger.error(f"Unknown command: {args.command} {args.action}")
        return 1

    logger.debug("=" * 80)
    logger.debug(f"COMMAND: {args.command} {args.action}")
    logger.debug("=" * 80)

    try:
        result = await handler(args)
        exporter = Exporter(export_format=args.format)
        if args.output is None:
            sys.stdout.write(exporter.render(result))
            sys.stdout.flush()
        else:
            await exporter.export(result, args.output)
        return 0

    except KeyboardInterrupt:
        logger.warning("Operation cancelled by user")
        return 130
    except ValueError as e:
        logger.error(f"❌ Validation failed: {str(e)}")
        return 1
    except OSError as e:
        logger.error(f"❌ I/O error: {str(e)}")
        return 1
    except Exception as e:
        logger.error(f"❌ Operation failed: {type(e).__name__}: {str(e)}")
        return 1


async def async_main(argv: list[str] | None = None) -> int:
    """Async main function that dispatches to the command handler.

    Returns:
        Exit code from command handler.
    """
    parser: argparse.ArgumentParser = create_parser()
    args: argparse.Namespace = parser.parse_args(argv)

    if args.verbose:
        setup_logging("DEBUG")
    elif args.quiet:
        setup_logging("WARNING")
    else:
        setup_logging()

    return await execute(args)


def main(argv: list[str] | None = None) -> None:
    """Main entry point for CLI application.

    Handles async execution, keyboard interrupts, and exit codes.
    Usage errors exit with code 2 from argparse.

    Raises:
        SystemExit: Always exits with appropriate code.
    """
    try:
        exit_code: int = asyncio.run(async_main(argv))
        sys.exit(exit_code)
    except KeyboardInterrupt:
        logger.warning("\nOperation cancelled by user")
        sys.exit(130)
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        sys.exit(1)


if __name__ == "__main__":
    main()
