"""
Command-line front end.

    faberhurwitz hurwitz --alpha 2,1
    faberhurwitz double-hurwitz --alpha 2,1 --beta 3
    faberhurwitz faber-hurwitz --genus 1 --alpha 2
    faberhurwitz faber-numbers --genus 2 --parts 3 --compare-conjecture
    faberhurwitz series --name zeta --genus 1
    faberhurwitz verify --suite all --max-genus 2

Results go to stdout as JSON with sorted keys (or CSV for symbol tables);
logging goes to stderr. Exit codes: 0 success, 1 failed verification or a
computation error, 2 usage error.

Truncation comes from the built-in defaults, then the JSON file named by
FABERHURWITZ_PROFILE, then --z-max, --t-max and --u-window=MIN,MAX.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

from faberhurwitz.core.errors import FaberHurwitzError, PartitionError, TruncationError
from faberhurwitz.core.partitions import Partition, r_fab
from faberhurwitz.core.rational import rational_to_json
from faberhurwitz.degeneration.joincut import faber_hurwitz
from faberhurwitz.degeneration.series import fh_series
from faberhurwitz.faber.generating import build_phi, build_psi
from faberhurwitz.faber.solve import conjecture_comparison, solve_symbols, solve_tables
from faberhurwitz.faber.suites import SUITES, check_suites
from faberhurwitz.hurwitz.closed import HurwitzQuery
from faberhurwitz.hurwitz.series import hurwitz_number, hurwitz_series_double, hurwitz_series_single
from faberhurwitz.localization.treeseries import zeta_series
from faberhurwitz.series.profile import TruncProfile, load_profile
from faberhurwitz.series.ratfunc import RationalFunctionSeries

logger = logging.getLogger("faberhurwitz.cli")

SERIES_NAMES = ("hurwitz", "double-hurwitz", "faber-hurwitz", "zeta", "phi", "psi")


# -- argument types ---------------------------------------------------------

def partition_arg(text: str) -> Partition:
    try:
        alpha = Partition.parse(text)
    except PartitionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if alpha.is_empty():
        raise argparse.ArgumentTypeError("a partition needs at least one part")
    return alpha


def window_arg(text: str) -> Tuple[int, int]:
    try:
        low, high = (int(piece) for piece in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN,MAX, got {text!r}") from None
    return low, high


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="faberhurwitz",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--z-max", type=int, help="maximum z-degree of generating series")
    parser.add_argument("--t-max", type=int, help="maximum t-order")
    parser.add_argument("--u-window", type=window_arg, help="u-window as MIN,MAX (write --u-window=-12,12)")
    commands = parser.add_subparsers(dest="command", required=True)

    hurwitz = commands.add_parser("hurwitz", help="single Hurwitz number H^g_α")
    hurwitz.add_argument("--alpha", type=partition_arg, required=True)
    hurwitz.add_argument("--genus", type=int, default=0)
    hurwitz.add_argument("--oracle", action="store_true", help="count monodromy instead of closed formulas")

    double = commands.add_parser("double-hurwitz", help="double Hurwitz number H^g_{α,β}")
    double.add_argument("--alpha", type=partition_arg, required=True)
    double.add_argument("--beta", type=partition_arg, required=True)
    double.add_argument("--genus", type=int, default=0)
    double.add_argument("--oracle", action="store_true", help="count monodromy instead of closed formulas")

    fh = commands.add_parser("faber-hurwitz", help="Faber–Hurwitz number F^g_α")
    fh.add_argument("--genus", type=int, required=True)
    fh.add_argument("--alpha", type=partition_arg, required=True)

    numbers = commands.add_parser("faber-numbers", help="solve the Faber symbols of one genus")
    numbers.add_argument("--genus", type=int, required=True)
    numbers.add_argument("--parts", type=int, default=3, help="maximum number of points (1..3)")
    numbers.add_argument("--compare-conjecture", action="store_true", help="compare top symbols with the conjecture")
    numbers.add_argument("--format", choices=("json", "csv"), default="json")

    series = commands.add_parser("series", help="dump a generating series")
    series.add_argument("--name", choices=SERIES_NAMES, required=True)
    series.add_argument("--genus", type=int, default=1, help="genus (or highest genus for phi/psi)")
    series.add_argument("--parts", type=int, default=1, help="m for phi/psi, n_max for zeta")

    verify = commands.add_parser("verify", help="run verification suites")
    verify.add_argument(
        "--suite",
        action="append",
        choices=("all",) + tuple(SUITES),
        help="suite to run (repeatable, default all)",
    )
    verify.add_argument("--max-genus", type=int, default=2)
    return parser


# -- commands ---------------------------------------------------------------

def _profile(args: argparse.Namespace, parser: argparse.ArgumentParser) -> TruncProfile:
    overrides: Dict[str, Any] = {"z_max": args.z_max, "t_max": args.t_max}
    if args.u_window is not None:
        overrides["u_min"], overrides["u_max"] = args.u_window
    try:
        return load_profile(overrides)
    except TruncationError as exc:
        parser.error(str(exc))


def _series_json(series: RationalFunctionSeries) -> Dict:
    return {
        "variable": series.variable,
        "order": series.order,
        "coefficients": {str(k): str(c) for k, c in series.items()},
    }


def _hurwitz(args) -> Tuple[Any, int]:
    query = HurwitzQuery(args.genus, args.alpha)
    value = hurwitz_number(query, oracle=args.oracle)
    return {"alpha": args.alpha.to_list(), "genus": args.genus, "H": rational_to_json(value)}, 0


def _double_hurwitz(args) -> Tuple[Any, int]:
    query = HurwitzQuery(args.genus, args.alpha, args.beta)
    value = hurwitz_number(query, oracle=args.oracle)
    return {
        "alpha": args.alpha.to_list(),
        "beta": args.beta.to_list(),
        "genus": args.genus,
        "H": rational_to_json(value),
    }, 0


def _faber_hurwitz(args) -> Tuple[Any, int]:
    value = faber_hurwitz(args.genus, args.alpha)
    return {"F": rational_to_json(value), "rFab": r_fab(args.genus, args.alpha)}, 0


def _faber_numbers(args, stream: TextIO) -> Tuple[Any, int]:
    table = solve_symbols(args.genus, args.parts, args.profile)
    if args.compare_conjecture:
        rows = conjecture_comparison(table, args.genus, args.parts)
        return rows, 0 if all(row["match"] for row in rows) else 1
    if args.format == "csv":
        table.write_csv(stream)
        return None, 0
    return table.to_json(), 0


def _series(args) -> Tuple[Any, int]:
    profile = args.profile
    if args.name == "hurwitz":
        return hurwitz_series_single(profile).to_json(), 0
    if args.name == "double-hurwitz":
        return hurwitz_series_double(profile).to_json(), 0
    if args.name == "faber-hurwitz":
        return fh_series(args.genus, profile).to_json(), 0
    if args.name == "zeta":
        return zeta_series(args.genus, profile, args.parts).to_json(), 0
    if args.name == "phi":
        return _series_json(build_phi(args.parts, args.genus, profile)), 0
    table = solve_tables(args.genus, args.parts, profile)
    return _series_json(build_psi(args.parts, args.genus, table)), 0


def _verify(args) -> Tuple[Any, int]:
    report = check_suites(args.suite or ["all"], args.profile, args.max_genus)
    return report.to_json(), 0 if report.passed else 1


def _configure_logging(verbosity: int):
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def run(argv: Sequence[str], stream: Optional[TextIO] = None) -> int:
    """
    Parse argv, run one subcommand and write its result to stream.

    Returns:
        0 on success, 1 on a failed check or a computation error; usage
        errors exit with argparse's code 2
    """
    stream = sys.stdout if stream is None else stream
    parser = build_parser()
    args = parser.parse_args(list(argv))
    args.profile = _profile(args, parser)
    _configure_logging(args.verbose)
    try:
        if args.command == "hurwitz":
            data, code = _hurwitz(args)
        elif args.command == "double-hurwitz":
            data, code = _double_hurwitz(args)
        elif args.command == "faber-hurwitz":
            data, code = _faber_hurwitz(args)
        elif args.command == "faber-numbers":
            data, code = _faber_numbers(args, stream)
        elif args.command == "series":
            data, code = _series(args)
        else:
            data, code = _verify(args)
    except FaberHurwitzError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return 1
    except ValueError as exc:
        parser.error(str(exc))
    if data is not None:
        stream.write(json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n")
    return code


def main(argv: Optional[List[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
