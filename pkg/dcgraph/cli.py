"""Command line entry point for dcg."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence

from dcgraph import __version__
from dcgraph.commands import COMMAND_HELP, HANDLERS, CommandOutput
from dcgraph.config import LOG_LEVELS, load_settings, resolve_config_path
from dcgraph.errors import BudgetExhaustedError, DcgError, InconsistencyError
from dcgraph.selector import STRATEGIES

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s [%(levelname)s]%(message)s"

EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON settings file (default: $DCGRAPH_CONFIG)")
    parser.add_argument("--log-level", choices=LOG_LEVELS, help="diagnostic log level")


def _add_out(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="write the document to this file instead of the standard output")


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per command."""
    parser = argparse.ArgumentParser(prog="dcg", description="Distinction-colored complete graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=COMMAND_HELP[name]["description"], description=COMMAND_HELP[name]["description"])
        _add_common(sub)
        return sub

    sub = add("help")
    sub.add_argument("topic", nargs="?", help="command to explain")

    sub = add("validate")
    sub.add_argument("graph", help="dcg-v1 file, - for stdin")
    sub.add_argument("--json", action="store_true", help="print the report as JSON")

    for name in ("amalgamate", "jep"):
        sub = add(name)
        sub.add_argument("first", help="first dcg-v1 file")
        sub.add_argument("second", help="second dcg-v1 file")
        if name == "amalgamate":
            sub.add_argument("--base", required=True, help="shared vertices, comma separated")
        _add_out(sub)

    sub = add("realize")
    sub.add_argument("graph", help="dcg-v1 file, - for stdin")
    _add_out(sub)

    sub = add("derive")
    sub.add_argument("cert", help="cert-v1 file, - for stdin")
    _add_out(sub)

    sub = add("extend")
    sub.add_argument("graph", help="dcg-v1 file, - for stdin")
    sub.add_argument("--base", required=True, help="base vertices, comma separated")
    sub.add_argument("--colors", required=True, help="colors towards the base, e.g. a=3,b=5/2")
    sub.add_argument("--new", required=True, help="name of the new vertex")
    sub.add_argument("--trace", action="store_true", help="dump the selector on stderr")
    sub.add_argument("--strategy", choices=sorted(STRATEGIES), help="selector strategy")
    sub.add_argument("--json", action="store_true", help="dump the trace as JSON")
    _add_out(sub)

    sub = add("build-generic")
    sub.add_argument("--palette", required=True, help="colors, comma separated")
    sub.add_argument("--k", type=int, required=True, help="largest base size")
    sub.add_argument("--max-rounds", type=int, help="repair round budget")
    sub.add_argument("--seed", type=int, help="vertex naming seed")
    sub.add_argument("--strategy", choices=sorted(STRATEGIES), help="selector strategy")
    _add_out(sub)

    sub = add("check-generic")
    sub.add_argument("graph", help="dcg-v1 file, - for stdin")
    sub.add_argument("--k", type=int, required=True, help="largest base size")
    sub.add_argument("--palette", required=True, help="colors, comma separated")
    sub.add_argument("--fixed-palette", action="store_true", help="only draw type colors from the palette itself")
    sub.add_argument("--json", action="store_true", help="print the report as JSON")

    sub = add("enumerate")
    sub.add_argument("--n", type=int, required=True, help="vertex count")
    sub.add_argument("--m", type=int, required=True, help="number of colors")
    sub.add_argument("--list", action="store_true", help="print every graph")
    sub.add_argument("--workers", type=int, help="processes to scan with")
    sub.add_argument("--json", action="store_true", help="print the result as JSON")
    return parser


def _configure_logging(level: str) -> None:
    logging.basicConfig(stream=sys.stderr, format=LOG_FORMAT)
    logging.getLogger("dcgraph").setLevel(level)


def _emit(result: CommandOutput, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as f:
            f.write(result.text)
    else:
        sys.stdout.write(result.text)
    if result.diagnostics:
        sys.stderr.write(result.diagnostics)


def main(argv: Sequence[str] | None = None) -> int:
    """Run one dcg command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        settings = load_settings(resolve_config_path(args.config)).override(log_level=args.log_level)
        _configure_logging(settings.log_level)
        logger.debug("Running %s with %s", args.command, settings)
        result = HANDLERS[args.command](args, settings)
        _emit(result, getattr(args, "out", None))
        return result.exit_code
    except (InconsistencyError, BudgetExhaustedError) as e:
        sys.stderr.write(f"dcg: internal error: {e}\n")
        return EXIT_INTERNAL
    except (DcgError, OSError) as e:
        sys.stderr.write(f"dcg: error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
