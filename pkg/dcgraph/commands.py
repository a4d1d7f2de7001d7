"""Handlers for the dcg subcommands."""

from __future__ import annotations

import json
import logging
import sys
from collections.abc import Callable
from dataclasses import dataclass
from typing import TYPE_CHECKING

from dcgraph.amalgam import ExtensionType, amalgamate, jep
from dcgraph.core import ColoredGraph, require_valid, validate
from dcgraph.errors import FormatError, PreconditionError
from dcgraph.formats import (
    format_cert,
    format_color,
    format_color_map,
    format_dcg,
    format_trace,
    parse_cert,
    parse_color_map,
    parse_dcg,
    parse_palette,
    parse_vertex_list,
)
from dcgraph.generic import build_generic, check_property_II
from dcgraph.oracle import enumerate_valid
from dcgraph.realize import derive_coloring, realize
from dcgraph.reports import EnumerationResultSchema, GenericityReportSchema, SelectorTraceSchema, ValidationReportSchema
from dcgraph.selector import materialize, plan_extension, strategy_by_name

if TYPE_CHECKING:
    import argparse

    from dcgraph.config import Settings

logger = logging.getLogger(__name__)

COMMAND_HELP = {
    "help": {
        "usage": "dcg help [command]",
        "example": "dcg help extend",
        "description": "Show available commands or detailed help for one command.",
    },
    "validate": {
        "usage": "dcg validate <g.dcg> [--json]",
        "example": "dcg validate triangle.dcg",
        "description": "Check the triangle law; exit 1 and list the violating triples when it fails.",
    },
    "amalgamate": {
        "usage": "dcg amalgamate <B.dcg> <C.dcg> --base <a,b,...> [--out file]",
        "example": "dcg amalgamate left.dcg right.dcg --base a,b",
        "description": "Amalgamate two graphs over their common vertices.",
    },
    "jep": {
        "usage": "dcg jep <B.dcg> <C.dcg> [--out file]",
        "example": "dcg jep left.dcg right.dcg",
        "description": "Jointly embed two graphs with disjoint vertex sets.",
    },
    "realize": {
        "usage": "dcg realize <g.dcg> [--out file]",
        "example": "dcg realize triangle.dcg > triangle.cert",
        "description": "Find bit-strings whose first-difference coloring is the graph.",
    },
    "derive": {
        "usage": "dcg derive <cert.cert> [--out file]",
        "example": "dcg realize g.dcg | dcg derive -",
        "description": "Color every pair of strings by the position color of their first difference.",
    },
    "extend": {
        "usage": "dcg extend <g.dcg> --base <a,...> --colors <a=c,...> --new <vertex> [--trace] [--strategy greedy|stress] [--json]",
        "example": "dcg extend triangle.dcg --base a --colors a=3 --new d --trace",
        "description": "Add one vertex through the closure levels and a good selector; --trace dumps the selector on stderr.",
    },
    "build-generic": {
        "usage": "dcg build-generic --palette <c,...> --k <n> [--max-rounds <n>] [--seed <n>] [--strategy greedy|stress] [--out file]",
        "example": "dcg build-generic --palette 1,2,3 --k 2 --out generic.dcg",
        "description": "Grow a graph realizing every extension type over bases of at most k vertices.",
    },
    "check-generic": {
        "usage": "dcg check-generic <g.dcg> --k <n> --palette <c,...> [--fixed-palette] [--json]",
        "example": "dcg check-generic generic.dcg --k 2 --palette 1,2,3 --fixed-palette",
        "description": "List the extension types no vertex realizes; exit 1 when there are any.",
    },
    "enumerate": {
        "usage": "dcg enumerate --n <n> --m <m> [--list] [--workers <n>] [--json]",
        "example": "dcg enumerate --n 3 --m 2 --list",
        "description": "Count (and list) the valid colorings of labeled K_n over colors 1..m.",
    },
}


@dataclass(frozen=True)
class CommandOutput:
    """What a handler wants written.

    Attributes:
        text: The document or report for the standard output (or ``--out``).
        exit_code: 0 for success, 1 for a negative verdict.
        diagnostics: Extra text for the diagnostic stream.

    """

    text: str = ""
    exit_code: int = 0
    diagnostics: str = ""


def read_input(path: str) -> str:
    """Read a document from ``path``; ``-`` reads the standard input."""
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as f:
            return f.read()
    except UnicodeDecodeError as e:
        raise FormatError(f"{path} is not UTF-8 text: {e.reason}") from e


def load_graph(path: str) -> ColoredGraph:
    """Read and parse a dcg-v1 file."""
    return parse_dcg(read_input(path))


def _dump_json(data: object) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def build_help_message(command: str | None = None) -> str:
    """Build help output for all commands or a specific one."""
    if command is None:
        lines = ["Available commands:"]
        lines.extend(f"- {COMMAND_HELP[name]['usage']}" for name in COMMAND_HELP)
        lines.append("Use dcg help <command> for details.")
        return "\n".join(lines) + "\n"

    command_help = COMMAND_HELP.get(command.lower())
    if not command_help:
        raise PreconditionError(f"Unknown command: {command}")

    return "\n".join([
        f"Command: {command.lower()}",
        f"Usage: {command_help['usage']}",
        f"Description: {command_help['description']}",
        f"Example: {command_help['example']}",
    ]) + "\n"


def handle_help_command(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """Print the command overview or the help for one command."""
    return CommandOutput(build_help_message(args.topic))


def handle_validate_command(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """Validate a graph; the verdict is the exit code."""
    report = validate(load_graph(args.graph))
    if args.json:
        text = _dump_json(ValidationReportSchema().dump(report))
    else:
        lines = [f"valid: {'true' if report.valid else 'false'}"]
        for violation in report.violations:
            lines.append(" ".join(["violation", *violation.vertices, *(format_color(c) for c in violation.colors)]))
        text = "\n".join(lines) + "\n"
    return CommandOutput(text, 0 if report.valid else 1)


def handle_amalgamate_command(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """Amalgamate two graphs over the ``--base`` vertices."""
    b, c = load_graph(args.first), load_graph(args.second)
    return CommandOutput(format_dcg(amalgamate(b, c, parse_vertex_list(args.base))))


def handle_jep_command(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """Jointly embed two disjoint graphs."""
    return CommandOutput(format_dcg(jep(load_graph(args.first), load_graph(args.second))))


def handle_realize_command(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """Print a realization certificate for a valid graph."""
    g = load_graph(args.graph)
    require_valid(g)
    return CommandOutput(format_cert(realize(g)))


def handle_derive_command(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """Print the first-difference coloring of a certificate."""
    return CommandOutput(format_dcg(derive_coloring(parse_cert(read_input(args.cert)))))


def handle_extend_command(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """Extend a graph by one vertex with the selector construction."""
    g = load_graph(args.graph)
    base = parse_vertex_list(args.base)
    colors = parse_color_map(args.colors)
    if set(colors) != set(base):
        raise PreconditionError(f"--colors must give exactly the --base vertices {','.join(sorted(base))}")
    strategy = strategy_by_name(args.strategy or settings.strategy)
    plan = plan_extension(g, ExtensionType.of(args.new, colors), strategy)
    result = materialize(g, plan)
    diagnostics = ""
    if args.trace:
        if args.json:
            diagnostics = _dump_json(SelectorTraceSchema().dump(plan.trace))
        else:
            diagnostics = format_trace(plan.trace)
    return CommandOutput(format_dcg(result), diagnostics=diagnostics)


def handle_build_generic_command(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """Build a finite generic stage for a palette and base size bound."""
    g = build_generic(
        parse_palette(args.palette),
        args.k,
        args.max_rounds,
        seed=args.seed if args.seed is not None else settings.name_seed,
        strategy=strategy_by_name(args.strategy or settings.strategy),
        rounds_factor=settings.max_rounds_factor,
    )
    logger.info("Built generic stage with %d vertices", len(g))
    return CommandOutput(format_dcg(g))


def handle_check_generic_command(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """Report the unrealized extension types of a graph; failure is exit 1."""
    report = check_property_II(load_graph(args.graph), args.k, parse_palette(args.palette), augment=not args.fixed_palette)
    if args.json:
        text = _dump_json(GenericityReportSchema().dump(report))
    else:
        lines = [
            f"passed: {'true' if report.passed else 'false'}",
            f"checked: {report.checked}",
            f"vacuous: {'true' if report.vacuous else 'false'}",
        ]
        lines.extend(f"missing {','.join(t.base)} {format_color_map(t.color_map)}" for t in report.missing)
        text = "\n".join(lines) + "\n"
    return CommandOutput(text, 0 if report.passed else 1)


def handle_enumerate_command(args: argparse.Namespace, settings: Settings) -> CommandOutput:
    """Count (and list) the valid colorings of a labeled complete graph."""
    workers = args.workers if args.workers is not None else settings.workers
    result = enumerate_valid(args.n, args.m, materialize=args.list, workers=workers)
    if args.json:
        return CommandOutput(_dump_json(EnumerationResultSchema().dump(result)))
    text = f"count: {result.count}\n"
    if args.list and result.graphs:
        text += "\n" + "\n".join(format_dcg(g) for g in result.graphs)
    return CommandOutput(text)


Handler = Callable[["argparse.Namespace", "Settings"], CommandOutput]

HANDLERS: dict[str, Handler] = {
    "help": handle_help_command,
    "validate": handle_validate_command,
    "amalgamate": handle_amalgamate_command,
    "jep": handle_jep_command,
    "realize": handle_realize_command,
    "derive": handle_derive_command,
    "extend": handle_extend_command,
    "build-generic": handle_build_generic_command,
    "check-generic": handle_check_generic_command,
    "enumerate": handle_enumerate_command,
}
