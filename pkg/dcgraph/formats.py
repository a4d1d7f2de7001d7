"""Parsing and printing of the dcg-v1 and cert-v1 text formats."""

from __future__ import annotations

import re
from collections.abc import Iterator, Mapping
from typing import TYPE_CHECKING

from dcgraph.core import Color, ColoredGraph, check_vertex_name, to_color
from dcgraph.errors import FormatError, StructureError

if TYPE_CHECKING:
    from dcgraph.realize import RealizationCertificate
    from dcgraph.selector import SelectorTrace

DCG_HEADER = "format: dcg-v1"
CERT_HEADER = "format: cert-v1"
EMPTY_BITS = "-"


def parse_color(text: str) -> Color:
    """Parse ``p`` or ``p/q`` into a Color."""
    try:
        return to_color(text)
    except StructureError as e:
        raise FormatError(str(e)) from None


def format_color(color: Color) -> str:
    """Print a Color as ``p`` for integers and ``p/q`` otherwise."""
    if color.denominator == 1:
        return str(color.numerator)
    return f"{color.numerator}/{color.denominator}"


def parse_palette(text: str) -> list[Color]:
    """Parse ``1,2,5/2`` into an ascending, duplicate-free color list."""
    items = [item for item in text.split(",") if item.strip()]
    if not items:
        raise FormatError("empty palette")
    return sorted({parse_color(item) for item in items})


def parse_vertex_list(text: str) -> list[str]:
    """Parse ``a,b,c`` into a list of vertex names."""
    names = [item.strip() for item in text.split(",") if item.strip()]
    try:
        return [check_vertex_name(name) for name in names]
    except StructureError as e:
        raise FormatError(str(e)) from None


def parse_color_map(text: str) -> dict[str, Color]:
    """Parse ``a=3,b=5/2`` into ``{"a": 3, "b": 5/2}``."""
    result: dict[str, Color] = {}
    for item in text.split(","):
        if not item.strip():
            continue
        name, sep, raw = item.partition("=")
        if not sep:
            raise FormatError(f"expected vertex=color, got {item.strip()!r}")
        name = name.strip()
        try:
            check_vertex_name(name)
        except StructureError as e:
            raise FormatError(str(e)) from None
        if name in result:
            raise FormatError(f"color for {name!r} given twice")
        result[name] = parse_color(raw)
    return result


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield line_no, line


def _expect_header(lines: list[tuple[int, str]], header: str) -> None:
    if not lines:
        raise FormatError(f"empty document, expected {header!r}")
    line_no, line = lines[0]
    if re.sub(r"\s+", " ", line) != header:
        raise FormatError(f"expected {header!r}", line_no)


def parse_dcg(text: str) -> ColoredGraph:
    """Parse a dcg-v1 document.

    Edge lines may come in any order; comments and blank lines are skipped.
    The header must be the first content line and ``vertices:`` must appear
    exactly once before any edge.
    """
    lines = list(_content_lines(text))
    _expect_header(lines, DCG_HEADER)
    vertices: list[str] | None = None
    edges: dict[tuple[str, str], Color] = {}
    for line_no, line in lines[1:]:
        keyword, _, rest = line.partition(" ")
        if keyword == "vertices:":
            if vertices is not None:
                raise FormatError("vertices listed twice", line_no)
            vertices = rest.split()
            for name in vertices:
                try:
                    check_vertex_name(name)
                except StructureError as e:
                    raise FormatError(str(e), line_no) from None
        elif keyword == "edge":
            if vertices is None:
                raise FormatError("edge before vertices line", line_no)
            parts = rest.split()
            if len(parts) != 3:
                raise FormatError(f"expected 'edge <u> <v> <color>', got {line!r}", line_no)
            u, v, raw = parts
            if u == v:
                raise FormatError(f"self-loop on {u!r}", line_no)
            for end in (u, v):
                if end not in vertices:
                    raise FormatError(f"unknown vertex {end!r}", line_no)
            key = (u, v) if u < v else (v, u)
            try:
                color = parse_color(raw)
            except FormatError as e:
                raise FormatError(str(e), line_no) from None
            if edges.get(key, color) != color:
                raise FormatError(f"conflicting colors for edge {key[0]} {key[1]}", line_no)
            edges[key] = color
        else:
            raise FormatError(f"unexpected line {line!r}", line_no)
    if vertices is None:
        raise FormatError("missing vertices line")
    try:
        return ColoredGraph.from_colors(vertices, edges)
    except StructureError as e:
        raise FormatError(str(e)) from None


def format_dcg(g: ColoredGraph) -> str:
    """Print ``g`` in canonical dcg-v1 form."""
    lines = [DCG_HEADER, " ".join(["vertices:", *g.vertices])]
    lines.extend(f"edge {u} {v} {format_color(c)}" for u, v, c in g.edges)
    return "\n".join(lines) + "\n"


def parse_cert(text: str) -> RealizationCertificate:
    """Parse a cert-v1 document into a certificate.

    Only the shape is checked here; ``derive_coloring`` checks the invariants.
    """
    from dcgraph.realize import RealizationCertificate

    lines = list(_content_lines(text))
    _expect_header(lines, CERT_HEADER)
    positions: list[Color] | None = None
    strings: dict[str, str] = {}
    for line_no, line in lines[1:]:
        keyword, _, rest = line.partition(" ")
        if keyword == "positions:":
            if positions is not None:
                raise FormatError("positions listed twice", line_no)
            try:
                positions = [parse_color(item) for item in rest.split()]
            except FormatError as e:
                raise FormatError(str(e), line_no) from None
        elif keyword == "string":
            parts = rest.split()
            if len(parts) != 2:
                raise FormatError(f"expected 'string <vertex> <bits>', got {line!r}", line_no)
            name, bits = parts
            if bits == EMPTY_BITS:
                bits = ""
            if not re.fullmatch(r"[01]*", bits):
                raise FormatError(f"bit-string must consist of 0 and 1, got {bits!r}", line_no)
            if name in strings:
                raise FormatError(f"string for {name!r} given twice", line_no)
            strings[name] = bits
        else:
            raise FormatError(f"unexpected line {line!r}", line_no)
    if positions is None:
        raise FormatError("missing positions line")
    if not strings:
        raise FormatError("certificate has no strings")
    try:
        return RealizationCertificate.build(strings, positions)
    except StructureError as e:
        raise FormatError(str(e)) from None


def format_cert(cert: RealizationCertificate) -> str:
    """Print a certificate in canonical cert-v1 form."""
    lines = [CERT_HEADER, " ".join(["positions:", *(format_color(c) for c in cert.position_colors)])]
    lines.extend(f"string {name} {bits or EMPTY_BITS}" for name, bits in cert.strings)
    return "\n".join(lines) + "\n"


def format_color_map(colors: Mapping[str, Color]) -> str:
    """Print ``{"a": 3}`` as ``a=3``, in vertex order."""
    return ",".join(f"{name}={format_color(colors[name])}" for name in sorted(colors))


def format_trace(trace: SelectorTrace) -> str:
    """Print a selector trace one step per line."""
    lines = [f"step {index} v={step.vertex} λ={format_color(step.color)} |A|={len(step.members)}" for index, step in enumerate(trace.steps)]
    lines.append(" ".join(["final:", *trace.final]))
    lines.append(f"classification: {trace.classification}")
    return "\n".join(lines) + "\n"
