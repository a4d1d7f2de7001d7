"""First-difference realization of colored graphs by binary strings.

Distinct equal-length bit-strings colored by the position of their first
difference always satisfy the triangle law. ``realize`` goes the other way:
it splits a valid graph recursively at its least color and reads a
certificate off the resulting binary tree.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass

from dcgraph.core import Color, ColoredGraph, check_vertex_name, to_color
from dcgraph.errors import InconsistencyError, PreconditionError, StructureError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RealizationCertificate:
    """Bit-strings for every vertex plus the color of every string position.

    Attributes:
        strings: ``(vertex, bits)`` pairs, sorted by vertex.
        position_colors: One color per position, meant to be strictly ascending.

    """

    strings: tuple[tuple[str, str], ...]
    position_colors: tuple[Color, ...] = ()

    def __post_init__(self) -> None:
        """Check the shape of the strings and sort them by vertex."""
        ordered = tuple(sorted((check_vertex_name(v), bits) for v, bits in self.strings))
        names = [v for v, _ in ordered]
        if not names:
            raise StructureError("a certificate needs at least one string")
        if len(set(names)) != len(names):
            raise StructureError("vertex listed twice in certificate")
        for name, bits in ordered:
            if not isinstance(bits, str) or set(bits) - {"0", "1"}:
                raise StructureError(f"string for {name!r} is not binary")
        object.__setattr__(self, "strings", ordered)
        object.__setattr__(self, "position_colors", tuple(to_color(c) for c in self.position_colors))

    @classmethod
    def build(cls, strings: Mapping[str, str], position_colors: Sequence[object]) -> RealizationCertificate:
        """Build a certificate from a ``{vertex: bits}`` mapping."""
        return cls(tuple(strings.items()), tuple(to_color(c) for c in position_colors))

    @property
    def length(self) -> int:
        """The number of positions."""
        return len(self.position_colors)

    def problems(self) -> list[str]:
        """Describe every broken invariant; an empty list means the certificate is usable."""
        found = []
        for name, bits in self.strings:
            if len(bits) != self.length:
                found.append(f"string for {name!r} has length {len(bits)}, expected {self.length}")
        for low, high in itertools.pairwise(self.position_colors):
            if not low < high:
                found.append(f"position colors not strictly ascending at {low} -> {high}")
        seen: dict[str, str] = {}
        for name, bits in self.strings:
            if bits in seen:
                found.append(f"vertices {seen[bits]!r} and {name!r} share the string {bits or '-'}")
            seen.setdefault(bits, name)
        return found


@dataclass(frozen=True)
class Split:
    """One node of the split tree: a block divided at ``color`` into two sub-blocks."""

    color: Color
    zero: Split | str
    one: Split | str

    def leaves(self) -> Iterator[str]:
        """Yield the vertices below this node."""
        for side in (self.zero, self.one):
            if isinstance(side, Split):
                yield from side.leaves()
            else:
                yield side


def first_difference(x: str, y: str) -> int | None:
    """Return the first index where ``x`` and ``y`` differ, or None if they agree."""
    for index, (a, b) in enumerate(zip(x, y, strict=False)):
        if a != b:
            return index
    return None if len(x) == len(y) else min(len(x), len(y))


def derive_coloring(cert: RealizationCertificate) -> ColoredGraph:
    """Color every pair of vertices by the position color of their first difference.

    Raises:
        PreconditionError: on unequal lengths, repeated strings or position colors
            that are not strictly ascending.

    """
    found = cert.problems()
    if found:
        raise PreconditionError("; ".join(found))
    length = cert.length
    # the first difference of two strings is the top set bit of their xor
    values = [(name, int(bits, 2) if bits else 0) for name, bits in cert.strings]
    colors = cert.position_colors
    edges = [(u, v, colors[length - (x ^ y).bit_length()]) for (u, x), (v, y) in itertools.combinations(values, 2)]
    return ColoredGraph(tuple(name for name, _ in cert.strings), tuple(edges))


def _split_block(g: ColoredGraph, block: list[str], above: Color | None) -> Split | str:
    if len(block) == 1:
        return block[0]
    color = g.color
    # a valid block meets its least color on every row, so the first row is enough
    level = min(color(block[0], v) for v in block[1:])
    if above is not None and level <= above:
        raise InconsistencyError(f"block {' '.join(block)} has color {level} inside a split at {above}")
    parts: list[list[str]] = []
    for vertex in block:
        for part in parts:
            if color(vertex, part[0]) > level:
                part.append(vertex)
                break
        else:
            parts.append([vertex])
    if len(parts) != 2:
        logger.error("Block %s falls into %d parts at level %s", block, len(parts), level)
        raise InconsistencyError(f"not bipartite at level {level}: {len(parts)} blocks", {"block": block, "level": str(level)})
    zero, one = parts
    for u in zero:
        for v in one:
            if color(u, v) != level:
                raise InconsistencyError(f"edge {u} {v} crosses the split at {level} with color {color(u, v)}")
    return Split(level, _split_block(g, zero, level), _split_block(g, one, level))


def split_tree(g: ColoredGraph) -> Split | str:
    """Split ``g`` recursively at the least color of each block.

    The part holding the lexicographically least vertex of a block becomes
    the ``zero`` side. A single vertex is its own tree.

    Raises:
        InconsistencyError: if some block does not split into exactly two parts
            joined only by its least color, which happens exactly when ``g`` is invalid.

    """
    return _split_block(g, list(g.vertices), None)


def _split_colors(node: Split | str) -> Iterator[Color]:
    if isinstance(node, Split):
        yield node.color
        yield from _split_colors(node.zero)
        yield from _split_colors(node.one)


def realize(g: ColoredGraph) -> RealizationCertificate:
    """Find bit-strings whose first-difference coloring is exactly ``g``.

    Positions are the colors at which some block split, ascending. A vertex
    gets 1 at a split position when it lies on the ``one`` side of that split
    and 0 everywhere else.
    """
    tree = split_tree(g)
    positions = sorted(set(_split_colors(tree)))
    index = {color: i for i, color in enumerate(positions)}
    bits = {v: ["0"] * len(positions) for v in g.vertices}
    pending = [tree]
    while pending:
        node = pending.pop()
        if not isinstance(node, Split):
            continue
        for v in (node.one.leaves() if isinstance(node.one, Split) else [node.one]):
            bits[v][index[node.color]] = "1"
        pending.extend((node.zero, node.one))
    logger.debug("realized %d vertices with %d positions", len(g), len(positions))
    return RealizationCertificate.build({v: "".join(b) for v, b in bits.items()}, positions)
