"""One-point extensions, amalgamation and joint embedding of colored graphs."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from dcgraph.core import (
    Color,
    ColoredGraph,
    add_vertex,
    check_vertex_name,
    fresh_above,
    induced,
    palette,
    require_valid,
    to_color,
    triangle_ok,
    validate,
)
from dcgraph.errors import InconsistencyError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExtensionType:
    """The colors one new vertex gets towards a base set of existing vertices.

    Attributes:
        new_vertex: Name of the vertex being added.
        colors: ``(base vertex, color)`` pairs, sorted by vertex name.

    """

    new_vertex: str
    colors: tuple[tuple[str, Color], ...]

    def __post_init__(self) -> None:
        """Check the names and put the color pairs in vertex order."""
        check_vertex_name(self.new_vertex)
        ordered = tuple(sorted((check_vertex_name(v), to_color(c)) for v, c in self.colors))
        names = [v for v, _ in ordered]
        if not names:
            raise PreconditionError("an extension type needs a non-empty base")
        if len(set(names)) != len(names):
            raise PreconditionError("base vertex listed twice")
        if self.new_vertex in names:
            raise PreconditionError(f"new vertex {self.new_vertex!r} is part of the base")
        object.__setattr__(self, "colors", ordered)

    @classmethod
    def of(cls, new_vertex: str, colors: Mapping[str, object]) -> ExtensionType:
        """Build a type from a ``{base vertex: color}`` mapping."""
        return cls(new_vertex, tuple((v, to_color(c)) for v, c in colors.items()))

    @property
    def base(self) -> tuple[str, ...]:
        """The base vertices, sorted."""
        return tuple(v for v, _ in self.colors)

    @property
    def color_map(self) -> dict[str, Color]:
        """The colors as a dict keyed by base vertex."""
        return dict(self.colors)

    def fits(self, g: ColoredGraph) -> bool:
        """Return True if the new vertex can join ``induced(g, base)`` without breaking the law."""
        colors = self.colors
        for i, (a, x) in enumerate(colors):
            for b, y in colors[i + 1 :]:
                if not triangle_ok(x, y, g.color(a, b)):
                    return False
        return True

    def realized_by(self, g: ColoredGraph, vertex: str) -> bool:
        """Return True if ``vertex`` already carries exactly these colors towards the base."""
        return vertex not in self.base and all(g.color(vertex, a) == c for a, c in self.colors)


def check_extension(g: ColoredGraph, t: ExtensionType) -> None:
    """Raise PreconditionError unless ``t`` is a valid one-point extension over ``g``."""
    unknown = set(t.base) - set(g.vertices)
    if unknown:
        raise PreconditionError(f"base vertices not in graph: {', '.join(sorted(unknown))}")
    if t.new_vertex in g.vertices:
        raise PreconditionError(f"new vertex {t.new_vertex!r} already in graph")
    if not t.fits(g):
        raise PreconditionError(f"extension type for {t.new_vertex!r} breaks the triangle law over its base")


def min_rule(g: ColoredGraph, assigned: Mapping[str, Color], v: str, witnesses: Iterable[str]) -> Color | None:
    """Color the edge from the new vertex to ``v`` by the min rule.

    A witness is an already colored vertex ``a`` with ``f(a, new) != f(a, v)``;
    the edge then gets ``min{f(a, new), f(a, v)}``. Every witness must give
    the same value, a disagreement means the input was not valid.

    Returns:
        The color, or None if no witness distinguishes ``v`` from the new vertex.

    """
    values: dict[Color, str] = {}
    for a in witnesses:
        theirs = g.color(a, v)
        if assigned[a] != theirs:
            values.setdefault(min(assigned[a], theirs), a)
    if len(values) > 1:
        detail = {"vertex": v, "witnesses": {a: str(c) for c, a in values.items()}}
        logger.error("Min rule is ambiguous for %s: %s", v, detail["witnesses"])
        raise InconsistencyError(f"min rule is ambiguous for vertex {v!r}", detail)
    return next(iter(values), None)


def glue_vertex(g: ColoredGraph, t: ExtensionType) -> ColoredGraph:
    """Add ``t.new_vertex`` to ``g`` with a total coloring extending ``t.colors``.

    Vertices outside the base are processed in name order. Each gets the min
    rule over the vertices colored so far, or a fresh color above every
    color of the working graph when nothing tells it apart from the new vertex.

    Raises:
        PreconditionError: if ``g`` is invalid or ``t`` does not fit over ``g``.
        InconsistencyError: if the min rule turns out ambiguous.

    """
    require_valid(g)
    check_extension(g, t)
    assigned = t.color_map
    top = fresh_above([*palette(g), *assigned.values()]) - 1
    for v in sorted(set(g.vertices) - set(assigned)):
        color = min_rule(g, assigned, v, sorted(assigned))
        if color is None:
            color = top + 1
            logger.debug("glue %s: no witness for %s, fresh color %s", t.new_vertex, v, color)
        assigned[v] = color
        top = max(top, color)
    result = add_vertex(g, t.new_vertex, assigned)
    if not validate(result).valid:
        logger.error("Gluing %s produced an invalid graph", t.new_vertex)
        raise InconsistencyError(f"gluing {t.new_vertex!r} produced an invalid graph")
    return result


def _check_shared(b: ColoredGraph, c: ColoredGraph, shared: Iterable[str]) -> set[str]:
    common = set(b.vertices) & set(c.vertices)
    given = set(shared)
    if given != common:
        raise PreconditionError(f"shared part {sorted(given)} is not the intersection {sorted(common)}")
    if common and induced(b, common) != induced(c, common):
        raise PreconditionError("the two graphs disagree on their shared part")
    return common


def amalgamate(b: ColoredGraph, c: ColoredGraph, shared: Iterable[str]) -> ColoredGraph:
    """Amalgamate ``b`` and ``c`` over their common induced subgraph.

    The vertices of ``c`` missing from ``b`` are glued into ``b`` one at a
    time in name order, each carrying its ``c``-colors towards the shared part
    and the ``c``-vertices added before it. An empty shared part is a joint
    embedding.

    Returns:
        A valid graph on ``V(b) | V(c)`` that restricts to ``b`` and to ``c``.

    """
    require_valid(b, "first graph")
    require_valid(c, "second graph")
    common = _check_shared(b, c, shared)
    if not common:
        return jep(b, c)
    result = b
    placed = sorted(common)
    for vertex in sorted(set(c.vertices) - common):
        result = glue_vertex(result, ExtensionType.of(vertex, {a: c.color(a, vertex) for a in placed}))
        placed.append(vertex)
    logger.debug("amalgamated %d + %d vertices over %d shared", len(b), len(c), len(common))
    return result


def jep(b: ColoredGraph, c: ColoredGraph) -> ColoredGraph:
    """Jointly embed two graphs with disjoint vertex sets.

    The least vertices of the two sides are joined by a color above every
    color of either graph; the rest is an amalgamation over that vertex.
    """
    require_valid(b, "first graph")
    require_valid(c, "second graph")
    overlap = set(b.vertices) & set(c.vertices)
    if overlap:
        raise PreconditionError(f"vertex sets are not disjoint: {', '.join(sorted(overlap))}")
    anchor_b, anchor_c = b.vertices[0], c.vertices[0]
    bridge = fresh_above([*palette(b), *palette(c)])
    joined = glue_vertex(b, ExtensionType.of(anchor_c, {anchor_b: bridge}))
    return amalgamate(joined, c, [anchor_c])
