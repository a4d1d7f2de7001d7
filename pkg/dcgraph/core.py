"""Distinction-colored complete graphs and the triangle law.

A colored graph is a finite complete graph whose edges carry exact rational
colors. It is *valid* when every triangle has exactly two equal colors and a
strictly larger third one. Colors only matter through their order, so
``fractions.Fraction`` is enough to stand for any dense endpointless order.
"""

from __future__ import annotations

import itertools
import logging
import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from dcgraph.errors import PreconditionError, StructureError

logger = logging.getLogger(__name__)

Color = Fraction
Pair = tuple[str, str]

VERTEX_NAME = re.compile(r"^[^\s,=#]+$")


def to_color(value: object) -> Color:
    """Convert an int, Fraction or ``p/q`` string to a Color.

    Floats and booleans are refused: colors have to compare exactly.
    """
    if isinstance(value, (bool, float)):
        raise StructureError(f"color must be an exact rational, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", value.strip()):
            raise StructureError(f"malformed color {value!r}")
        try:
            return Fraction(value.strip())
        except ZeroDivisionError:
            raise StructureError(f"zero denominator in color {value!r}") from None
    raise StructureError(f"unsupported color type {type(value).__name__}")


def fresh_above(colors: Iterable[Color]) -> Color:
    """Return a color strictly above every color given (max + 1, or 1 if none)."""
    top = max(colors, default=None)
    return Fraction(1) if top is None else Fraction(top) + 1


def check_vertex_name(name: object) -> str:
    """Return ``name`` if it is a usable vertex name, raise StructureError otherwise."""
    if not isinstance(name, str) or not name.isprintable() or not VERTEX_NAME.match(name):
        raise StructureError(f"invalid vertex name {name!r}")
    return name


def pair(u: str, v: str) -> Pair:
    """Return the unordered pair ``{u, v}`` as a sorted tuple."""
    return (u, v) if u < v else (v, u)


def triangle_ok(x: Color, y: Color, z: Color) -> bool:
    """Check the triangle law on the colors of one triangle.

    ``x = f(a0, a1)``, ``y = f(a0, a2)``, ``z = f(a1, a2)``. The law is read
    from every corner, so the argument order does not matter.
    """
    for first, second, third in ((x, y, z), (x, z, y), (y, z, x)):
        if first != second:
            if third != min(first, second):
                return False
        elif third <= first:
            return False
    return True


def crucial_property(x: Color, y: Color, z: Color) -> bool:
    """Exactly two of the three colors are equal and the third one is larger."""
    low, mid, high = sorted((x, y, z))
    return low == mid < high


@dataclass(frozen=True)
class Violation:
    """A triple of vertices whose colors break the triangle law."""

    vertices: tuple[str, str, str]
    colors: tuple[Color, Color, Color]


@dataclass(frozen=True)
class ValidationReport:
    """All violating triangles of a candidate, in lexicographic order."""

    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        """True when no triangle violates the law."""
        return not self.violations


@dataclass(frozen=True)
class ColoredGraph:
    """A finite complete graph with a color on every edge.

    Construction checks the structure only (names, completeness, no loops,
    no conflicting colors); the triangle law is checked by ``validate``, so
    an instance may be an invalid candidate.

    Attributes:
        vertices: The vertex names, sorted.
        edges: ``(u, v, color)`` for every pair ``u < v``, sorted by ``(u, v)``.

    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, Color], ...] = ()
    _table: dict[Pair, Color] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        """Canonicalize vertex and edge order and check structural completeness."""
        names = [check_vertex_name(v) for v in self.vertices]
        if not names:
            raise StructureError("a graph needs at least one vertex")
        if len(set(names)) != len(names):
            raise StructureError("duplicate vertex names")
        known = set(names)
        table: dict[Pair, Color] = {}
        for u, v, raw in self.edges:
            if u == v:
                raise StructureError(f"self-loop on {u!r}")
            for end in (u, v):
                if end not in known:
                    raise StructureError(f"edge mentions unknown vertex {end!r}")
            key = pair(u, v)
            color = to_color(raw)
            if table.get(key, color) != color:
                raise StructureError(f"conflicting colors for edge {key[0]} {key[1]}")
            table[key] = color
        ordered = tuple(sorted(names))
        for key in itertools.combinations(ordered, 2):
            if key not in table:
                raise StructureError(f"edge map is not total: missing {key[0]} {key[1]}")
        object.__setattr__(self, "vertices", ordered)
        object.__setattr__(self, "edges", tuple((u, v, table[(u, v)]) for u, v in itertools.combinations(ordered, 2)))
        object.__setattr__(self, "_table", table)

    @classmethod
    def from_colors(cls, vertices: Iterable[str], colors: Mapping[Pair, object]) -> ColoredGraph:
        """Build a graph from a vertex list and a ``{(u, v): color}`` mapping."""
        return cls(tuple(vertices), tuple((u, v, c) for (u, v), c in colors.items()))

    def __len__(self) -> int:
        """Return the number of vertices."""
        return len(self.vertices)

    def __contains__(self, vertex: object) -> bool:
        """Return True if ``vertex`` is a vertex of the graph."""
        return vertex in self.vertices

    def color(self, u: str, v: str) -> Color:
        """Return ``f(u, v)``."""
        if u == v:
            raise PreconditionError(f"no color on the diagonal ({u!r})")
        try:
            return self._table[pair(u, v)]
        except KeyError:
            raise PreconditionError(f"no edge {u!r} {v!r}") from None

    def colors_from(self, v: str) -> dict[str, Color]:
        """Return ``{u: f(v, u)}`` for every other vertex ``u``."""
        return {u: self.color(v, u) for u in self.vertices if u != v}


def _splits_cleanly(g: ColoredGraph) -> bool:
    """Return True if ``g`` breaks down into a tree of least-color splits.

    Each block must fall into exactly two parts joined only by its least
    color, and that color must grow from a block to its parts. Every pair
    is looked at once, as the pair that separates at some block.
    """
    table = g._table
    pending: list[tuple[list[str], Color | None]] = [(list(g.vertices), None)]
    while pending:
        block, above = pending.pop()
        if len(block) < 2:
            continue
        first = block[0]
        level = min(table[pair(first, v)] for v in block[1:])
        if above is not None and level <= above:
            return False
        zero = [first]
        one: list[str] = []
        for v in block[1:]:
            (zero if table[pair(first, v)] > level else one).append(v)
        for u in zero[1:]:
            for v in one:
                if table[pair(u, v)] != level:
                    return False
        pending.append((zero, level))
        pending.append((one, level))
    return True


def validate(g: ColoredGraph) -> ValidationReport:
    """List every unordered triple of ``g`` that breaks the triangle law.

    An empty report means ``g`` is a valid colored graph. Structural problems
    never reach this point: ``ColoredGraph`` refuses them on construction.
    """
    if _splits_cleanly(g):
        return ValidationReport()
    table = g._table
    found = []
    for a, b, c in itertools.combinations(g.vertices, 3):
        # vertices are sorted, so these are the table keys
        x, y, z = table[(a, b)], table[(a, c)], table[(b, c)]
        if not crucial_property(x, y, z):
            found.append(Violation((a, b, c), (x, y, z)))
    if found:
        logger.debug("%d violating triangles among %d vertices", len(found), len(g))
    return ValidationReport(tuple(found))


def is_valid(g: ColoredGraph) -> bool:
    """Shorthand for ``validate(g).valid``."""
    return validate(g).valid


def require_valid(g: ColoredGraph, what: str = "graph") -> None:
    """Raise PreconditionError unless ``g`` satisfies the triangle law."""
    report = validate(g)
    if not report.valid:
        first = report.violations[0]
        raise PreconditionError(f"{what} is not valid: triangle {' '.join(first.vertices)} has colors {', '.join(str(c) for c in first.colors)}")


def induced(g: ColoredGraph, subset: Iterable[str]) -> ColoredGraph:
    """Restrict ``g`` to a non-empty subset of its vertices."""
    chosen = set(subset)
    if not chosen:
        raise PreconditionError("induced subgraph needs a non-empty vertex set")
    unknown = chosen - set(g.vertices)
    if unknown:
        raise PreconditionError(f"vertices not in graph: {', '.join(sorted(unknown))}")
    return ColoredGraph(tuple(chosen), tuple(e for e in g.edges if e[0] in chosen and e[1] in chosen))


def palette(g: ColoredGraph) -> list[Color]:
    """Return the colors used on edges of ``g``, ascending and without duplicates."""
    return sorted({c for _, _, c in g.edges})


def rename(g: ColoredGraph, mapping: Mapping[str, str]) -> ColoredGraph:
    """Rename vertices; names missing from ``mapping`` are kept."""
    target = [mapping.get(v, v) for v in g.vertices]
    if len(set(target)) != len(target):
        raise PreconditionError("renaming is not injective")
    return ColoredGraph(tuple(target), tuple((mapping.get(u, u), mapping.get(v, v), c) for u, v, c in g.edges))


def add_vertex(g: ColoredGraph, name: str, colors: Mapping[str, object]) -> ColoredGraph:
    """Return ``g`` plus a vertex ``name`` joined to every vertex with the given colors."""
    if name in g.vertices:
        raise PreconditionError(f"vertex {name!r} already present")
    missing = set(g.vertices) - set(colors)
    if missing:
        raise PreconditionError(f"no color from {name!r} to {', '.join(sorted(missing))}")
    extra = set(colors) - set(g.vertices)
    if extra:
        raise PreconditionError(f"colors given for unknown vertices {', '.join(sorted(extra))}")
    return ColoredGraph((*g.vertices, name), (*g.edges, *((v, name, colors[v]) for v in g.vertices)))


def min_bound_holds(g: ColoredGraph) -> bool:
    """Check that ``f(a, b) = m`` forces ``min{f(a, c), f(b, c)} <= m`` for all ``c``."""
    for a, b in itertools.combinations(g.vertices, 2):
        m = g.color(a, b)
        for c in g.vertices:
            if c not in (a, b) and min(g.color(a, c), g.color(b, c)) > m:
                return False
    return True


def monochromatic_triangles(g: ColoredGraph) -> list[tuple[str, str, str]]:
    """Return every triple whose three edges share one color."""
    return [(a, b, c) for a, b, c in itertools.combinations(g.vertices, 3) if g.color(a, b) == g.color(a, c) == g.color(b, c)]


def _profile(g: ColoredGraph, v: str) -> tuple[Color, ...]:
    return tuple(sorted(g.colors_from(v).values()))


def iso_check(g1: ColoredGraph, g2: ColoredGraph) -> dict[str, str] | None:
    """Find a color-preserving bijection from ``g1`` onto ``g2``.

    Colors must match exactly, isomorphisms fix the color order pointwise.
    Vertices of ``g1`` are assigned in name order and images are tried in
    name order, so the first bijection found is the lexicographically least.

    Returns:
        The bijection as a dict, or None if the graphs are not isomorphic.

    """
    require_valid(g1, "first graph")
    require_valid(g2, "second graph")
    if len(g1) != len(g2) or sorted(c for *_, c in g1.edges) != sorted(c for *_, c in g2.edges):
        return None

    profiles2 = {v: _profile(g2, v) for v in g2.vertices}
    candidates = {u: [v for v in g2.vertices if profiles2[v] == _profile(g1, u)] for u in g1.vertices}
    order = list(g1.vertices)

    def extend(mapping: dict[str, str], used: set[str]) -> Iterator[dict[str, str]]:
        if len(mapping) == len(order):
            yield dict(mapping)
            return
        u = order[len(mapping)]
        for v in candidates[u]:
            if v in used:
                continue
            if all(g2.color(v, mapping[w]) == g1.color(u, w) for w in mapping):
                mapping[u] = v
                used.add(v)
                yield from extend(mapping, used)
                del mapping[u]
                used.discard(v)

    return next(extend({}, set()), None)
