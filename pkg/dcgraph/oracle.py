"""Exhaustive enumeration of small colored graphs and brute-force re-verification.

Colors here are the integer chain ``1..m``; only their order matters. Vertices
are named ``a``, ``b``, ``c``, ... so the enumeration order is the
lexicographic order of the edge color tuples in canonical edge order.
"""

from __future__ import annotations

import itertools
import logging
import math
import string
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from dcgraph.amalgam import amalgamate
from dcgraph.core import ColoredGraph, crucial_property, induced, rename, triangle_ok, validate
from dcgraph.errors import BoundExceededError, DcgError, PreconditionError
from dcgraph.realize import derive_coloring, realize
from dcgraph.selector import enumerate_traces

logger = logging.getLogger(__name__)

MAX_N = 6
MAX_M = 6
MAX_CANDIDATES = 10**8


@dataclass(frozen=True)
class EnumerationResult:
    """Valid labeled colorings of ``K_n`` over the chain ``1..m``.

    Attributes:
        n: Vertex count.
        m: Chain length.
        count: Number of valid colorings.
        graphs: The colorings in enumeration order, when materialized.

    """

    n: int
    m: int
    count: int
    graphs: tuple[ColoredGraph, ...] | None = None


def vertex_names(n: int) -> tuple[str, ...]:
    """Return the first ``n`` enumeration vertex names."""
    return tuple(string.ascii_lowercase[:n])


def check_bounds(n: int, m: int) -> None:
    """Raise BoundExceededError unless ``(n, m)`` lies within the enumeration guard."""
    if not 1 <= n <= MAX_N or not 1 <= m <= MAX_M:
        raise BoundExceededError(f"enumeration needs 1 <= n <= {MAX_N} and 1 <= m <= {MAX_M}, got n={n} m={m}")
    total = m ** math.comb(n, 2)
    if total > MAX_CANDIDATES:
        raise BoundExceededError(f"{m}^{math.comb(n, 2)} = {total} candidates exceed the guard of {MAX_CANDIDATES}")


def closed_form_triangle_count(m: int) -> int:
    """Number of valid colorings of a labeled triangle over a chain of ``m`` colors."""
    return 3 * math.comb(m, 2)


def _edge_plan(n: int) -> tuple[list[tuple[int, int]], list[list[tuple[int, int]]]]:
    # Triangle a < b < c is complete once edge (b, c) is placed, which comes last in combinations order.
    edges = list(itertools.combinations(range(n), 2))
    index = {e: i for i, e in enumerate(edges)}
    checks = [[(index[(a, b)], index[(a, c)]) for a in range(b)] for b, c in edges]
    return edges, checks


def _scan_branch(n: int, m: int, first: int, keep: bool) -> tuple[int, list[tuple[int, ...]]]:
    """Count (and optionally keep) the valid colorings whose first edge has color ``first``."""
    edges, checks = _edge_plan(n)
    found: list[tuple[int, ...]] = []
    count = 0
    colors = [0] * len(edges)

    def place(position: int) -> None:
        nonlocal count
        if position == len(edges):
            count += 1
            if keep:
                found.append(tuple(colors))
            return
        options = [first] if position == 0 else range(1, m + 1)
        for color in options:
            colors[position] = color
            if all(triangle_ok(colors[ab], colors[ac], color) for ab, ac in checks[position]):
                place(position + 1)

    place(0)
    return count, found


def _to_graph(n: int, colors: tuple[int, ...]) -> ColoredGraph:
    names = vertex_names(n)
    return ColoredGraph(names, tuple((names[u], names[v], c) for (u, v), c in zip(itertools.combinations(range(n), 2), colors, strict=True)))


def enumerate_valid(n: int, m: int, materialize: bool = False, *, workers: int = 1) -> EnumerationResult:
    """Enumerate every valid coloring of labeled ``K_n`` with colors ``1..m``.

    Candidates are scanned depth first in canonical edge order, dropping a
    branch as soon as one of its triangles breaks the law, which keeps the
    same set and order a filter over the full product would give.

    Args:
        n: Vertex count, 1 to 6.
        m: Chain length, 1 to 6.
        materialize: Also return the graphs.
        workers: Processes to split the first edge's colors over; 1 scans in-process.

    Raises:
        BoundExceededError: if the bounds or the candidate guard are exceeded.

    """
    check_bounds(n, m)
    if workers < 1:
        raise PreconditionError("workers must be at least 1")
    if n == 1:
        result = EnumerationResult(1, m, 1, (_to_graph(1, ()),) if materialize else None)
        logger.info("Enumerated n=%d m=%d: %d valid", n, m, result.count)
        return result
    firsts = range(1, m + 1)
    if workers == 1:
        branches = [_scan_branch(n, m, first, materialize) for first in firsts]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            branches = list(pool.map(_scan_branch, itertools.repeat(n), itertools.repeat(m), firsts, itertools.repeat(materialize)))
    count = sum(c for c, _ in branches)
    graphs = tuple(_to_graph(n, colors) for _, found in branches for colors in found) if materialize else None
    logger.info("Enumerated n=%d m=%d: %d valid", n, m, count)
    return EnumerationResult(n, m, count, graphs)


def all_valid(max_n: int, m: int) -> Iterator[ColoredGraph]:
    """Yield every valid graph with 1 to ``max_n`` vertices over ``1..m``."""
    for n in range(1, max_n + 1):
        yield from enumerate_valid(n, m, materialize=True).graphs or ()


def verify_validator_agreement(n: int, m: int) -> bool:
    """Compare ``validate`` with the two-equal-one-larger restatement on every candidate coloring."""
    check_bounds(n, m)
    names = vertex_names(n)
    pairs = list(itertools.combinations(names, 2))
    for colors in itertools.product(range(1, m + 1), repeat=len(pairs)):
        g = ColoredGraph(names, tuple((u, v, c) for (u, v), c in zip(pairs, colors, strict=True)))
        expected = all(crucial_property(g.color(a, b), g.color(a, c), g.color(b, c)) for a, b, c in itertools.combinations(names, 3))
        if validate(g).valid != expected:
            logger.warning("Validator disagrees with the restatement on %s", colors)
            return False
    return True


def verify_realization_exhaustive(n: int, m: int) -> bool:
    """Check that every valid graph of the enumeration survives ``derive_coloring(realize(g))`` unchanged."""
    for g in enumerate_valid(n, m, materialize=True).graphs or ():
        if derive_coloring(realize(g)) != g:
            logger.warning("Realization round trip changed %s", g.edges)
            return False
    return True


def _identifications(b: ColoredGraph, c: ColoredGraph) -> Iterator[dict[str, str]]:
    """Map the first ``j`` vertices of ``c`` onto every injective ``j``-tuple of ``b`` that agrees on colors."""
    for j in range(min(len(b), len(c)) + 1):
        head = c.vertices[:j]
        for image in itertools.permutations(b.vertices, j):
            if all(c.color(head[x], head[y]) == b.color(image[x], image[y]) for x, y in itertools.combinations(range(j), 2)):
                yield dict(zip(head, image, strict=True))


def verify_amalgamation_exhaustive(n: int, m: int) -> bool:
    """Amalgamate every pair of valid graphs up to ``n`` vertices over every compatible shared part.

    Each result must be valid and restrict exactly to both inputs. An empty
    shared part goes through the joint embedding.
    """
    if not 1 <= n <= 4 or not 1 <= m <= 3:
        raise BoundExceededError(f"amalgamation sweep needs n <= 4 and m <= 3, got n={n} m={m}")
    graphs = list(all_valid(n, m))
    checked = 0
    for first in graphs:
        b = rename(first, {v: f"x{v}" for v in first.vertices})
        for second in graphs:
            unshared = rename(second, {v: f"y{v}" for v in second.vertices})
            for shared in _identifications(b, unshared):
                c = rename(unshared, shared)
                checked += 1
                try:
                    result = amalgamate(b, c, set(shared.values()))
                except DcgError as e:
                    logger.warning("Amalgamation of %s and %s failed: %s", b.edges, c.edges, e)
                    return False
                if not validate(result).valid or induced(result, b.vertices) != b or induced(result, c.vertices) != c:
                    logger.warning("Amalgamation of %s and %s broke validity or restriction", b.edges, c.edges)
                    return False
    logger.info("Checked %d amalgamation instances for n<=%d m=%d", checked, n, m)
    return True


def verify_selector_singleton_exhaustive(n: int, m: int) -> bool:
    """Check that selectors with every color above the starting set's colors end with at most one vertex.

    Runs over every valid graph up to ``n`` vertices, every non-empty starting
    set and every maximal trace with colors from ``1..m`` plus one fresh color.
    """
    if not 1 <= n <= 4 or not 1 <= m <= 3:
        raise BoundExceededError(f"selector sweep needs n <= 4 and m <= 3, got n={n} m={m}")
    colors = list(range(1, m + 2))
    for g in all_valid(n, m):
        for size in range(1, len(g) + 1):
            for start in itertools.combinations(g.vertices, size):
                floor = max((g.color(u, w) for u, w in itertools.combinations(start, 2)), default=None)
                for trace in enumerate_traces(g, start, colors, floor=floor):
                    if len(trace.final) > 1:
                        logger.warning("Selector from %s on %s ended with %s", start, g.edges, trace.final)
                        return False
    return True
