"""Finite stages of the generic (limit) structure and checks of its defining properties.

Property (I) asks that every induced subgraph be valid. Property (II) asks
that every one-point extension type over a small base be realized by some
vertex outside the base. A finite graph can only satisfy (II) for a bounded
base size and a fixed set of colors, which is what the checker and the
builder here work with.
"""

from __future__ import annotations

import itertools
import logging
import random
from collections.abc import Callable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass

from dcgraph.amalgam import ExtensionType
from dcgraph.core import Color, ColoredGraph, fresh_above, induced, require_valid, to_color, validate
from dcgraph.errors import BudgetExhaustedError, PreconditionError
from dcgraph.selector import SelectorStrategy, extend_with_selector

logger = logging.getLogger(__name__)

PLACEHOLDER = "new"


@dataclass(frozen=True)
class GenericityReport:
    """Outcome of a bounded check of property (II).

    Attributes:
        k: The largest base size checked.
        palette: The colors extension types were drawn from.
        missing: Every extension type no vertex realizes, in check order.
        checked: How many (base, type) pairs were examined.
        vacuous: True when there was no base to check at all.

    """

    k: int
    palette: tuple[Color, ...]
    missing: tuple[ExtensionType, ...] = ()
    checked: int = 0
    vacuous: bool = False

    @property
    def passed(self) -> bool:
        """True when every examined type is realized."""
        return not self.missing


def check_property_I(g: ColoredGraph) -> bool:  # noqa: N802
    """Return True if every induced subgraph of ``g`` is valid.

    Validity is hereditary, so this is the same as ``g`` itself being valid.
    """
    return validate(g).valid


def augmented_palette(colors: Iterable[object]) -> list[Color]:
    """Add a midpoint between each consecutive pair and one color above the top."""
    ordered = sorted({to_color(c) for c in colors})
    result = list(ordered)
    result.extend((low + high) / 2 for low, high in itertools.pairwise(ordered))
    result.append(fresh_above(ordered))
    return sorted(result)


def placeholder_name(g: ColoredGraph, stem: str = PLACEHOLDER) -> str:
    """Return ``stem`` or ``stem1``, ``stem2``, ... whichever is not a vertex of ``g``."""
    name, counter = stem, 0
    while name in g.vertices:
        counter += 1
        name = f"{stem}{counter}"
    return name


def enumerate_extensions(g: ColoredGraph, base: Iterable[str], colors: Sequence[object], *, augment: bool = True) -> list[ExtensionType]:
    """List every valid one-point extension type over ``base``.

    Args:
        g: The graph holding the base.
        base: A non-empty subset of the vertices of ``g``.
        colors: The palette types draw their colors from.
        augment: Also draw from a midpoint between consecutive colors and one
            color above the top, so every order position of a new color has a
            representative.

    Returns:
        The types in product order over the sorted base, without duplicates.

    """
    chosen = sorted(set(base))
    if not chosen:
        raise PreconditionError("extension types need a non-empty base")
    sub = induced(g, chosen)
    choices = augmented_palette(colors) if augment else sorted({to_color(c) for c in colors})
    name = placeholder_name(g)
    found = []
    for combo in itertools.product(choices, repeat=len(chosen)):
        t = ExtensionType(name, tuple(zip(chosen, combo, strict=True)))
        if t.fits(sub):
            found.append(t)
    return found


def is_realized(g: ColoredGraph, t: ExtensionType) -> bool:
    """Return True if some vertex outside the base has exactly the colors of ``t`` towards it."""
    return any(t.realized_by(g, w) for w in g.vertices)


def check_property_II(g: ColoredGraph, k: int, colors: Sequence[object], *, augment: bool = True) -> GenericityReport:  # noqa: N802
    """Check that every extension type over a base of at most ``k`` vertices is realized in ``g``.

    With ``augment`` the types range over the midpoint/fresh-augmented
    palette; without it only over ``colors`` themselves, which is what the
    builder can reach.
    """
    require_valid(g)
    if k < 0:
        raise PreconditionError("size bound must not be negative")
    missing = []
    checked = 0
    for size in range(1, min(k, len(g)) + 1):
        for base in itertools.combinations(g.vertices, size):
            for t in enumerate_extensions(g, base, colors, augment=augment):
                checked += 1
                if not is_realized(g, t):
                    missing.append(t)
    vacuous = k == 0
    return GenericityReport(k, tuple(sorted({to_color(c) for c in colors})), tuple(missing), checked, vacuous)


class VertexNamer:
    """Hands out vertex names for the builder.

    Without a seed names are ``v0000``, ``v0001``, ...; with a seed they are
    random hex tokens, which changes the name order the algorithms follow.
    """

    def __init__(self, seed: int | None = None) -> None:
        """Initialize the namer, optionally seeding a private random generator."""
        self.seed = seed
        self.counter = 0
        self.rng = random.Random(seed) if seed is not None else None  # nosec

    def next_name(self, taken: Iterable[str] = ()) -> str:
        """Return a name not in ``taken``."""
        used = set(taken)
        while True:
            if self.rng is None:
                name = f"v{self.counter:04d}"
                self.counter += 1
            else:
                name = f"x{self.rng.getrandbits(32):08x}"
            if name not in used:
                return name


def build_generic(
    colors: Sequence[object],
    k: int,
    max_rounds: int | None = None,
    *,
    seed: int | None = None,
    strategy: SelectorStrategy | None = None,
    rounds_factor: int = 10,
    on_repair: Callable[[ColoredGraph, ColoredGraph, ExtensionType], None] | None = None,
) -> ColoredGraph:
    """Grow a graph until every type over bases of at most ``k`` vertices is realized.

    Each round scans the deficits of ``check_property_II`` with the fixed
    palette and repairs them in order (base size, base, type) by
    ``extend_with_selector``, skipping those an earlier repair of the same
    round has realized.

    Args:
        colors: The fixed palette, non-empty.
        k: The base size bound, at least 1.
        max_rounds: Round budget; defaults to ``rounds_factor`` times the initial deficit.
        seed: Vertex naming seed, see ``VertexNamer``.
        strategy: Selector strategy for the repairs.
        rounds_factor: Multiplier for the default budget.
        on_repair: Called after every repair with the graph before it, the
            graph after it and the type it targeted.

    Raises:
        BudgetExhaustedError: if deficits remain after ``max_rounds`` rounds.

    """
    fixed = sorted({to_color(c) for c in colors})
    if not fixed:
        raise PreconditionError("build_generic needs a non-empty palette")
    if k < 1:
        raise PreconditionError("build_generic needs k >= 1")
    namer = VertexNamer(seed)
    g = ColoredGraph((namer.next_name(),))
    report = check_property_II(g, k, fixed, augment=False)
    budget = max_rounds if max_rounds is not None else rounds_factor * max(len(report.missing), 1)
    rounds = 0
    while not report.passed:
        if rounds >= budget:
            logger.error("Budget of %d rounds exhausted with %d deficits left", budget, len(report.missing))
            raise BudgetExhaustedError(f"{len(report.missing)} extension types still unrealized after {budget} rounds", g, len(report.missing))
        rounds += 1
        for t in report.missing:
            if is_realized(g, t):
                continue
            name = namer.next_name(g.vertices)
            before = g
            g = extend_with_selector(g, ExtensionType(name, t.colors), strategy)
            if on_repair is not None:
                on_repair(before, g, t)
            logger.debug("round %d: added %s for base %s", rounds, name, ",".join(t.base))
        report = check_property_II(g, k, fixed, augment=False)
        logger.info("Round %d: %d vertices, %d deficits left", rounds, len(g), len(report.missing))
    return g


def _check_partial_map(g1: ColoredGraph, g2: ColoredGraph, p: Mapping[str, str]) -> None:
    if len(set(p.values())) != len(p):
        raise PreconditionError("partial map is not injective")
    for a, b in p.items():
        if a not in g1.vertices or b not in g2.vertices:
            raise PreconditionError(f"partial map pair {a}->{b} leaves the graphs")
    for a, c in itertools.combinations(p, 2):
        if g1.color(a, c) != g2.color(p[a], p[c]):
            raise PreconditionError(f"partial map does not preserve the color of {a} {c}")


def extension_candidates(g1: ColoredGraph, g2: ColoredGraph, p: Mapping[str, str], vertex: str, *, back: bool = False) -> Iterator[dict[str, str]]:
    """Yield every color-preserving extension of ``p`` that answers a challenge at ``vertex``.

    ``vertex`` lies in ``g1`` (forth) or in ``g2`` (``back=True``). Answers
    come in name order.
    """
    if back:
        inverse = {b: a for a, b in p.items()}
        for q in extension_candidates(g2, g1, inverse, vertex):
            yield {a: b for b, a in q.items()}
        return
    if vertex not in g1.vertices:
        raise PreconditionError(f"challenge {vertex!r} is not a vertex")
    if vertex in p:
        yield dict(p)
        return
    image = set(p.values())
    for answer in g2.vertices:
        if answer in image:
            continue
        if all(g2.color(answer, p[a]) == g1.color(vertex, a) for a in p):
            yield {**p, vertex: answer}


def one_step_back_and_forth(g1: ColoredGraph, g2: ColoredGraph, p: Mapping[str, str], vertex: str, *, back: bool = False) -> dict[str, str] | None:
    """Extend the partial isomorphism ``p`` to cover a challenge vertex.

    Returns:
        The extension with the least answer, or None if no answer exists.

    """
    require_valid(g1, "first graph")
    require_valid(g2, "second graph")
    _check_partial_map(g1, g2, p)
    return next(extension_candidates(g1, g2, p, vertex, back=back), None)


def certify_back_and_forth(g1: ColoredGraph, g2: ColoredGraph, depth: int, p: Mapping[str, str] | None = None) -> bool:
    """Decide whether every challenge sequence of length ``depth`` can be answered from ``p``."""
    require_valid(g1, "first graph")
    require_valid(g2, "second graph")
    start = dict(p or {})
    _check_partial_map(g1, g2, start)

    def answerable(current: dict[str, str], remaining: int) -> bool:
        if remaining == 0:
            return True
        for graph, back in ((g1, False), (g2, True)):
            for vertex in graph.vertices:
                if not any(answerable(q, remaining - 1) for q in extension_candidates(g1, g2, current, vertex, back=back)):
                    logger.debug("no answer to %s challenge %s from %s", "back" if back else "forth", vertex, current)
                    return False
        return True

    return answerable(start, depth)
