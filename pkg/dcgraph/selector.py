"""Selectors and the selector-driven one-point extension.

A selector starts from a vertex set ``A0`` and repeatedly keeps the members
``u`` of the current set with ``f(u, v) = λ`` for a chosen member ``v`` and a
color ``λ`` above every color chosen before. It is *good* when it ends empty.

``extend_with_selector`` adds a vertex ``b`` over a whole graph: vertices told
apart from ``b`` by the min rule are colored first (the closure levels), and
the remaining agreement set ``W`` is colored by running a good selector on it
with every ``λ`` above the bound ``μ``.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from typing import Protocol

from dcgraph.amalgam import ExtensionType, check_extension, min_rule
from dcgraph.core import Color, ColoredGraph, add_vertex, fresh_above, palette, require_valid, to_color, validate
from dcgraph.errors import InconsistencyError, PreconditionError, StrategyError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SelectorStep:
    """One stage of a selector: ``survivors = Q(members, vertex, color)``."""

    members: tuple[str, ...]
    vertex: str
    color: Color
    survivors: tuple[str, ...]

    @property
    def leaving(self) -> tuple[str, ...]:
        """Members that do not survive this stage, the chosen vertex included."""
        kept = set(self.survivors)
        return tuple(u for u in self.members if u not in kept)


@dataclass(frozen=True)
class SelectorTrace:
    """A finite selector run from ``start`` down to ``final``."""

    start: tuple[str, ...]
    steps: tuple[SelectorStep, ...] = ()
    final: tuple[str, ...] = ()

    @property
    def good(self) -> bool:
        """True when the selector ended with the empty set."""
        return not self.final

    @property
    def classification(self) -> str:
        """``"good"`` or ``"bad"``."""
        return "good" if self.good else "bad"

    @property
    def colors(self) -> tuple[Color, ...]:
        """The chosen colors, in order."""
        return tuple(step.color for step in self.steps)


class SelectorStrategy(Protocol):
    """Chooses the next ``(vertex, color)`` of a selector, or None to stop."""

    def __call__(self, g: ColoredGraph, members: tuple[str, ...], steps: Sequence[SelectorStep], floor: Color | None) -> tuple[str, Color] | None:
        """Return the next choice for the current members."""
        ...


def _bound(steps: Sequence[SelectorStep], floor: Color | None) -> Color | None:
    candidates = [c for c in (floor, steps[-1].color if steps else None) if c is not None]
    return max(candidates, default=None)


def greedy_fresh(g: ColoredGraph, members: tuple[str, ...], steps: Sequence[SelectorStep], floor: Color | None) -> tuple[str, Color] | None:
    """Pick the least member and a color above everything in sight.

    No edge carries that color, so the selector empties after one step.
    """
    bound = _bound(steps, floor)
    return members[0], fresh_above([*palette(g), *([bound] if bound is not None else [])])


def stress(g: ColoredGraph, members: tuple[str, ...], steps: Sequence[SelectorStep], floor: Color | None) -> tuple[str, Color] | None:
    """Pick the least member and the least color it shares with another member above the bound.

    Falls back to a fresh color when no such color exists, so the run always
    ends good but usually takes several steps.
    """
    vertex = members[0]
    bound = _bound(steps, floor)
    shared = sorted({g.color(vertex, u) for u in members if u != vertex})
    above = [c for c in shared if bound is None or c > bound]
    if above:
        return vertex, above[0]
    return greedy_fresh(g, members, steps, floor)


STRATEGIES: dict[str, SelectorStrategy] = {"greedy": greedy_fresh, "stress": stress}


def strategy_by_name(name: str) -> SelectorStrategy:
    """Look up a built-in strategy by its CLI name."""
    try:
        return STRATEGIES[name]
    except KeyError:
        raise PreconditionError(f"unknown strategy {name!r}, expected one of {', '.join(sorted(STRATEGIES))}") from None


def selector_step(g: ColoredGraph, members: Iterable[str], vertex: str, color: object) -> tuple[str, ...]:
    """Return the members ``u != vertex`` with ``f(u, vertex) = color``, sorted."""
    chosen = set(members)
    if vertex not in chosen:
        raise PreconditionError(f"{vertex!r} is not among the current members")
    unknown = chosen - set(g.vertices)
    if unknown:
        raise PreconditionError(f"members not in graph: {', '.join(sorted(unknown))}")
    color = to_color(color)
    return tuple(sorted(u for u in chosen if u != vertex and g.color(u, vertex) == color))


def run_selector(g: ColoredGraph, start: Iterable[str], strategy: SelectorStrategy, *, floor: Color | None = None) -> SelectorTrace:
    """Run a selector from ``start`` until it empties or the strategy stops.

    Args:
        g: The graph the selector runs on.
        start: The non-empty starting set ``A0``.
        strategy: Supplies each ``(vertex, color)``.
        floor: If given, every color must lie strictly above it.

    Raises:
        StrategyError: if the strategy picks a non-member or a color that does
            not increase (or does not clear ``floor``).

    """
    members = tuple(sorted(set(start)))
    if not members:
        raise PreconditionError("a selector needs a non-empty starting set")
    unknown = set(members) - set(g.vertices)
    if unknown:
        raise PreconditionError(f"starting set not in graph: {', '.join(sorted(unknown))}")
    origin = members
    steps: list[SelectorStep] = []
    while members:
        choice = strategy(g, members, tuple(steps), floor)
        if choice is None:
            break
        vertex, raw = choice
        color = to_color(raw)
        if vertex not in members:
            raise StrategyError(f"strategy chose {vertex!r}, which is not a current member")
        if steps and color <= steps[-1].color:
            raise StrategyError(f"strategy chose {color}, not above the previous {steps[-1].color}")
        if floor is not None and color <= floor:
            raise StrategyError(f"strategy chose {color}, not above the floor {floor}")
        survivors = selector_step(g, members, vertex, color)
        logger.debug("selector step %d: v=%s λ=%s |A|=%d -> %d", len(steps), vertex, color, len(members), len(survivors))
        steps.append(SelectorStep(members, vertex, color, survivors))
        members = survivors
    return SelectorTrace(origin, tuple(steps), members)


def selector_equivalent(first: SelectorTrace, second: SelectorTrace) -> bool:
    """Two selectors are equivalent when they end with the same set."""
    return set(first.final) == set(second.final)


def survivor(trace: SelectorTrace) -> str | None:
    """Return the single vertex a bad trace ends with, or None."""
    return trace.final[0] if len(trace.final) == 1 else None


def enumerate_traces(g: ColoredGraph, start: Iterable[str], colors: Iterable[object], *, floor: Color | None = None) -> Iterator[SelectorTrace]:
    """Yield every maximal trace whose colors come from ``colors``.

    A trace is maximal when its set is empty or no color above the last one
    is left to choose.
    """
    choices = sorted({to_color(c) for c in colors})
    origin = tuple(sorted(set(start)))

    def grow(members: tuple[str, ...], steps: tuple[SelectorStep, ...]) -> Iterator[SelectorTrace]:
        bound = _bound(steps, floor)
        options = [c for c in choices if bound is None or c > bound]
        if not members or not options:
            yield SelectorTrace(origin, steps, members)
            return
        for vertex in members:
            for color in options:
                survivors = tuple(u for u in members if u != vertex and g.color(u, vertex) == color)
                yield from grow(survivors, (*steps, SelectorStep(members, vertex, color, survivors)))

    yield from grow(origin, ())


@dataclass(frozen=True)
class ExtensionPlan:
    """Everything ``extend_with_selector`` decides before it builds the new graph.

    Attributes:
        new_vertex: The vertex ``b`` being added.
        closure_levels: ``V0 ⊆ V1 ⊆ ...``, each level a sorted tuple, up to the fixpoint.
        closure_colors: ``(v, f(b, v))`` for every ``v`` in the last level.
        agreement: ``W``, the vertices no closure level reaches.
        mu: The bound every color on ``W`` has to clear.
        mu_closure: The maximum of ``f(b, v)`` over the whole closure.
        trace: The good selector run on ``W``.

    """

    new_vertex: str
    closure_levels: tuple[tuple[str, ...], ...]
    closure_colors: tuple[tuple[str, Color], ...]
    agreement: tuple[str, ...]
    mu: Color
    mu_closure: Color
    trace: SelectorTrace

    @property
    def base(self) -> tuple[str, ...]:
        """``V0``, the base of the extension type."""
        return self.closure_levels[0]

    @property
    def closure(self) -> tuple[str, ...]:
        """``Vω``, the fixpoint of the closure levels."""
        return self.closure_levels[-1]


def plan_extension(g: ColoredGraph, t: ExtensionType, strategy: SelectorStrategy | None = None) -> ExtensionPlan:
    """Work out the closure levels, ``W``, ``μ`` and a good selector for adding ``t.new_vertex``.

    Raises:
        PreconditionError: if ``g`` is invalid or ``t`` does not fit.
        InconsistencyError: if the min rule is ambiguous.
        StrategyError: if the strategy does not produce a good trace on ``W``.

    """
    require_valid(g)
    check_extension(g, t)
    strategy = strategy or greedy_fresh
    assigned = t.color_map
    levels = [tuple(sorted(assigned))]
    while True:
        current = levels[-1]
        entering = {}
        for v in sorted(set(g.vertices) - set(assigned)):
            color = min_rule(g, assigned, v, current)
            if color is not None:
                entering[v] = color
        if not entering:
            break
        assigned.update(entering)
        levels.append(tuple(sorted(assigned)))
        logger.debug("closure level %d adds %s", len(levels) - 1, sorted(entering))

    agreement = tuple(sorted(set(g.vertices) - set(assigned)))
    mu_base = max(t.color_map.values())
    mu_closure = max(assigned.values())
    if mu_closure != mu_base:
        logger.warning("Bound over the closure (%s) differs from the bound over the base (%s); using the larger", mu_closure, mu_base)
    mu = max(mu_base, mu_closure)

    trace = run_selector(g, agreement, strategy, floor=mu) if agreement else SelectorTrace(())
    if not trace.good:
        raise StrategyError(f"selector on W ended with {', '.join(trace.final)} left over")
    return ExtensionPlan(t.new_vertex, tuple(levels), tuple(sorted(assigned.items())), agreement, mu, mu_closure, trace)


def materialize(g: ColoredGraph, plan: ExtensionPlan) -> ColoredGraph:
    """Build ``g`` plus the planned vertex.

    Each chosen vertex ``v`` gets ``f(b, v) = λ`` of its stage; every other
    vertex ``w`` leaving at that stage gets ``min{f(w, v), λ}``.
    """
    colors: dict[str, Color] = dict(plan.closure_colors)
    for step in plan.trace.steps:
        colors[step.vertex] = step.color
        for w in step.leaving:
            if w != step.vertex:
                colors[w] = min(g.color(w, step.vertex), step.color)
    result = add_vertex(g, plan.new_vertex, colors)
    report = validate(result)
    if not report.valid:
        bad = report.violations[0]
        logger.error("Selector extension of %s is invalid at %s", plan.new_vertex, bad.vertices)
        raise InconsistencyError(f"extension by {plan.new_vertex!r} breaks the triangle law at {' '.join(bad.vertices)}")
    return result


def extend_with_selector(g: ColoredGraph, t: ExtensionType, strategy: SelectorStrategy | None = None) -> ColoredGraph:
    """Add ``t.new_vertex`` to ``g`` through the closure levels and a good selector on ``W``."""
    return materialize(g, plan_extension(g, t, strategy))


def extend_structure(g: ColoredGraph, extension: ColoredGraph, strategy: SelectorStrategy | None = None) -> ColoredGraph:
    """Embed a whole extension of a subgraph of ``g`` into an extension of ``g``.

    The vertices of ``extension`` that ``g`` lacks are added one at a time in
    name order, each by ``extend_with_selector`` with its colors towards the
    shared part and the vertices added before it.
    """
    shared = set(g.vertices) & set(extension.vertices)
    if not shared:
        raise PreconditionError("the extension shares no vertex with the graph")
    for a in shared:
        for b in shared:
            if a < b and g.color(a, b) != extension.color(a, b):
                raise PreconditionError(f"edge {a} {b} differs between the graph and the extension")
    result = g
    placed = sorted(shared)
    for vertex in sorted(set(extension.vertices) - shared):
        result = extend_with_selector(result, ExtensionType.of(vertex, {a: extension.color(a, vertex) for a in placed}), strategy)
        placed.append(vertex)
    return result

