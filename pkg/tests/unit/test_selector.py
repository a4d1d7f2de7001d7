"""Tests for selectors and the selector-driven extension."""

import itertools
import random
from collections import defaultdict

import pytest

from dcgraph.amalgam import ExtensionType, glue_vertex
from dcgraph.core import ColoredGraph, induced, palette, validate
from dcgraph.errors import PreconditionError, StrategyError
from dcgraph.generic import build_generic, enumerate_extensions
from dcgraph.oracle import all_valid
from dcgraph.selector import (
    enumerate_traces,
    extend_structure,
    extend_with_selector,
    greedy_fresh,
    materialize,
    plan_extension,
    run_selector,
    selector_equivalent,
    selector_step,
    strategy_by_name,
    stress,
    survivor,
)
from tests.unit.graphs import make_graph, random_graph


@pytest.fixture
def chain() -> ColoredGraph:
    """Four vertices nested by colors 1 < 2 < 3."""
    return make_graph("abcd", {"ab": 3, "ac": 2, "bc": 2, "ad": 1, "bd": 1, "cd": 1})


def test_selector_step(chain):
    """Survivors are the members joined to the chosen vertex by the chosen color."""
    assert selector_step(chain, ["a", "b", "c", "d"], "d", 1) == ("a", "b", "c")
    assert selector_step(chain, ["a", "b", "c"], "c", 2) == ("a", "b")
    with pytest.raises(PreconditionError):
        selector_step(chain, ["a", "b"], "c", 2)


def test_stress_strategy_reuses_existing_colors(chain):
    """Stress picks the least shared color above the bound before falling back to a fresh one."""
    trace = run_selector(chain, chain.vertices, stress)
    assert trace.colors == (1, 4)
    assert [step.vertex for step in trace.steps] == ["a", "d"]
    assert trace.good
    assert trace.classification == "good"


def test_greedy_strategy_empties_at_once(chain):
    """A fresh color has no edge, so one step empties the set."""
    trace = run_selector(chain, chain.vertices, greedy_fresh)
    assert len(trace.steps) == 1
    assert trace.steps[0].color == 4
    assert trace.final == ()


def test_bad_selector_keeps_a_survivor(chain):
    """A strategy that stops early leaves a bad trace with a single survivor."""

    def one_step(g, members, steps, floor):
        return None if steps else ("d", 1)

    trace = run_selector(chain, chain.vertices, one_step)
    assert trace.final == ("a", "b", "c")
    assert trace.classification == "bad"
    assert survivor(trace) is None

    def three_steps(g, members, steps, floor):
        return [("d", 1), ("c", 2), ("b", 3)][len(steps)] if len(steps) < 3 else None

    trace = run_selector(chain, chain.vertices, three_steps)
    assert trace.final == ("a",)
    assert survivor(trace) == "a"


def test_strategy_contract_is_enforced(chain):
    """Non-members, non-increasing colors and colors below the floor are strategy errors."""
    with pytest.raises(StrategyError, match="not a current member"):
        run_selector(chain, ["a", "b"], lambda g, m, s, f: ("d", 5))
    with pytest.raises(StrategyError, match="not above the previous"):
        run_selector(chain, chain.vertices, lambda g, m, s, f: (m[0], 1))
    with pytest.raises(StrategyError, match="floor"):
        run_selector(chain, chain.vertices, lambda g, m, s, f: (m[0], 1), floor=2)


def test_run_selector_preconditions(chain):
    """The starting set must be non-empty and inside the graph."""
    with pytest.raises(PreconditionError):
        run_selector(chain, [], greedy_fresh)
    with pytest.raises(PreconditionError):
        run_selector(chain, ["z"], greedy_fresh)


def test_strategy_by_name():
    """Built-in strategies are looked up by name."""
    assert strategy_by_name("greedy") is greedy_fresh
    assert strategy_by_name("stress") is stress
    with pytest.raises(PreconditionError, match="unknown strategy"):
        strategy_by_name("random")


def test_enumerate_traces_and_equivalence(chain):
    """Different choices can reach the same final set; bad finals are single vertices above the start colors."""
    traces = list(enumerate_traces(chain, chain.vertices, [1, 2, 3]))
    assert all(trace.colors == tuple(sorted(trace.colors)) for trace in traces)
    finals = {trace.final for trace in traces}
    assert () in finals
    assert ("a",) in finals
    first = next(t for t in traces if t.final == ("a",))
    second = next(t for t in traces if t.final == ("a",) and t is not first)
    assert selector_equivalent(first, second)


def _assert_divergent_finals_disjoint(traces) -> None:
    """Traces that agree up to a stage and pick the same vertex there but different colors end apart."""
    branches = defaultdict(lambda: defaultdict(set))
    for trace in traces:
        for index, step in enumerate(trace.steps):
            prefix = tuple((s.vertex, s.color) for s in trace.steps[:index])
            branches[prefix, step.vertex][step.color].update(trace.final)
    for by_color in branches.values():
        finals = list(by_color.values())
        assert sum(len(f) for f in finals) == len(set().union(*finals))


def test_divergent_traces_have_disjoint_finals(chain):
    """Changing only the color at one stage sends the traces to disjoint finals."""
    traces = list(enumerate_traces(chain, chain.vertices, [1, 2, 3, 4]))
    _assert_divergent_finals_disjoint(traces)
    bad = [t for t in enumerate_traces(chain, chain.vertices, [1, 2, 3]) if not t.good]
    for first in bad:
        for second in bad:
            if not selector_equivalent(first, second):
                assert not set(first.final) & set(second.final)


@pytest.mark.slow
def test_divergent_traces_have_disjoint_finals_on_all_small_graphs():
    """The same holds for every start set of every valid graph on up to four vertices over three colors."""
    for g in all_valid(4, 3):
        for size in range(1, len(g) + 1):
            for start in itertools.combinations(g.vertices, size):
                _assert_divergent_finals_disjoint(enumerate_traces(g, start, [1, 2, 3, 4]))


def test_plan_extension_closure_and_agreement(chain):
    """Closure levels grow by the min rule; the rest is the agreement set."""
    plan = plan_extension(chain, ExtensionType.of("e", {"d": 2}))
    assert plan.base == ("d",)
    assert plan.closure_levels == (("d",), ("a", "b", "c", "d"))
    assert plan.agreement == ()
    assert plan.mu == 2


def test_plan_extension_with_agreement_set(chain):
    """Vertices nothing tells apart from the new one get colors above the bound."""
    plan = plan_extension(chain, ExtensionType.of("e", {"d": 1}))
    assert plan.agreement == ("a", "b", "c")
    assert plan.mu == 1
    result = materialize(chain, plan)
    assert validate(result).valid
    assert all(result.color("e", w) > plan.mu for w in plan.agreement)


def test_extend_with_stress_uses_several_steps(chain):
    """Stress colors the agreement set through existing colors above the bound."""
    t = ExtensionType.of("e", {"d": 1})
    plan = plan_extension(chain, t, stress)
    assert plan.trace.colors == (2, 4)
    result = materialize(chain, plan)
    assert result.colors_from("e") == {"a": 2, "b": 2, "c": 4, "d": 1}
    assert induced(result, chain.vertices) == chain
    assert validate(result).valid


def test_extend_with_selector_needs_good_trace(chain):
    """A strategy that stops leaves W uncovered."""
    with pytest.raises(StrategyError, match="left over"):
        plan_extension(chain, ExtensionType.of("e", {"d": 1}), lambda g, m, s, f: None)


def test_extend_structure(triangle):
    """A whole extension of a subgraph is embedded vertex by vertex."""
    extension = make_graph("axy", {"ax": 5, "ay": 5, "xy": 6})
    result = extend_structure(triangle, extension)
    assert induced(result, triangle.vertices) == triangle
    assert induced(result, extension.vertices) == extension
    assert validate(result).valid
    with pytest.raises(PreconditionError):
        extend_structure(triangle, make_graph("xy", {"xy": 1}))


@pytest.mark.slow
def test_random_extensions_over_generic_graphs():
    """Randomized extensions keep validity, restriction, the W bound and the base maximum."""
    rng = random.Random(7)
    graphs = [build_generic(range(1, top + 1), 1) for top in (2, 3, 4, 5)]
    assert max(len(g) for g in graphs) <= 40
    for index in range(1000):
        g = rng.choice(graphs)
        base = rng.sample(g.vertices, rng.randint(1, min(3, len(g))))
        choices = enumerate_extensions(g, base, palette(g))
        t = rng.choice(choices)
        t = ExtensionType(f"new{index}", t.colors)
        plan = plan_extension(g, t, rng.choice([greedy_fresh, stress]))
        result = materialize(g, plan)
        assert validate(result).valid
        assert induced(result, g.vertices) == g
        assert all(result.color(t.new_vertex, w) > plan.mu for w in plan.agreement)
        assert max(t.color_map.values()) == plan.mu_closure


@pytest.mark.slow
def test_selector_extension_and_gluing_both_realize_the_type():
    """On the same graph and type, both constructions give valid graphs that restrict to the original."""
    rng = random.Random(23)
    for index in range(300):
        g = random_graph(rng, 12, 6)
        base = rng.sample(g.vertices, rng.randint(1, min(3, len(g))))
        t = rng.choice(enumerate_extensions(g, base, palette(g)))
        t = ExtensionType(f"new{index}", t.colors)
        for result in (extend_with_selector(g, t, stress), extend_with_selector(g, t), glue_vertex(g, t)):
            assert validate(result).valid
            assert induced(result, g.vertices) == g
            assert t.realized_by(result, t.new_vertex)
