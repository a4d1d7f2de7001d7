"""Tests for genericity checks, the generic builder and back-and-forth."""

import itertools
from fractions import Fraction

import pytest

from dcgraph.amalgam import ExtensionType
from dcgraph.core import ColoredGraph, induced, is_valid, palette
from dcgraph.errors import BudgetExhaustedError, PreconditionError
from dcgraph.generic import (
    VertexNamer,
    augmented_palette,
    build_generic,
    certify_back_and_forth,
    check_property_I,
    check_property_II,
    enumerate_extensions,
    is_realized,
    one_step_back_and_forth,
    placeholder_name,
)
from dcgraph.selector import stress
from tests.unit.graphs import make_graph


@pytest.fixture
def edge() -> ColoredGraph:
    """Two vertices joined by color 1."""
    return make_graph("ab", {"ab": 1})


def test_check_property_I(triangle, bad_triangle):
    """Property (I) is validity of the graph itself."""
    assert check_property_I(triangle)
    assert not check_property_I(bad_triangle)


def test_augmented_palette():
    """Midpoints and one color above the top are added."""
    assert augmented_palette([2, 1]) == [1, Fraction(3, 2), 2, 3]
    assert augmented_palette([2]) == [2, 3]


def test_placeholder_name_avoids_existing_vertices():
    """The placeholder gets a numeric suffix when taken."""
    assert placeholder_name(make_graph("ab", {"ab": 1})) == "new"
    g = ColoredGraph.from_colors(["new", "new1"], {("new", "new1"): 1})
    assert placeholder_name(g) == "new2"


def test_enumerate_extensions_single_vertex_base():
    """One base vertex takes every color of the augmented palette."""
    types = enumerate_extensions(ColoredGraph(("a",)), ["a"], [1, 2])
    assert [t.color_map["a"] for t in types] == [1, Fraction(3, 2), 2, 3]
    assert all(t.new_vertex == "new" for t in types)


def test_enumerate_extensions_keeps_only_valid_types(edge):
    """Types breaking the law on the base are dropped."""
    assert enumerate_extensions(edge, ["a", "b"], [1], augment=False) == []
    types = enumerate_extensions(edge, ["b", "a"], [1, 2], augment=False)
    assert [t.color_map for t in types] == [{"a": 1, "b": 2}, {"a": 2, "b": 1}]
    with pytest.raises(PreconditionError):
        enumerate_extensions(edge, [], [1])


def test_is_realized(triangle):
    """A vertex outside the base with the same colors realizes a type."""
    assert is_realized(triangle, ExtensionType.of("new", {"a": 1, "b": 1}))
    assert not is_realized(triangle, ExtensionType.of("new", {"a": 2, "b": 2}))


def test_check_property_II_on_an_edge(edge):
    """An edge realizes every fixed-palette type but misses the fresh color."""
    report = check_property_II(edge, 1, [1])
    assert not report.passed
    assert report.checked == 4
    assert [t.color_map for t in report.missing] == [{"a": 2}, {"b": 2}]
    fixed = check_property_II(edge, 1, [1], augment=False)
    assert fixed.passed
    assert fixed.checked == 2


def test_check_property_II_k_zero_is_vacuous(edge):
    """No base is examined for k = 0."""
    report = check_property_II(edge, 0, [1])
    assert report.vacuous
    assert report.passed
    assert report.checked == 0


def test_check_property_II_preconditions(edge, bad_triangle):
    """Negative bounds and invalid graphs are refused."""
    with pytest.raises(PreconditionError):
        check_property_II(edge, -1, [1])
    with pytest.raises(PreconditionError):
        check_property_II(bad_triangle, 1, [1])


def test_vertex_namer():
    """Unseeded names count up; seeded names are reproducible tokens."""
    namer = VertexNamer()
    assert [namer.next_name(), namer.next_name()] == ["v0000", "v0001"]
    assert VertexNamer().next_name(["v0000"]) == "v0001"
    first, second = VertexNamer(5), VertexNamer(5)
    assert first.next_name() == second.next_name()
    assert first.next_name().startswith("x")


def test_build_generic_single_color():
    """One color and k = 1 give a single edge."""
    g = build_generic([1], 1)
    assert g.vertices == ("v0000", "v0001")
    assert g.color("v0000", "v0001") == 1
    assert check_property_II(g, 1, [1], augment=False).passed
    assert not check_property_II(g, 1, [1]).passed


@pytest.mark.parametrize("top", [2, 3, 4, 5])
def test_build_generic_k1_is_a_full_binary_tree(top):
    """With k = 1 every vertex needs a partner at every color, giving 2^m vertices."""
    g = build_generic(range(1, top + 1), 1)
    assert len(g) == 2**top
    assert is_valid(g)
    assert palette(g) == list(range(1, top + 1))


def test_build_generic_k2_stays_inside_the_palette():
    """Repairs reuse the palette, so three colors allow at most eight vertices."""
    g = build_generic([1, 2, 3], 2)
    assert is_valid(g)
    assert len(g) <= 8
    assert set(palette(g)) <= {1, 2, 3}
    assert check_property_II(g, 2, [1, 2, 3], augment=False).passed


def test_build_generic_with_stress_strategy():
    """The repair strategy does not change the outcome's genericity."""
    g = build_generic([1, 2], 2, strategy=stress)
    assert check_property_II(g, 2, [1, 2], augment=False).passed


def _deficit(g: ColoredGraph, vertices, k: int, colors) -> int:
    """Count fixed-palette types over bases drawn from ``vertices`` that ``g`` leaves unrealized."""
    ordered = sorted(vertices)
    return sum(
        not is_realized(g, t)
        for size in range(1, min(k, len(ordered)) + 1)
        for base in itertools.combinations(ordered, size)
        for t in enumerate_extensions(g, base, colors, augment=False)
    )


@pytest.mark.parametrize(("colors", "k", "strategy"), [([1, 2, 3], 2, None), ([1, 2, 3, 4], 1, None), ([1, 2], 2, stress)])
def test_each_repair_extends_the_graph_and_lowers_the_deficit(colors, k, strategy):
    """Every repair keeps the graph valid, extends the old one and realizes at least one old deficit."""
    repairs = []
    g = build_generic(colors, k, strategy=strategy, on_repair=lambda before, after, t: repairs.append((before, after, t)))
    assert repairs
    assert repairs[-1][1] == g
    for before, after, t in repairs:
        assert is_valid(after)
        assert len(after) == len(before) + 1
        assert induced(after, before.vertices) == before
        assert is_realized(after, t)
        assert _deficit(after, before.vertices, k, colors) < _deficit(before, before.vertices, k, colors)


def test_build_generic_budget():
    """A zero budget fails with the partial graph and its deficit."""
    with pytest.raises(BudgetExhaustedError) as excinfo:
        build_generic([1, 2], 1, max_rounds=0)
    assert len(excinfo.value.graph) == 1
    assert excinfo.value.deficit == 2


def test_build_generic_preconditions():
    """An empty palette or k below 1 is refused."""
    with pytest.raises(PreconditionError):
        build_generic([], 1)
    with pytest.raises(PreconditionError):
        build_generic([1], 0)


def test_one_step_back_and_forth(triangle):
    """Challenges are answered by the least vertex that keeps the colors."""
    assert one_step_back_and_forth(triangle, triangle, {}, "a") == {"a": "a"}
    assert one_step_back_and_forth(triangle, triangle, {"a": "a"}, "b") == {"a": "a", "b": "b"}
    assert one_step_back_and_forth(triangle, triangle, {"a": "a"}, "c", back=True) == {"a": "a", "c": "c"}
    assert one_step_back_and_forth(triangle, triangle, {"a": "b"}, "a") == {"a": "b"}


def test_one_step_back_and_forth_without_answer(triangle):
    """A color missing on the other side leaves the challenge unanswered."""
    shifted = make_graph("abc", {"ab": 3, "ac": 1, "bc": 1})
    assert one_step_back_and_forth(triangle, shifted, {"a": "a"}, "b") is None


def test_one_step_back_and_forth_checks_the_map(triangle):
    """The starting map must be a color-preserving injection."""
    with pytest.raises(PreconditionError, match="preserve"):
        one_step_back_and_forth(triangle, triangle, {"a": "a", "b": "c"}, "c")
    with pytest.raises(PreconditionError, match="injective"):
        one_step_back_and_forth(triangle, triangle, {"a": "a", "b": "a"}, "c")
    with pytest.raises(PreconditionError):
        one_step_back_and_forth(triangle, triangle, {}, "z")


def test_certify_back_and_forth(triangle):
    """Isomorphic graphs survive any depth; a color clash fails at depth 2."""
    shifted = make_graph("abc", {"ab": 3, "ac": 1, "bc": 1})
    assert certify_back_and_forth(triangle, triangle, 3)
    assert certify_back_and_forth(triangle, shifted, 1)
    assert not certify_back_and_forth(triangle, shifted, 2)


def test_generic_graphs_from_different_seeds_are_equivalent():
    """Two builds with different names play a depth-2 game to the end."""
    g1 = build_generic([1, 2], 1, seed=1)
    g2 = build_generic([1, 2], 1, seed=2)
    assert set(g1.vertices).isdisjoint(g2.vertices)
    assert certify_back_and_forth(g1, g2, 2)


@pytest.mark.slow
def test_seeded_builds_for_three_colors_are_equivalent():
    """Palette 1..3 with k = 2 passes its check under two seeds, and the results agree to depth 2."""
    g1 = build_generic([1, 2, 3], 2, seed=11)
    g2 = build_generic([1, 2, 3], 2, seed=12)
    for g in (g1, g2):
        assert check_property_II(g, 2, [1, 2, 3], augment=False).passed
    assert one_step_back_and_forth(g1, g2, {}, g1.vertices[0]) is not None
    assert certify_back_and_forth(g1, g2, 2)
