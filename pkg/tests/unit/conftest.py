"""Shared test fixtures for dcgraph tests."""

from __future__ import annotations

import json
from collections.abc import Callable
from fractions import Fraction
from pathlib import Path
from typing import Any

import pytest

from dcgraph.core import ColoredGraph
from dcgraph.formats import format_dcg
from tests.unit.graphs import make_graph

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def triangle() -> ColoredGraph:
    """A valid triangle: two edges of color 1, one of color 2."""
    return make_graph("abc", {"ab": 2, "ac": 1, "bc": 1})


@pytest.fixture
def bad_triangle() -> ColoredGraph:
    """A monochromatic triangle."""
    return make_graph("abc", {"ab": 1, "ac": 1, "bc": 1})


@pytest.fixture
def square() -> ColoredGraph:
    """Four vertices split 2+2 at color 1, each pair joined by color 2."""
    return make_graph("abcd", {"ab": 2, "cd": 2, "ac": 1, "ad": 1, "bc": 1, "bd": 1})


@pytest.fixture
def rational_path() -> ColoredGraph:
    """A valid graph with non-integer colors."""
    return make_graph("xyz", {"xy": Fraction(1, 2), "xz": Fraction(1, 2), "yz": Fraction(7, 3)})


@pytest.fixture
def config_file_factory(tmp_path: Path) -> Callable[[dict[str, Any]], str]:
    """Factory to persist temporary JSON settings files for tests."""

    def _write_config(data: dict[str, Any]) -> str:
        path = tmp_path / "settings.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return _write_config


@pytest.fixture
def dcg_file_factory(tmp_path: Path) -> Callable[[ColoredGraph, str], str]:
    """Factory to write graphs as dcg-v1 files."""

    def _write_graph(g: ColoredGraph, name: str = "graph.dcg") -> str:
        path = tmp_path / name
        path.write_text(format_dcg(g), encoding="utf-8")
        return str(path)

    return _write_graph


@pytest.fixture
def fixture_files() -> list[Path]:
    """The golden dcg-v1 fixture files."""
    return sorted(FIXTURES.glob("*.dcg"))
