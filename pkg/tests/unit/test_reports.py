"""Tests for the JSON report schemas."""

from dcgraph.core import validate
from dcgraph.generic import check_property_II
from dcgraph.oracle import enumerate_valid
from dcgraph.reports import EnumerationResultSchema, GenericityReportSchema, SelectorTraceSchema, ValidationReportSchema
from dcgraph.selector import greedy_fresh, run_selector
from tests.unit.graphs import make_graph


def test_validation_report_schema(bad_triangle, rational_path):
    """Violations dump their vertices and colors as text."""
    assert ValidationReportSchema().dump(validate(bad_triangle)) == {
        "valid": False,
        "violations": [{"vertices": ["a", "b", "c"], "colors": ["1", "1", "1"]}],
    }
    assert ValidationReportSchema().dump(validate(rational_path)) == {"valid": True, "violations": []}


def test_genericity_report_schema():
    """Missing types dump their base and colors."""
    report = check_property_II(make_graph("ab", {"ab": 1}), 1, [1])
    assert GenericityReportSchema().dump(report) == {
        "k": 1,
        "palette": ["1"],
        "passed": False,
        "checked": 4,
        "vacuous": False,
        "missing": [
            {"base": ["a"], "new_vertex": "new", "colors": {"a": "2"}},
            {"base": ["b"], "new_vertex": "new", "colors": {"b": "2"}},
        ],
    }


def test_enumeration_result_schema():
    """Graphs are embedded as dcg-v1 text, or null when not listed."""
    listed = EnumerationResultSchema().dump(enumerate_valid(2, 1, materialize=True))
    assert listed == {"n": 2, "m": 1, "count": 1, "graphs": ["format: dcg-v1\nvertices: a b\nedge a b 1\n"]}
    assert EnumerationResultSchema().dump(enumerate_valid(2, 1))["graphs"] is None


def test_selector_trace_schema(square):
    """Every stage keeps its members and survivors."""
    trace = run_selector(square, ["a", "b"], greedy_fresh)
    assert SelectorTraceSchema().dump(trace) == {
        "start": ["a", "b"],
        "steps": [{"vertex": "a", "color": "3", "members": ["a", "b"], "survivors": []}],
        "final": [],
        "classification": "good",
    }
