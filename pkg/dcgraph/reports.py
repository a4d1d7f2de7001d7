"""JSON schemas for the reports the CLI prints with ``--json``."""

from __future__ import annotations

from typing import Any

from marshmallow import Schema, fields

from dcgraph.formats import format_color, format_dcg


class ColorField(fields.Field):
    """A Color, dumped in its canonical ``p`` or ``p/q`` text form."""

    def _serialize(self, value: Any, attr: str | None, obj: Any, **kwargs: Any) -> str | None:  # noqa: ANN401
        return None if value is None else format_color(value)


class ViolationSchema(Schema):
    """Schema for one violating triangle."""

    vertices = fields.List(fields.Str())
    colors = fields.List(ColorField())


class ValidationReportSchema(Schema):
    """Schema for the ``validate`` report."""

    valid = fields.Bool()
    violations = fields.List(fields.Nested(ViolationSchema))


class ExtensionTypeSchema(Schema):
    """Schema for an unrealized extension type."""

    base = fields.List(fields.Str())
    new_vertex = fields.Str()
    colors = fields.Function(lambda t: {v: format_color(c) for v, c in t.colors})


class GenericityReportSchema(Schema):
    """Schema for the ``check-generic`` report."""

    k = fields.Int()
    palette = fields.List(ColorField())
    passed = fields.Bool()
    checked = fields.Int()
    vacuous = fields.Bool()
    missing = fields.List(fields.Nested(ExtensionTypeSchema))


class EnumerationResultSchema(Schema):
    """Schema for the ``enumerate`` result; graphs are embedded as dcg-v1 text."""

    n = fields.Int()
    m = fields.Int()
    count = fields.Int()
    graphs = fields.Function(lambda r: None if r.graphs is None else [format_dcg(g) for g in r.graphs])


class SelectorStepSchema(Schema):
    """Schema for one selector stage."""

    vertex = fields.Str()
    color = ColorField()
    members = fields.List(fields.Str())
    survivors = fields.List(fields.Str())


class SelectorTraceSchema(Schema):
    """Schema for the ``extend --trace`` dump."""

    start = fields.List(fields.Str())
    steps = fields.List(fields.Nested(SelectorStepSchema))
    final = fields.List(fields.Str())
    classification = fields.Str()
