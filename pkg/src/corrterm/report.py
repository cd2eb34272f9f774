"""Report records, their JSON encoding, and the schema that encoding follows.

Rationals are encoded as ``"p/q"`` strings in lowest terms (``q >= 1``,
so integers appear as ``"n/1"``); every other value is native JSON.
"""

from __future__ import annotations

import dataclasses
import json
import types
import typing
from dataclasses import dataclass
from fractions import Fraction
from typing import Any


@dataclass(frozen=True)
class GraphEcho:
    vertices: int
    edges: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class InputEcho:
    kind: str  # "braid" | "family" | "graph"
    braid: str | None = None
    family: str | None = None
    params: tuple[int, ...] | None = None
    graph: GraphEcho | None = None


@dataclass(frozen=True)
class DRow:
    class_id: tuple[int, ...]
    representative: tuple[int, ...]
    maximizer: tuple[int, ...]
    norm_sq: Fraction
    d: Fraction
    labels: tuple[str, ...] = ()


@dataclass(frozen=True)
class GenusRow:
    torsion: tuple[int, ...]
    theta: Fraction
    genus: Fraction


@dataclass(frozen=True)
class NormSection:
    lower: tuple[Fraction, ...] | None
    upper: tuple[int, ...] | None
    exact: bool
    failed_inequalities: tuple[int, ...] = ()


@dataclass(frozen=True)
class ComplexitySection:
    lower: int | None
    upper: int | None


@dataclass(frozen=True)
class LayeringSection:
    st_word: str
    flips: tuple[str, ...]
    tetrahedra: int
    monodromy: str
    matrix: tuple[tuple[int, ...], ...]
    h1_torsion: tuple[int, ...]
    h1_free_rank: int


@dataclass(frozen=True)
class CheckSection:
    oracle_classes: int
    oracle_mismatches: int
    oracle_skipped: int
    h1_crosscheck: bool | None
    h1_open_book: tuple[int, ...] | None
    h1_goeritz: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.oracle_mismatches == 0 and self.h1_crosscheck is not False


@dataclass(frozen=True)
class Report:
    command: str
    input: InputEcho
    Q: tuple[tuple[int, ...], ...] | None = None
    abs_det: int | None = None
    invariant_factors: tuple[int, ...] | None = None
    class_count: int | None = None
    d_table: tuple[DRow, ...] | None = None
    d_table_elided: bool = False
    genus_bounds: tuple[GenusRow, ...] | None = None
    norms: NormSection | None = None
    complexity: ComplexitySection | None = None
    layering: LayeringSection | None = None
    check: CheckSection | None = None
    flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return _encode(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        return _decode(cls, data)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    p, q = s.split("/")
    return Fraction(int(p), int(q))


def _encode(value: Any) -> Any:
    if isinstance(value, Fraction):
        return format_rational(value)
    if dataclasses.is_dataclass(value):
        return {f.name: _encode(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, (tuple, list)):
        return [_encode(v) for v in value]
    return value


def _decode(tp: Any, value: Any) -> Any:
    origin = typing.get_origin(tp)
    if origin in (typing.Union, types.UnionType):
        args = typing.get_args(tp)
        if value is None and type(None) in args:
            return None
        (inner,) = [a for a in args if a is not type(None)]
        return _decode(inner, value)
    if tp is Fraction:
        return parse_rational(value)
    if dataclasses.is_dataclass(tp):
        hints = typing.get_type_hints(tp)
        names = {f.name for f in dataclasses.fields(tp)}
        unknown = set(value) - names
        if unknown:
            raise ValueError(f"unknown field(s) for {tp.__name__}: {sorted(unknown)}")
        return tp(**{k: _decode(hints[k], v) for k, v in value.items()})
    if origin is tuple:
        args = typing.get_args(tp)
        if len(args) == 2 and args[1] is Ellipsis:
            return tuple(_decode(args[0], v) for v in value)
        return tuple(_decode(a, v) for a, v in zip(args, value))
    return value


_RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+/[1-9][0-9]*$"}
_INTS = {"type": "array", "items": {"type": "integer"}}
_MATRIX = {"type": "array", "items": _INTS}


def _nullable(schema: dict) -> dict:
    return {"anyOf": [schema, {"type": "null"}]}


def _obj(props: dict, required: list[str] | None = None) -> dict:
    return {
        "type": "object",
        "properties": props,
        "required": list(props) if required is None else required,
        "additionalProperties": False,
    }


REPORT_SCHEMA: dict = _obj(
    {
        "command": {"enum": ["dinv", "norms", "complexity", "layer", "check"]},
        "input": _obj(
            {
                "kind": {"enum": ["braid", "family", "graph"]},
                "braid": _nullable({"type": "string"}),
                "family": _nullable({"enum": ["even", "odd"]}),
                "params": _nullable(_INTS),
                "graph": _nullable(
                    _obj({"vertices": {"type": "integer", "minimum": 1}, "edges": _MATRIX})
                ),
            }
        ),
        "Q": _nullable(_MATRIX),
        "abs_det": _nullable({"type": "integer", "minimum": 1}),
        "invariant_factors": _nullable(_INTS),
        "class_count": _nullable({"type": "integer", "minimum": 1}),
        "d_table": _nullable(
            {
                "type": "array",
                "items": _obj(
                    {
                        "class_id": _INTS,
                        "representative": _INTS,
                        "maximizer": _INTS,
                        "norm_sq": _RATIONAL,
                        "d": _RATIONAL,
                        "labels": {"type": "array", "items": {"type": "string"}},
                    }
                ),
            }
        ),
        "d_table_elided": {"type": "boolean"},
        "genus_bounds": _nullable(
            {
                "type": "array",
                "items": _obj({"torsion": _INTS, "theta": _RATIONAL, "genus": _RATIONAL}),
            }
        ),
        "norms": _nullable(
            _obj(
                {
                    "lower": _nullable({"type": "array", "items": _RATIONAL}),
                    "upper": _nullable(_INTS),
                    "exact": {"type": "boolean"},
                    "failed_inequalities": _INTS,
                }
            )
        ),
        "complexity": _nullable(
            _obj(
                {
                    "lower": _nullable({"type": "integer"}),
                    "upper": _nullable({"type": "integer"}),
                }
            )
        ),
        "layering": _nullable(
            _obj(
                {
                    "st_word": {"type": "string"},
                    "flips": {
                        "type": "array",
                        "items": {"enum": ["a1", "a2", "b1", "b2"]},
                    },
                    "tetrahedra": {"type": "integer", "minimum": 0},
                    "monodromy": {"type": "string"},
                    "matrix": _MATRIX,
                    "h1_torsion": _INTS,
                    "h1_free_rank": {"type": "integer", "minimum": 0},
                }
            )
        ),
        "check": _nullable(
            _obj(
                {
                    "oracle_classes": {"type": "integer"},
                    "oracle_mismatches": {"type": "integer"},
                    "oracle_skipped": {"type": "integer"},
                    "h1_crosscheck": _nullable({"type": "boolean"}),
                    "h1_open_book": _nullable(_INTS),
                    "h1_goeritz": _INTS,
                }
            )
        ),
        "flags": {"type": "array", "items": {"type": "string"}},
    }
)
