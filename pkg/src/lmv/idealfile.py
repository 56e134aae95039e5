"""JSON ideal files: variables, order, field and generator strings."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .fields import QuadraticField, field_from_descriptor
from .ideal import Ideal
from .orders import MonomialOrder, parse_order
from .polynomial import RingContext

__all__ = ["FORMAT_VERSION", "IdealFileError", "IdealFile"]

FORMAT_VERSION = 1


class IdealFileError(ValueError):
    pass


def _pi_mode(variables, field) -> str:
    if "pi" in variables:
        return "variable"
    if isinstance(field, QuadraticField):
        return "field-element"
    return "absent"


@dataclass(frozen=True)
class IdealFile:
    variables: tuple[str, ...]
    order: str
    field: dict
    generators: tuple[str, ...]
    format_version: int = FORMAT_VERSION

    @classmethod
    def from_ideal(cls, I: Ideal, order: MonomialOrder | None = None,
                   generators=None) -> "IdealFile":
        ctx = I.ctx if order is None else I.ctx.with_order(order)
        gens = I.generators if generators is None else generators
        return cls(
            variables=ctx.variables,
            order=ctx.order.name,
            field=ctx.field.descriptor(),
            generators=tuple(str(g.to_context(ctx)) for g in gens),
        )

    def context(self) -> RingContext:
        try:
            fld = field_from_descriptor(self.field)
            return RingContext(tuple(self.variables), parse_order(self.order), fld,
                               _pi_mode(self.variables, fld))
        except (ValueError, KeyError, TypeError) as exc:
            raise IdealFileError(f"invalid ring description: {exc}") from exc

    def to_ideal(self) -> Ideal:
        ctx = self.context()
        return Ideal(ctx, [ctx.parse(g) for g in self.generators])

    def to_dict(self) -> dict:
        return {
            "format-version": self.format_version,
            "variables": list(self.variables),
            "order": self.order,
            "field": dict(self.field),
            "generators": list(self.generators),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "IdealFile":
        try:
            version = data["format-version"]
            if version != FORMAT_VERSION:
                raise IdealFileError(f"unsupported format version {version!r}")
            variables = data["variables"]
            gens = data["generators"]
            if not isinstance(variables, list) or not isinstance(gens, list):
                raise IdealFileError("variables and generators must be lists")
            return cls(tuple(variables), str(data["order"]), dict(data["field"]),
                       tuple(str(g) for g in gens), version)
        except KeyError as exc:
            raise IdealFileError(f"missing field {exc.args[0]!r}") from None

    @classmethod
    def loads(cls, text: str) -> "IdealFile":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise IdealFileError(f"not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise IdealFileError("an ideal file must be a JSON object")
        return cls.from_dict(data)

    @classmethod
    def read(cls, path) -> "IdealFile":
        return cls.loads(Path(path).read_text(encoding="utf-8"))

    def write(self, path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")
