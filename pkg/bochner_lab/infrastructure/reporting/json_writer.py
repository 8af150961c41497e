"""
JSON report emission with sorted keys and 17 significant digits.
"""

import json
import math
from pathlib import Path
from typing import Any, Union

from pydantic import BaseModel

INDENT = "  "


def format_float(value: float) -> str:
    """17 significant digits; non-finite values become JSON strings."""
    if math.isnan(value):
        return '"NaN"'
    if math.isinf(value):
        return '"Infinity"' if value > 0 else '"-Infinity"'
    return format(value, ".17g")


# model_dump_json and json.dumps write shortest-repr floats, not 17 significant digits.
def _encode(value: Any, depth: int) -> str:
    if isinstance(value, BaseModel):
        value = value.model_dump(mode="python")
    if value is None or isinstance(value, (bool, str)):
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    pad, inner = INDENT * depth, INDENT * (depth + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{inner}{json.dumps(str(key))}: {_encode(value[key], depth + 1)}"
            for key in sorted(value, key=str)
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{inner}{_encode(item, depth + 1)}" for item in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if hasattr(value, "item"):
        return _encode(value.item(), depth)
    raise TypeError(f"cannot encode {type(value).__name__} as JSON")


def dumps(value: Any) -> str:
    """Deterministic JSON text of a report or plain structure."""
    return _encode(value, 0) + "\n"


def write_json(value: Any, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(dumps(value), encoding="utf-8")
    return path
