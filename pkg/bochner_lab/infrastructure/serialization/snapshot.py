"""
Binary field snapshots.

Layout: an 8-byte little-endian header length, a UTF-8 JSON header, then
every block as little-endian float64 in row-major node order.
"""

import json
import struct
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from bochner_lab.core.config import get_settings
from bochner_lab.core.exceptions import ValidationError
from bochner_lab.domain.decomposition.models.decomposition import DecompositionResult
from bochner_lab.domain.decomposition.schemas.solver import SolverStats
from bochner_lab.domain.geometry.models.fields import VALENCE, FieldRole, MetricField, TensorField
from bochner_lab.domain.geometry.schemas.chart import ChartGrid

FORMAT_VERSION = 1
LENGTH = struct.Struct("<Q")
FLOAT = np.dtype("<f8")

Snapshot = Union[TensorField, MetricField, DecompositionResult]


class BlockSpec(BaseModel):
    name: str
    role: str
    valence: Tuple[int, int]
    shape: List[int]
    offset: int = Field(..., description="Byte offset after the header")


class SnapshotHeader(BaseModel):
    format_version: int = FORMAT_VERSION
    kind: Literal["tensor_field", "metric_field", "decomposition"]
    chart: ChartGrid
    blocks: List[BlockSpec]
    tolerance: Dict[str, float] = Field(default_factory=dict)
    meta: Dict[str, Any] = Field(default_factory=dict)


def _blocks(obj: Snapshot) -> Tuple[str, List[Tuple[str, str, np.ndarray]], Dict[str, Any]]:
    if isinstance(obj, TensorField):
        return "tensor_field", [("field", obj.role.value, obj.data)], {}
    if isinstance(obj, MetricField):
        return "metric_field", [("metric", FieldRole.SYM2.value, obj.components)], {}
    if isinstance(obj, DecompositionResult):
        parts = [
            ("theta", obj.theta),
            ("lambda", obj.lambda_field),
            ("tt_part", obj.tt_part),
            ("gauge_part", obj.gauge_part),
        ]
        blocks = [(name, field.role.value, field.data) for name, field in parts]
        return "decomposition", blocks, {"solver_stats": obj.solver_stats.model_dump()}
    raise ValidationError(f"cannot snapshot a {type(obj).__name__}")


def _chart(obj: Snapshot) -> ChartGrid:
    return obj.theta.chart if isinstance(obj, DecompositionResult) else obj.chart


def dump_snapshot(obj: Snapshot) -> bytes:
    """Encode a field, metric or decomposition."""
    kind, blocks, meta = _blocks(obj)
    settings = get_settings()
    specs, payload, offset = [], [], 0
    for name, role, data in blocks:
        array = np.ascontiguousarray(data, dtype=FLOAT)
        specs.append(
            BlockSpec(
                name=name,
                role=role,
                valence=VALENCE[FieldRole(role)],
                shape=list(array.shape),
                offset=offset,
            )
        )
        raw = array.tobytes(order="C")
        payload.append(raw)
        offset += len(raw)
    header = SnapshotHeader(
        kind=kind,
        chart=_chart(obj),
        blocks=specs,
        tolerance={"TOL_FLOOR": settings.TOL_FLOOR, "MACHINE_FLOOR": settings.MACHINE_FLOOR},
        meta=meta,
    )
    encoded = json.dumps(header.model_dump(mode="json"), sort_keys=True).encode("utf-8")
    return LENGTH.pack(len(encoded)) + encoded + b"".join(payload)


def load_snapshot(raw: bytes) -> Snapshot:
    """
    Decode a snapshot.

    Raises:
        ValidationError: if the bytes are truncated or the version is unknown
    """
    if len(raw) < LENGTH.size:
        raise ValidationError("snapshot shorter than its length prefix")
    (length,) = LENGTH.unpack_from(raw)
    start = LENGTH.size + length
    if len(raw) < start:
        raise ValidationError("snapshot header truncated")
    header = SnapshotHeader.model_validate_json(raw[LENGTH.size : start])
    if header.format_version != FORMAT_VERSION:
        raise ValidationError(f"unsupported snapshot version {header.format_version}")

    arrays: Dict[str, np.ndarray] = {}
    for block in header.blocks:
        count = int(np.prod(block.shape, dtype=np.int64))
        begin = start + block.offset
        if len(raw) < begin + count * FLOAT.itemsize:
            raise ValidationError(f"snapshot block '{block.name}' truncated")
        values = np.frombuffer(raw, dtype=FLOAT, count=count, offset=begin)
        arrays[block.name] = values.reshape(block.shape).astype(float)

    chart = header.chart
    roles = {block.name: FieldRole(block.role) for block in header.blocks}
    if header.kind == "tensor_field":
        return TensorField(chart, roles["field"], arrays["field"])
    if header.kind == "metric_field":
        return MetricField.from_components(chart, arrays["metric"])
    return DecompositionResult(
        theta=TensorField(chart, roles["theta"], arrays["theta"]),
        lambda_field=TensorField(chart, roles["lambda"], arrays["lambda"]),
        tt_part=TensorField(chart, roles["tt_part"], arrays["tt_part"]),
        gauge_part=TensorField(chart, roles["gauge_part"], arrays["gauge_part"]),
        solver_stats=SolverStats(**header.meta["solver_stats"]),
    )


def write_snapshot(obj: Snapshot, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_bytes(dump_snapshot(obj))
    return path


def read_snapshot(path: Union[str, Path], expected: Optional[type] = None) -> Snapshot:
    """Read a snapshot file, optionally asserting its type."""
    obj = load_snapshot(Path(path).read_bytes())
    if expected is not None and not isinstance(obj, expected):
        raise ValidationError(f"snapshot holds a {type(obj).__name__}, expected {expected.__name__}")
    return obj
