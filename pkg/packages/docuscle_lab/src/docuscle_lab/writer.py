"""
Report writers.

JSON reports are orjson-encoded pydantic dumps (shortest round-trip floats,
non-finite numbers rejected). CSV tables go through pandas. Files are written
to a temporary sibling and renamed into place.
"""

from __future__ import annotations

import math
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import orjson
import pandas as pd
from docuscle_types.errors import ConfigValidationError, InvariantViolationError
from loguru import logger
from pydantic import BaseModel

Payload = Union[BaseModel, Dict[str, Any]]


def _plain(payload: Payload) -> Any:
    if isinstance(payload, BaseModel):
        return payload.model_dump(mode="json")
    return payload


def ensure_finite(value: Any, where: str = "$") -> None:
    """Raise if any number nested in ``value`` is NaN or infinite."""
    if isinstance(value, float) and not math.isfinite(value):
        raise InvariantViolationError(f"non-finite number at {where}")
    if isinstance(value, dict):
        for k, v in value.items():
            ensure_finite(v, f"{where}.{k}")
    elif isinstance(value, (list, tuple)):
        for i, v in enumerate(value):
            ensure_finite(v, f"{where}[{i}]")


def encode_json(payload: Payload) -> bytes:
    data = _plain(payload)
    ensure_finite(data)
    return orjson.dumps(data, option=orjson.OPT_INDENT_2) + b"\n"


def encode_csv(rows: List[Dict[str, Any]]) -> bytes:
    for i, row in enumerate(rows):
        ensure_finite(row, f"row[{i}]")
    return pd.DataFrame(rows).to_csv(index=False, lineterminator="\n").encode("utf-8")


def atomic_write(path: Union[str, Path], data: bytes) -> Path:
    """Write ``data`` to ``path`` via a temp file in the same directory."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    logger.info(f"Wrote {len(data)} bytes to {path}")
    return path


def write_report(
    payload: Payload,
    out: Optional[Union[str, Path]] = None,
    fmt: str = "json",
    rows: Optional[List[Dict[str, Any]]] = None,
) -> bytes:
    """
    Encode a report and write it to ``out`` (stdout when None).

    Args:
        payload: Report model or plain mapping (JSON format)
        out: Destination path
        fmt: ``json`` or ``csv``
        rows: Table rows for CSV; required when ``fmt == "csv"``

    Returns:
        The encoded bytes
    """
    if fmt == "csv":
        if rows is None:
            raise ConfigValidationError(
                "this report has no tabular form; use json", field="output.format"
            )
        data = encode_csv(rows)
    elif fmt == "json":
        data = encode_json(payload)
    else:
        raise ConfigValidationError(f"unknown format {fmt!r}", field="output.format")
    if out is None:
        sys.stdout.write(data.decode("utf-8"))
        sys.stdout.flush()
    else:
        atomic_write(out, data)
    return data
