"""
JSON Schema export for docuscle models.

Writes one ``<name>.schema.json`` per model so configs and reports can be
validated outside Python.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Type

import orjson
from loguru import logger
from pydantic import BaseModel

from ..schemas.config import InstanceSpec, RunConfig
from ..schemas.models import (
    BoostReport,
    ConvergenceReport,
    ExactReport,
    FrequencyTable,
    QBoostReport,
    ScanReport,
    SimulationReport,
    ViolationReport,
)

MODEL_MAP: Dict[str, Type[BaseModel]] = {
    "RunConfig": RunConfig,
    "InstanceSpec": InstanceSpec,
    "BoostReport": BoostReport,
    "QBoostReport": QBoostReport,
    "ExactReport": ExactReport,
    "FrequencyTable": FrequencyTable,
    "SimulationReport": SimulationReport,
    "ScanReport": ScanReport,
    "ViolationReport": ViolationReport,
    "ConvergenceReport": ConvergenceReport,
}


def _snake(name: str) -> str:
    out = []
    for i, ch in enumerate(name):
        if ch.isupper() and i and not name[i - 1].isupper():
            out.append("_")
        out.append(ch.lower())
    return "".join(out)


def export_model_schema(
    model_cls: Type[BaseModel], version: str = "0.1.0"
) -> Dict[str, Any]:
    """
    Export a model's JSON schema with docuscle metadata.

    Args:
        model_cls: The pydantic model class
        version: Schema version string

    Returns:
        JSON schema dictionary
    """
    schema = model_cls.model_json_schema()
    schema.update(
        {
            "$schema": "https://json-schema.org/draft/2020-12/schema",
            "$id": f"docuscle/{_snake(model_cls.__name__)}/{version}",
            "x-docuscle-version": version,
        }
    )
    return schema


def export_all_schemas(
    output_dir: Path, version: str = "0.1.0", names: Optional[List[str]] = None
) -> List[Path]:
    """
    Write schema files for the selected (default: all) models.

    Returns:
        Paths written
    """
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in names or list(MODEL_MAP):
        model_cls = get_model_by_name(name)
        path = output_dir / f"{_snake(name)}.schema.json"
        path.write_bytes(
            orjson.dumps(
                export_model_schema(model_cls, version),
                option=orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS,
            )
        )
        written.append(path)
        logger.debug(f"Wrote schema {path}")
    logger.info(f"Exported {len(written)} schemas to {output_dir}")
    return written


def get_model_by_name(name: str) -> Type[BaseModel]:
    if name not in MODEL_MAP:
        raise KeyError(f"Unknown model: {name}. Available: {list(MODEL_MAP)}")
    return MODEL_MAP[name]
