"""
Load run configurations and build the objects they describe.

Parsing goes text -> orjson -> ``RunConfig``; any failure becomes a
``ConfigValidationError`` naming the JSON line and the dotted field path.
Building goes ``StateSpec`` / ``PropertySpec`` -> core objects, validating
every invariant before a run starts.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, List, Optional, Sequence, Tuple, Union

import numpy as np
import orjson
from docuscle_beam.pipeline import PropertyLike, StateLike
from docuscle_core.classical import ClassicalState, Event
from docuscle_core.quantum import DensityMatrix, Projector
from docuscle_core.random_instances import (
    derive_generator,
    random_classical_state,
    random_density,
    random_event,
    random_projector,
    random_pure_state,
)
from docuscle_types.errors import ConfigValidationError, InvalidInputError
from docuscle_types.schemas.config import (
    GeneratorSpec,
    InstanceSpec,
    PropertySpec,
    RunConfig,
    StateSpec,
)
from docuscle_types.schemas.enums import ModelKind
from docuscle_types.utils.deterministic_ids import derive_seed
from loguru import logger
from pydantic import ValidationError

Instance = Tuple[StateLike, PropertyLike, PropertyLike]


def _locate(text: str, loc: Sequence[Union[str, int]]) -> Optional[int]:
    """Line of the deepest key of ``loc`` found in order, if any."""
    pos, found = 0, False
    for part in loc:
        if not isinstance(part, str):
            continue
        idx = text.find(f'"{part}"', pos)
        if idx >= 0:
            pos, found = idx, True
    return text.count("\n", 0, pos) + 1 if found else None


def parse_config(text: Union[str, bytes]) -> RunConfig:
    """
    Parse and validate a JSON run configuration.

    Raises:
        ConfigValidationError: malformed JSON or a field failing validation
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        data = orjson.loads(text)
    except orjson.JSONDecodeError as exc:
        raise ConfigValidationError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    if not isinstance(data, dict):
        raise ConfigValidationError("config must be a JSON object", line=1)
    try:
        return RunConfig.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = first.get("loc", ())
        field = ".".join(str(p) for p in loc) or None
        more = f" (+{exc.error_count() - 1} more)" if exc.error_count() > 1 else ""
        raise ConfigValidationError(
            f"{first.get('msg', 'invalid value')}{more}",
            field=field,
            line=_locate(text, loc),
        ) from exc


def load_config(path: Union[str, Path]) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigValidationError(f"cannot read config {path}: {exc.strerror}") from exc
    config = parse_config(text)
    logger.debug(f"Loaded config {path}: model={config.model}")
    return config


def dump_config(config: RunConfig) -> str:
    """Canonical JSON text; ``parse_config(dump_config(c)) == c``."""
    return orjson.dumps(
        config.model_dump(mode="json", exclude_none=True), option=orjson.OPT_INDENT_2
    ).decode("utf-8")


# --------------------------------------------------------------------------- #
# Building objects                                                            #
# --------------------------------------------------------------------------- #


def _matrix(rows: List[List[Tuple[float, float]]]) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def _generator_seed(gen: GeneratorSpec, seed: Optional[int], role: str) -> int:
    if gen.seed is not None:
        return gen.seed
    if seed is None:
        raise ConfigValidationError(
            "generator needs its own seed or a top-level seed", field=f"{role}.generator.seed"
        )
    return derive_seed(seed, role)


def build_state(spec: StateSpec, model: ModelKind, seed: Optional[int] = None) -> StateLike:
    """Classical state or density matrix from its spec."""
    if spec.generator is not None:
        gen = spec.generator
        rng = derive_generator(_generator_seed(gen, seed, "state"))
        if model == "classical":
            return random_classical_state(gen.dim, 1 if gen.pure else gen.rank, rng)
        if gen.pure:
            return random_pure_state(gen.dim, rng)
        return random_density(gen.dim, gen.rank if gen.rank is not None else gen.dim, rng)
    if spec.weights is not None:
        if model == "classical":
            return ClassicalState(np.asarray(spec.weights, dtype=float))
        return DensityMatrix.from_diagonal(spec.weights)
    if model == "classical":
        raise InvalidInputError("a classical state needs weights, not a matrix")
    return DensityMatrix(_matrix(spec.matrix))


def build_property(
    spec: PropertySpec,
    model: ModelKind,
    dim: int,
    seed: Optional[int] = None,
    role: str = "x",
) -> PropertyLike:
    """Event or projector of dimension ``dim`` from its spec."""
    if spec.generator is not None:
        gen = spec.generator
        if gen.dim != dim:
            raise InvalidInputError(f"generator dim {gen.dim} differs from state dim {dim}")
        rng = derive_generator(_generator_seed(gen, seed, role))
        if model == "classical":
            return random_event(dim, gen.rank, rng)
        return random_projector(dim, gen.rank if gen.rank is not None else dim // 2, rng)
    if spec.members is not None:
        event = Event.from_indices(dim, spec.members)
        return event if model == "classical" else Projector.from_event(event)
    if model == "classical":
        raise InvalidInputError("a classical property needs members, not a matrix")
    projector = Projector(_matrix(spec.matrix))
    if projector.dim != dim:
        raise InvalidInputError(f"projector dim {projector.dim} differs from state dim {dim}")
    return projector


def build_instance(
    spec: Union[InstanceSpec, RunConfig],
    seed: Optional[int] = None,
    text: Optional[str] = None,
) -> Instance:
    """
    Build (state, X, R) and validate all three.

    Args:
        spec: Instance or run config carrying ``state``, ``x`` and ``r``
        seed: Top-level seed for generators without their own
        text: Source JSON, used to put a line number on errors

    Raises:
        ConfigValidationError: a part is missing or violates an invariant
    """
    if isinstance(spec, RunConfig):
        try:
            spec = spec.instance()
        except ValueError as exc:
            raise ConfigValidationError(str(exc)) from exc
    role = "state"
    try:
        state = build_state(spec.state, spec.model, seed)
        role = "x"
        x = build_property(spec.x, spec.model, state.dim, seed, role="x")
        role = "r"
        r = build_property(spec.r, spec.model, state.dim, seed, role="r")
    except ConfigValidationError:
        raise
    except InvalidInputError as exc:
        line = _locate(text, (role,)) if text else None
        raise ConfigValidationError(exc.message, field=role, line=line) from exc
    return state, x, r


# --------------------------------------------------------------------------- #
# Serializing objects                                                         #
# --------------------------------------------------------------------------- #


def _entries(m: np.ndarray) -> List[List[List[float]]]:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def to_instance_spec(state: StateLike, x: PropertyLike, r: PropertyLike) -> InstanceSpec:
    """Serialized form of a built instance; rebuilding it gives equal objects."""

    def prop(p: Any) -> PropertySpec:
        if isinstance(p, Event):
            return PropertySpec(members=list(p.indices))
        return PropertySpec(matrix=_entries(p.entries))

    if isinstance(state, ClassicalState):
        return InstanceSpec(
            model="classical",
            state=StateSpec(weights=state.weights.tolist()),
            x=prop(x),
            r=prop(r),
        )
    return InstanceSpec(
        model="quantum",
        state=StateSpec(matrix=_entries(state.entries)),
        x=prop(x),
        r=prop(r),
    )
