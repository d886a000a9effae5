"""Base model classes for docuscle data contracts."""

from pydantic import BaseModel, ConfigDict


class StrictBase(BaseModel):
    """Strict, immutable model: extra fields are rejected, instances are frozen."""

    model_config = ConfigDict(extra="forbid", frozen=True)
