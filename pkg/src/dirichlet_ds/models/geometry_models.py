from typing import Annotated

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from dirichlet_ds.models.common_models import ARRAY_MODEL_CONFIG, FloatVector

COORDINATE_TOLERANCE = 1e-12
SUM_TOLERANCE = 1e-9


class ProbVector(BaseModel):
    """A point of the probability simplex"""

    model_config = ARRAY_MODEL_CONFIG

    p: Annotated[FloatVector, Field(description="Coordinates, non-negative and summing to 1")]

    @field_validator("p")
    @classmethod
    def validate_simplex_point(cls, v):
        if v.size < 1:
            raise ValueError("probability vector must not be empty")
        if np.any(v < -COORDINATE_TOLERANCE):
            raise ValueError("probability vector has negative coordinates")
        total = float(v.sum())
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"probability vector must sum to 1, got {total!r}")
        return v

    @property
    def d(self) -> int:
        return int(self.p.size)


class DistancePair(BaseModel):
    """Nearest and farthest Euclidean distance from a target to one polytope"""

    lower: Annotated[float, Field(ge=0.0)]
    upper: Annotated[float, Field(ge=0.0)]

    @model_validator(mode="after")
    def validate_order(self):
        if self.lower > self.upper:
            raise ValueError("lower distance exceeds upper distance")
        return self
