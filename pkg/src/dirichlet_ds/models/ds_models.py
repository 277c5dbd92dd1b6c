from typing import Annotated

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from dirichlet_ds.models.common_models import ARRAY_MODEL_CONFIG, FloatVector, IntVector

NORMALIZATION_TOLERANCE = 1e-12


class CategoryCounts(BaseModel):
    """Observed multinomial counts z_1..z_d"""

    model_config = ARRAY_MODEL_CONFIG

    counts: Annotated[IntVector, Field(description="Non-negative count per category, d >= 2")]

    @field_validator("counts")
    @classmethod
    def validate_counts(cls, v):
        if v.size < 2:
            raise ValueError(f"degenerate input: need at least 2 categories, got {v.size}")
        if np.any(v < 0):
            raise ValueError("counts must be non-negative")
        return v

    @property
    def n(self) -> int:
        return int(self.counts.sum())

    @property
    def d(self) -> int:
        return int(self.counts.size)


class WeakeningParam(BaseModel):
    """Number r of missing multinoulli trials"""

    model_config = ARRAY_MODEL_CONFIG

    r: Annotated[int, Field(ge=0, description="Missing trials; raises the slack shape to 1+r")] = 0


class DsWeights(BaseModel):
    """One Dirichlet(1+r, z_1..z_d) draw: slack w0 and lower bounds w"""

    model_config = ARRAY_MODEL_CONFIG

    w0: Annotated[float, Field(ge=0.0, le=1.0, description="Slack weight")]
    w: Annotated[FloatVector, Field(description="Lower bound per category")]

    @field_validator("w")
    @classmethod
    def validate_lower_bounds(cls, v):
        if v.size < 2:
            raise ValueError(f"degenerate input: need at least 2 categories, got {v.size}")
        if np.any(v < 0.0) or np.any(v > 1.0):
            raise ValueError("lower bound weights must lie in [0, 1]")
        return v

    @model_validator(mode="after")
    def validate_normalization(self):
        total = self.w0 + float(self.w.sum())
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise ValueError(f"w0 + sum(w) must equal 1, got {total!r}")
        return self

    @property
    def d(self) -> int:
        return int(self.w.size)


class DsSimplexPolytope(BaseModel):
    """Focal element {p : p_i >= w_i, sum(p) = 1}, a simplex with d vertices w + w0 e_i"""

    model_config = ARRAY_MODEL_CONFIG

    weights: DsWeights

    @property
    def dimension(self) -> int:
        return self.weights.d

    @property
    def w0(self) -> float:
        return self.weights.w0

    @property
    def lower_bounds(self) -> np.ndarray:
        return self.weights.w

    @property
    def vertices(self) -> np.ndarray:
        """(d, d) array, row i is w + w0 e_i"""
        return self.weights.w[np.newaxis, :] + self.weights.w0 * np.eye(self.dimension)
