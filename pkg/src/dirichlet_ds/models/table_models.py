from typing import Annotated

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from dirichlet_ds.models.common_models import ARRAY_MODEL_CONFIG, IntVector, Method


class SamplePoint(BaseModel):
    """One bivariate observation on the unit square"""

    x: Annotated[float, Field(ge=0.0, le=1.0)]
    y: Annotated[float, Field(ge=0.0, le=1.0)]


class ContingencyTable(BaseModel):
    """k x k binned counts, row-major: cell (i, j) counts samples in I_i x I_j"""

    model_config = ARRAY_MODEL_CONFIG

    k: Annotated[int, Field(ge=2, description="Resolution")]
    cells: Annotated[IntVector, Field(description="k*k counts in row-major order")]

    @field_validator("cells")
    @classmethod
    def validate_cells(cls, v):
        if np.any(v < 0):
            raise ValueError("cell counts must be non-negative")
        return v

    @model_validator(mode="after")
    def validate_shape(self):
        if self.cells.size != self.k * self.k:
            expected = self.k * self.k
            raise ValueError(f"expected {expected} cells for k={self.k}, got {self.cells.size}")
        return self

    @property
    def n(self) -> int:
        return int(self.cells.sum())

    def as_matrix(self) -> np.ndarray:
        return self.cells.reshape(self.k, self.k)


class TestReport(BaseModel):
    """Outcome of one uniformity test at one resolution"""

    __test__ = False

    method: Method
    k: Annotated[int, Field(ge=2)]
    n: Annotated[int, Field(ge=0)]
    p_upper: Annotated[float, Field(ge=0.0, le=1.0)]
    p_lower: Annotated[float, Field(ge=0.0, le=1.0)]
    r_center: Annotated[float, Field(ge=0.0)] = 0.0
    m: Annotated[int | None, Field(ge=1, description="Polytopes drawn (ds only)")] = None
    statistic: Annotated[float | None, Field(description="Pearson statistic (chisq only)")] = None

    @model_validator(mode="after")
    def validate_bounds(self):
        if self.p_lower > self.p_upper:
            raise ValueError("p_lower exceeds p_upper")
        if self.method == Method.CHI_SQUARE and self.p_lower != self.p_upper:
            raise ValueError("chi-square reports carry a single p-value")
        return self

    @property
    def gap(self) -> float:
        return self.p_upper - self.p_lower
