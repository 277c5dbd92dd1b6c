from typing import Annotated

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from dirichlet_ds.models.common_models import (
    ARRAY_MODEL_CONFIG,
    Bound,
    FloatVector,
    HypothesisTag,
    Method,
)


class HypothesisSpec(BaseModel):
    """Product of two independent Beta(a, b) marginals"""

    tag: HypothesisTag
    a: Annotated[float, Field(gt=0.0)] = 1.0
    b: Annotated[float, Field(gt=0.0)] = 1.0

    @classmethod
    def from_tag(cls, tag: "HypothesisTag | str") -> "HypothesisSpec":
        tag = HypothesisTag(str(tag.value if isinstance(tag, HypothesisTag) else tag).lower())
        if tag == HypothesisTag.H0:
            return cls(tag=tag, a=1.0, b=1.0)
        return cls(tag=tag, a=1.0, b=2.0)


class SimulationConfig(BaseModel):
    """Simulation study settings; defaults reproduce the published design"""

    n: Annotated[int, Field(ge=1, description="Samples per dataset")] = 30
    datasets: Annotated[int, Field(ge=1, description="Number of datasets")] = 100
    resolutions: Annotated[list[int], Field(min_length=1, description="Resolutions k")] = [
        2,
        3,
        6,
    ]
    m: Annotated[int, Field(ge=1, description="Polytopes per ds test")] = 200
    weaken: Annotated[int, Field(ge=0, description="Missing trials r")] = 0
    hypothesis: HypothesisTag = HypothesisTag.H0
    methods: Annotated[list[Method], Field(min_length=1)] = [Method.DS, Method.CHI_SQUARE]
    master_seed: Annotated[int, Field(ge=0, lt=2**64)] = 0
    threads: Annotated[int, Field(ge=1, description="Datasets evaluated concurrently")] = 1

    @field_validator("resolutions")
    @classmethod
    def validate_resolutions(cls, v):
        if any(k < 2 for k in v):
            raise ValueError("resolutions must be >= 2")
        if len(set(v)) != len(v):
            raise ValueError("resolutions must be distinct")
        return v

    @field_validator("methods", mode="before")
    @classmethod
    def parse_methods(cls, v):
        return [Method.parse(item) for item in v]

    @model_validator(mode="after")
    def validate_methods(self):
        if len(set(self.methods)) != len(self.methods):
            raise ValueError("methods must be distinct")
        return self


class PValueRecord(BaseModel):
    """One result row of the simulation study"""

    dataset_index: Annotated[int, Field(ge=0)]
    method: Method
    k: Annotated[int, Field(ge=2)]
    p_upper: Annotated[float, Field(ge=0.0, le=1.0)]
    p_lower: Annotated[float, Field(ge=0.0, le=1.0)]

    @model_validator(mode="after")
    def validate_bounds(self):
        if self.p_lower > self.p_upper:
            raise ValueError("p_lower exceeds p_upper")
        return self

    def sort_key(self) -> tuple[int, str, int]:
        return (self.dataset_index, self.method.value, self.k)


class EcdfCurve(BaseModel):
    """Fraction of values at or below each grid point"""

    model_config = ARRAY_MODEL_CONFIG

    grid: FloatVector
    values: FloatVector

    @model_validator(mode="after")
    def validate_curve(self):
        if self.grid.shape != self.values.shape:
            raise ValueError("grid and values differ in length")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing")
        if np.any(np.diff(self.values) < 0) or np.any((self.values < 0) | (self.values > 1)):
            raise ValueError("ECDF values must be non-decreasing within [0, 1]")
        return self

    def at(self, point: float) -> float:
        """Value at the largest grid point not exceeding `point`"""
        index = int(np.searchsorted(self.grid, point + 1e-12, side="right")) - 1
        return 0.0 if index < 0 else float(self.values[index])


class LabelledCurve(BaseModel):
    """ECDF of one bound for one (method, k) group"""

    method: Method
    k: int
    bound: Bound
    curve: EcdfCurve


class SummaryRow(BaseModel):
    """Calibration, power and gap summary for one (method, k, alpha)"""

    method: Method
    k: int
    mean_p_upper: float
    mean_p_lower: float
    mean_gap: float
    alpha: float
    reject_upper: float
    reject_lower: float
