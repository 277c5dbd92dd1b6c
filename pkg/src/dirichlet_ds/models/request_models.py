from typing import Annotated

from pydantic import BaseModel, Field, model_validator

from dirichlet_ds.models.table_models import SamplePoint


class PolytopeSampleRequest(BaseModel):
    """Parameters for drawing Dirichlet DS polytopes"""

    counts: Annotated[
        list[int], Field(min_length=2, description="Category counts, ex: [3, 5, 2]")
    ]
    m: Annotated[int, Field(ge=1, le=10_000, description="Number of polytopes")] = 10
    weaken: Annotated[int, Field(ge=0, description="Missing trials r")] = 0
    seed: Annotated[int, Field(ge=0, description="Random seed")] = 0
    include_vertices: Annotated[
        bool, Field(description="Also return the d vertices of every polytope")
    ] = False


class UniformityTestRequest(BaseModel):
    """Parameters for a DS and chi-square uniformity test at one resolution"""

    k: Annotated[int, Field(ge=2, description="Resolution; the table has k*k cells")]
    counts: Annotated[
        list[int] | None, Field(description="k*k cell counts in row-major order")
    ] = None
    points: Annotated[
        list[SamplePoint] | None, Field(description="Bivariate samples on [0, 1]^2")
    ] = None
    m: Annotated[int, Field(ge=1, le=100_000, description="Number of polytopes")] = 200
    weaken: Annotated[int, Field(ge=0, description="Missing trials r")] = 0
    seed: Annotated[int, Field(ge=0, description="Random seed")] = 0
    corrected: Annotated[
        bool, Field(description="Use (count + 1) / (m + 1) instead of count / m")
    ] = False

    @model_validator(mode="after")
    def validate_source(self):
        if (self.counts is None) == (self.points is None):
            raise ValueError("exactly one of counts or points must be given")
        return self


class BinRequest(BaseModel):
    """Parameters for binning samples into a k x k table"""

    points: Annotated[list[SamplePoint], Field(description="Bivariate samples on [0, 1]^2")]
    k: Annotated[int, Field(ge=2, description="Resolution")]
