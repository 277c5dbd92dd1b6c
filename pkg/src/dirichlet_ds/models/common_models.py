from enum import Enum
from typing import Annotated

import numpy as np
from pydantic import BeforeValidator, ConfigDict


class Method(str, Enum):
    """Uniformity test methods"""

    DS = "ds"
    CHI_SQUARE = "chisq"

    @classmethod
    def parse(cls, value: "str | Method") -> "Method":
        """Accept the enum value or the long spelling 'chi-square'"""
        if isinstance(value, Method):
            return value
        text = str(value).strip().lower()
        if text in ("chi-square", "chi_square", "chi2"):
            return cls.CHI_SQUARE
        return cls(text)


class Bound(str, Enum):
    """Which p-value of a report an ECDF describes"""

    UPPER = "upper"
    LOWER = "lower"


class HypothesisTag(str, Enum):
    """Data generating hypotheses of the simulation study"""

    H0 = "h0"
    H1 = "h1"


# Stream tags mixed into derived seeds; the data stream is shared by all methods
DATA_STREAM_TAG = 0
METHOD_STREAM_TAGS = {Method.DS: 1, Method.CHI_SQUARE: 2}


def _as_float_array(value) -> np.ndarray:
    array = np.array(value, dtype=np.float64)
    if array.ndim != 1:
        raise ValueError("expected a one-dimensional vector")
    array.setflags(write=False)
    return array


def _as_int_array(value) -> np.ndarray:
    raw = np.asarray(value)
    if raw.ndim != 1:
        raise ValueError("expected a one-dimensional vector")
    if raw.size and not np.all(np.equal(np.mod(raw, 1), 0)):
        raise ValueError("counts must be integers")
    array = raw.astype(np.int64)
    array.setflags(write=False)
    return array


FloatVector = Annotated[np.ndarray, BeforeValidator(_as_float_array)]
IntVector = Annotated[np.ndarray, BeforeValidator(_as_int_array)]

ARRAY_MODEL_CONFIG = ConfigDict(arbitrary_types_allowed=True, frozen=True)
