"""Multi-resolution test of uniformity on [0, 1]^2.

Samples are binned into a k x k table, the row-major cell counts are treated as one
multinomial with d = k^2 categories, and m Dirichlet DS polytopes are compared against the
smoothed estimator p_hat = (z + k^-2) / (n + 1). With r_center = ||p_hat - uniform||,
p_upper = #{u_i >= r_center} / m and p_lower = #{l_i >= r_center} / m, where u_i and l_i
are the farthest and nearest distances from p_hat to polytope i.
"""

import logging
from collections.abc import Sequence

import numpy as np
from scipy import special

from dirichlet_ds.ds_core import as_category_counts, sample_ds_weight_matrix
from dirichlet_ds.errors import DimensionMismatchError, EmptyTableError, OutOfDomainError
from dirichlet_ds.geometry import batch_distances
from dirichlet_ds.models.common_models import Method
from dirichlet_ds.models.ds_models import CategoryCounts, WeakeningParam
from dirichlet_ds.models.geometry_models import ProbVector
from dirichlet_ds.models.table_models import ContingencyTable, SamplePoint, TestReport

logger = logging.getLogger(__name__)


def points_as_array(points: "Sequence[SamplePoint] | np.ndarray") -> np.ndarray:
    """(n, 2) float array from SamplePoint objects or any (n, 2) array-like"""
    if isinstance(points, np.ndarray):
        array = points.astype(np.float64, copy=False)
    elif len(points) and isinstance(points[0], SamplePoint):
        array = np.array([(point.x, point.y) for point in points], dtype=np.float64)
    else:
        array = np.asarray(points, dtype=np.float64)
    if array.size == 0:
        return np.empty((0, 2))
    if array.ndim != 2 or array.shape[1] != 2:
        raise ValueError(f"expected (n, 2) points, got shape {array.shape}")
    return array


def bin_samples(points: "Sequence[SamplePoint] | np.ndarray", k: int) -> ContingencyTable:
    """Count points per cell I_i x I_j, I_i = [(i-1)/k, i/k) with the last interval closed"""
    if k < 2:
        raise ValueError(f"resolution must be >= 2, got {k}")
    array = points_as_array(points)
    outside = ~((array >= 0.0) & (array <= 1.0))
    if np.any(outside):
        row = int(np.argmax(outside.any(axis=1)))
        raise OutOfDomainError(f"point {row} = {tuple(array[row])} lies outside [0, 1]^2")
    index = np.minimum(np.floor(array * k).astype(np.int64), k - 1)
    cells = np.bincount(index[:, 0] * k + index[:, 1], minlength=k * k)
    return ContingencyTable(k=k, cells=cells)


def point_estimator_from_counts(counts: "CategoryCounts | Sequence[int]") -> ProbVector:
    """Smoothed estimator (z_i + 1/d) / (n + 1)"""
    counts = as_category_counts(counts)
    return ProbVector(p=(counts.counts + 1.0 / counts.d) / (counts.n + 1.0))


def point_estimator(table: ContingencyTable) -> ProbVector:
    return point_estimator_from_counts(CategoryCounts(counts=table.cells))


def center_distance(p_hat: ProbVector, k: int) -> float:
    """Euclidean distance from p_hat to the uniform vector (k^-2, ..., k^-2)"""
    d = k * k
    if p_hat.d != d:
        raise DimensionMismatchError(f"estimator has {p_hat.d} coordinates, k={k} needs {d}")
    return float(np.linalg.norm(p_hat.p - 1.0 / d))


def table_center_distance(table: ContingencyTable) -> float:
    """center_distance of the table's estimator, exactly 0 for equal cells.

    p_hat_i - 1/d = (d z_i - n) / (d (n + 1)), so the numerator stays in integers.
    """
    d = table.cells.size
    offsets = d * table.cells - table.n
    return float(np.linalg.norm(offsets) / (d * (table.n + 1)))


def ds_uniformity_test(
    table: ContingencyTable,
    m: int,
    weaken: WeakeningParam | None,
    rng: np.random.Generator,
    corrected: bool = False,
) -> TestReport:
    """Upper and lower DS p-values of uniformity at the table's resolution.

    Counts use `>=` against r_center with no tolerance. `corrected` switches to the
    (count + 1) / (m + 1) finite-sample form, off by default.
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    counts = CategoryCounts(counts=table.cells)
    p_hat = point_estimator(table)
    r_center = table_center_distance(table)

    weight_matrix = sample_ds_weight_matrix(counts, weaken, rng, m)
    lower, upper = batch_distances(weight_matrix, p_hat)

    exceed_upper = int(np.count_nonzero(upper >= r_center))
    exceed_lower = int(np.count_nonzero(lower >= r_center))
    if corrected:
        p_upper = (exceed_upper + 1) / (m + 1)
        p_lower = (exceed_lower + 1) / (m + 1)
    else:
        p_upper = exceed_upper / m
        p_lower = exceed_lower / m
    logger.debug(
        "ds test k=%d n=%d r_center=%.6g p_upper=%.4f p_lower=%.4f",
        table.k,
        table.n,
        r_center,
        p_upper,
        p_lower,
    )
    return TestReport(
        method=Method.DS,
        k=table.k,
        n=table.n,
        p_upper=p_upper,
        p_lower=p_lower,
        r_center=r_center,
        m=m,
    )


def chi_square_sf(x: float, df: int) -> float:
    """Upper tail Q(df/2, x/2) of the chi-square distribution"""
    if not x >= 0.0:
        raise OutOfDomainError(f"chi-square argument must be non-negative, got {x}")
    if df < 1:
        raise ValueError(f"degrees of freedom must be positive, got {df}")
    return float(special.gammaincc(df / 2.0, x / 2.0))


def pearson_statistic(table: ContingencyTable) -> float:
    expected = table.n / table.cells.size
    return float(np.sum((table.cells - expected) ** 2) / expected)


def chi_square_uniformity_test(table: ContingencyTable) -> TestReport:
    """Pearson goodness of fit against equal cell probabilities, k^2 - 1 degrees of freedom"""
    if table.n == 0:
        raise EmptyTableError("chi-square test needs at least one observation")
    statistic = pearson_statistic(table)
    p_value = chi_square_sf(statistic, table.cells.size - 1)
    return TestReport(
        method=Method.CHI_SQUARE,
        k=table.k,
        n=table.n,
        p_upper=p_value,
        p_lower=p_value,
        r_center=table_center_distance(table),
        statistic=statistic,
    )
