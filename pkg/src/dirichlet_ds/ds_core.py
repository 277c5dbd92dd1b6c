"""Dirichlet DS inference for multinomial proportions.

A DS draw is W = (W0, W1, ..., Wd) ~ Dirichlet(1 + r, z_1, ..., z_d), obtained from
independent Gamma(shape, 1) variates divided by their sum. The focal element is the
simplex {p : p_i >= W_i, sum(p) = 1}. A zero count has Gamma shape 0, the point mass
at 0, so empty categories always receive weight exactly 0.
"""

import logging
import operator
from collections.abc import Sequence

import numpy as np
from pydantic import ValidationError

from dirichlet_ds.errors import DegenerateInputError, InvalidPartitionError
from dirichlet_ds.models.ds_models import (
    CategoryCounts,
    DsSimplexPolytope,
    DsWeights,
    WeakeningParam,
)

logger = logging.getLogger(__name__)

Partition = Sequence[Sequence[int]]


def as_category_counts(counts: "CategoryCounts | Sequence[int] | np.ndarray") -> CategoryCounts:
    """Coerce raw counts; only fewer than two categories becomes DegenerateInputError"""
    if isinstance(counts, CategoryCounts):
        return counts
    try:
        return CategoryCounts(counts=counts)
    except ValidationError as e:
        if np.size(counts) < 2:
            raise DegenerateInputError(
                f"need at least 2 categories, got {np.size(counts)}"
            ) from e
        raise


def dirichlet_shapes(counts: CategoryCounts, weaken: WeakeningParam | None = None) -> np.ndarray:
    """Concentrations (1 + r, z_1, ..., z_d)"""
    r = weaken.r if weaken is not None else 0
    return np.concatenate(([1.0 + r], counts.counts.astype(np.float64)))


def _normalized_gamma(shapes: np.ndarray, rng: np.random.Generator, size=None) -> np.ndarray:
    draws = rng.gamma(shapes, 1.0, size=size)
    # Gamma(0) is the point mass at 0
    draws = np.where(shapes == 0.0, 0.0, draws)
    return draws / draws.sum(axis=-1, keepdims=True)


def sample_ds_weights(
    counts: CategoryCounts,
    weaken: WeakeningParam | None,
    rng: np.random.Generator,
) -> DsWeights:
    """Draw one DsWeights from Dirichlet(1 + r, z_1, ..., z_d).

    All-zero counts are valid and always give w0 = 1 (total ignorance, the whole simplex).
    """
    counts = as_category_counts(counts)
    draw = _normalized_gamma(dirichlet_shapes(counts, weaken), rng)
    return DsWeights(w0=float(draw[0]), w=draw[1:])


def sample_ds_weight_matrix(
    counts: CategoryCounts,
    weaken: WeakeningParam | None,
    rng: np.random.Generator,
    m: int,
) -> np.ndarray:
    """Draw m i.i.d. weights at once; returns an (m, d + 1) array whose column 0 is w0"""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    counts = as_category_counts(counts)
    shapes = dirichlet_shapes(counts, weaken)
    logger.debug("Drawing %d DS polytopes over %d categories", m, counts.d)
    return _normalized_gamma(shapes, rng, size=(m, shapes.size))


def polytope_from_weights(weights: DsWeights) -> DsSimplexPolytope:
    """Focal element of one draw; its vertices are w + w0 e_i, i = 1..d"""
    return DsSimplexPolytope(weights=weights)


def validate_partition(groups: Partition, d: int) -> list[list[int]]:
    """Check that `groups` (0-based indices) partitions range(d) into at least two blocks"""
    try:
        blocks = [[operator.index(index) for index in block] for block in groups]
    except TypeError as e:
        raise InvalidPartitionError(f"category indices must be integers: {groups}") from e
    if len(blocks) < 2:
        raise InvalidPartitionError(f"need at least 2 blocks, got {len(blocks)}")
    if any(not block for block in blocks):
        raise InvalidPartitionError("blocks must not be empty")
    flat = [index for block in blocks for index in block]
    if len(flat) != len(set(flat)):
        raise InvalidPartitionError("blocks overlap")
    if sorted(flat) != list(range(d)):
        missing = sorted(set(range(d)) - set(flat))
        extra = sorted(set(flat) - set(range(d)))
        raise InvalidPartitionError(
            f"not a partition of 0..{d - 1}: missing {missing}, extra {extra}"
        )
    return blocks


def merge_categories(counts: CategoryCounts, groups: Partition) -> CategoryCounts:
    """Sum counts within each block, in block order"""
    counts = as_category_counts(counts)
    blocks = validate_partition(groups, counts.d)
    return CategoryCounts(counts=[int(counts.counts[block].sum()) for block in blocks])


def merge_weights(weights: DsWeights, groups: Partition) -> DsWeights:
    """Sum lower bounds within each block; the slack w0 is unchanged"""
    row = np.concatenate(([weights.w0], weights.w))[np.newaxis, :]
    merged = merge_weight_matrix(row, groups)
    return DsWeights(w0=float(merged[0, 0]), w=merged[0, 1:])


def merge_weight_matrix(weight_matrix: np.ndarray, groups: Partition) -> np.ndarray:
    """merge_weights over every row of an (m, d + 1) draw matrix; column 0 passes through"""
    blocks = validate_partition(groups, weight_matrix.shape[1] - 1)
    lower_bounds = weight_matrix[:, 1:]
    merged = [lower_bounds[:, block].sum(axis=1) for block in blocks]
    return np.column_stack([weight_matrix[:, 0]] + merged)


def append_empty_categories(counts: CategoryCounts, extra: int) -> CategoryCounts:
    if extra < 0:
        raise ValueError(f"extra must be non-negative, got {extra}")
    counts = as_category_counts(counts)
    return CategoryCounts(counts=np.concatenate((counts.counts, np.zeros(extra, np.int64))))
