"""Exact Euclidean distances from a point to Dirichlet DS polytopes.

The polytope {y : y_i >= w_i, sum(y) = 1} is the probability simplex scaled by w0 and
shifted by w, so the nearest point is found by the sort-and-threshold simplex projection:
with v = target - w, pick tau such that sum(max(v_i - tau, 0)) = w0 and return
w + max(v - tau, 0). max(., 0) is continuous in tau, so coordinates tied at tau need no
special handling. The farthest point is a vertex w + w0 e_i, and
||w + w0 e_i - t||^2 = ||w - t||^2 + w0^2 + 2 w0 (w_i - t_i) is maximised by the largest
w_i - t_i.
"""

from collections.abc import Sequence

import numpy as np

from dirichlet_ds.errors import DimensionMismatchError
from dirichlet_ds.models.ds_models import DsSimplexPolytope
from dirichlet_ds.models.geometry_models import DistancePair, ProbVector

CONTAINMENT_TOLERANCE = 1e-10


def _as_prob_vector(target: "ProbVector | Sequence[float] | np.ndarray") -> ProbVector:
    return target if isinstance(target, ProbVector) else ProbVector(p=target)


def _check_dimension(d: int, target: ProbVector) -> None:
    if target.d != d:
        raise DimensionMismatchError(f"target has {target.d} coordinates, polytope has {d}")


def _split_weight_matrix(weight_matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    weight_matrix = np.atleast_2d(np.asarray(weight_matrix, dtype=np.float64))
    return weight_matrix[:, 0], weight_matrix[:, 1:]


def shift_thresholds(shifted: np.ndarray, w0: np.ndarray) -> np.ndarray:
    """Row-wise tau with sum(max(shifted - tau, 0)) = w0.

    Rows with w0 = 0 get tau = max(shifted), collapsing the projection onto w.
    """
    shifted = np.atleast_2d(shifted)
    w0 = np.atleast_1d(w0)
    d = shifted.shape[1]
    ordered = -np.sort(-shifted, axis=1)
    partial = np.cumsum(ordered, axis=1)
    ranks = np.arange(1, d + 1)
    support = ordered * ranks > partial - w0[:, np.newaxis]
    last = d - 1 - np.argmax(support[:, ::-1], axis=1)
    rows = np.arange(shifted.shape[0])
    tau = (partial[rows, last] - w0) / (last + 1)
    return np.where(support.any(axis=1), tau, ordered[:, 0])


def project_rows(weight_matrix: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Project `target` onto each polytope of an (m, d + 1) weight matrix"""
    w0, w = _split_weight_matrix(weight_matrix)
    shifted = target[np.newaxis, :] - w
    tau = shift_thresholds(shifted, w0)
    return w + np.maximum(shifted - tau[:, np.newaxis], 0.0)


def batch_distances(
    weight_matrix: np.ndarray, target: "ProbVector | np.ndarray"
) -> tuple[np.ndarray, np.ndarray]:
    """Lower and upper distances from `target` to every polytope of an (m, d + 1) matrix"""
    target = _as_prob_vector(target)
    w0, w = _split_weight_matrix(weight_matrix)
    _check_dimension(w.shape[1], target)
    t = target.p

    offset = w - t[np.newaxis, :]
    base = np.sum(offset**2, axis=1)
    upper = np.sqrt(np.maximum(base + w0**2 + 2.0 * w0 * offset.max(axis=1), 0.0))

    feasible = np.all(offset <= 0.0, axis=1)
    projected = project_rows(weight_matrix, t)
    lower = np.sqrt(np.sum((projected - t[np.newaxis, :]) ** 2, axis=1))
    lower = np.where(feasible, 0.0, lower)
    return np.minimum(lower, upper), upper


def _weight_row(poly: DsSimplexPolytope) -> np.ndarray:
    return np.concatenate(([poly.w0], poly.lower_bounds))[np.newaxis, :]


def project_to_constrained_simplex(
    target: "ProbVector | Sequence[float]", poly: DsSimplexPolytope
) -> ProbVector:
    """Nearest point of `poly` to `target` in Euclidean norm"""
    target = _as_prob_vector(target)
    _check_dimension(poly.dimension, target)
    return ProbVector(p=project_rows(_weight_row(poly), target.p)[0])


def lower_distance(poly: DsSimplexPolytope, target: "ProbVector | Sequence[float]") -> float:
    """Distance to the nearest point of `poly`; exactly 0 for feasible targets"""
    return distance_pair(poly, target).lower


def upper_distance(poly: DsSimplexPolytope, target: "ProbVector | Sequence[float]") -> float:
    """Distance to the farthest vertex of `poly`"""
    return distance_pair(poly, target).upper


def distance_pair(
    poly: DsSimplexPolytope, target: "ProbVector | Sequence[float]"
) -> DistancePair:
    target = _as_prob_vector(target)
    _check_dimension(poly.dimension, target)
    lower, upper = batch_distances(_weight_row(poly), target)
    return DistancePair(lower=float(lower[0]), upper=float(upper[0]))


def contains(poly: DsSimplexPolytope, target: "ProbVector | Sequence[float]") -> bool:
    target = _as_prob_vector(target)
    _check_dimension(poly.dimension, target)
    return bool(np.all(target.p >= poly.lower_bounds - CONTAINMENT_TOLERANCE))
