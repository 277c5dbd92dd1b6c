"""Independent reference computations used by the tests"""

import numpy as np
from scipy import optimize

from dirichlet_ds.models.ds_models import DsSimplexPolytope, DsWeights


def random_polytope(rng: np.random.Generator, d: int) -> DsSimplexPolytope:
    """Polytope from a flat Dirichlet draw over (w0, w_1..w_d)"""
    draw = rng.dirichlet(np.ones(d + 1))
    return DsSimplexPolytope(weights=DsWeights(w0=float(draw[0]), w=draw[1:]))


def random_target(rng: np.random.Generator, d: int) -> np.ndarray:
    """Mix of interior points and points pushed towards a simplex vertex"""
    if rng.random() < 0.3:
        target = rng.dirichlet(np.full(d, 0.2))
    else:
        target = rng.dirichlet(np.ones(d))
    return target / target.sum()


def bisection_projection(target: np.ndarray, w: np.ndarray, w0: float) -> np.ndarray:
    """Projection onto {y >= w, sum(y) = 1} by bisection on the shift"""
    shifted = target - w
    if w0 == 0.0:
        return w.copy()
    low, high = shifted.min() - w0, shifted.max()
    for _ in range(200):
        middle = 0.5 * (low + high)
        if np.maximum(shifted - middle, 0.0).sum() > w0:
            low = middle
        else:
            high = middle
    return w + np.maximum(shifted - 0.5 * (low + high), 0.0)


def minimize_projection(target: np.ndarray, w: np.ndarray, w0: float) -> np.ndarray:
    """Nearest point of {y >= w, sum(y) = 1} to target by a generic SLSQP solve"""
    d = target.size
    result = optimize.minimize(
        lambda y: float(np.sum((y - target) ** 2)),
        w + w0 / d,
        jac=lambda y: 2.0 * (y - target),
        method="SLSQP",
        bounds=[(low, None) for low in w],
        constraints=[{"type": "eq", "fun": lambda y: y.sum() - 1.0, "jac": lambda y: np.ones(d)}],
        options={"ftol": 1e-15, "maxiter": 1000},
    )
    return result.x


def dirichlet_moments(shapes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form means and variances of a Dirichlet distribution"""
    total = shapes.sum()
    means = shapes / total
    variances = shapes * (total - shapes) / (total**2 * (total + 1.0))
    return means, variances
