import logging
from typing import Any

import numpy as np
from fastmcp import FastMCP

from dirichlet_ds.ds_core import as_category_counts, sample_ds_weight_matrix
from dirichlet_ds.models.ds_models import WeakeningParam
from dirichlet_ds.models.request_models import PolytopeSampleRequest

logger = logging.getLogger(__name__)


def sample_polytope_rows(request: PolytopeSampleRequest) -> dict[str, Any]:
    counts = as_category_counts(request.counts)
    rng = np.random.default_rng(request.seed)
    weaken = WeakeningParam(r=request.weaken)
    weight_matrix = sample_ds_weight_matrix(counts, weaken, rng, request.m)
    rows = []
    for row in weight_matrix:
        entry = {"w0": float(row[0]), "w": row[1:].tolist()}
        if request.include_vertices:
            entry["vertices"] = (row[1:][np.newaxis, :] + row[0] * np.eye(counts.d)).tolist()
        rows.append(entry)
    return {"d": counts.d, "n": counts.n, "m": request.m, "rows": rows}


def register_sampling_tools(mcp: FastMCP):
    """Register Dirichlet DS sampling tools"""

    @mcp.tool()
    async def sample_ds_polytopes(sample_request: PolytopeSampleRequest) -> Any:
        """
        Draw Dirichlet Dempster-Shafer polytopes for observed multinomial counts.

        Each draw (w0, w_1, ..., w_d) ~ Dirichlet(1 + weaken, counts) defines the focal
        element {p : p_i >= w_i, sum(p) = 1}, a simplex with vertices w + w0 e_i.

        Args:
            sample_request: PolytopeSampleRequest containing:
                - counts: Category counts (at least 2 categories)
                - m: Number of polytopes (default: 10)
                - weaken: Number of missing observations r (default: 0)
                - seed: Random seed (default: 0)
                - include_vertices: Also return vertices (default: False)

        Returns:
            Dictionary with d, n, m and rows of {w0, w[, vertices]}

        Examples:
            - Total ignorance: counts=[0, 0, 0] always gives w0=1
            - Weakened inference: counts=[3, 5, 2], weaken=4
        """
        try:
            return sample_polytope_rows(sample_request)
        except Exception as e:
            logger.error("Sampling failed: %s", e)
            return f"Error sampling DS polytopes: {str(e)}"
