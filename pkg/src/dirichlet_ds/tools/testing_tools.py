import logging
from typing import Any

import numpy as np
from fastmcp import FastMCP

from dirichlet_ds.models.ds_models import WeakeningParam
from dirichlet_ds.models.request_models import BinRequest, UniformityTestRequest
from dirichlet_ds.models.table_models import ContingencyTable
from dirichlet_ds.uniformity_test import (
    bin_samples,
    chi_square_uniformity_test,
    ds_uniformity_test,
)

logger = logging.getLogger(__name__)


def uniformity_reports(request: UniformityTestRequest) -> dict[str, Any]:
    if request.points is not None:
        table = bin_samples(request.points, request.k)
    else:
        table = ContingencyTable(k=request.k, cells=request.counts)
    rng = np.random.default_rng(request.seed)
    reports = [
        ds_uniformity_test(
            table, request.m, WeakeningParam(r=request.weaken), rng, request.corrected
        )
    ]
    if table.n > 0:
        reports.append(chi_square_uniformity_test(table))
    return {
        "k": table.k,
        "n": table.n,
        "reports": [report.model_dump(mode="json", exclude_none=True) for report in reports],
    }


def register_testing_tools(mcp: FastMCP):
    """Register binning and uniformity test tools"""

    @mcp.tool()
    async def run_uniformity_test(test_request: UniformityTestRequest) -> Any:
        """
        Test whether bivariate data (or a k x k table) is uniform at resolution k.

        The Dirichlet DS test returns an upper and a lower p-value; the upper one is used as
        an ordinary p-value and the gap between them measures lack of knowledge. The
        classical chi-square test is returned alongside when the table is not empty.

        Args:
            test_request: UniformityTestRequest containing:
                - k: Resolution (table has k*k cells)
                - counts: Row-major cell counts, OR
                - points: List of {x, y} samples on [0, 1]^2
                - m: Number of DS polytopes (default: 200)
                - weaken: Number of missing observations r (default: 0)
                - seed: Random seed (default: 0)
                - corrected: Use the (count + 1)/(m + 1) form (default: False)

        Returns:
            Dictionary with k, n and reports of {method, k, n, p_upper, p_lower, r_center,
            m (ds only), statistic (chisq only)}

        Examples:
            - Balanced table: k=2, counts=[5, 5, 5, 5] gives p_upper=p_lower=1
            - Skewed table: k=2, counts=[10, 5, 5, 10]
        """
        try:
            return uniformity_reports(test_request)
        except Exception as e:
            logger.error("Uniformity test failed: %s", e)
            return f"Error running uniformity test: {str(e)}"

    @mcp.tool()
    async def bin_points(bin_request: BinRequest) -> Any:
        """
        Bin bivariate samples on [0, 1]^2 into a k x k contingency table.

        Intervals are [(i-1)/k, i/k) with the last one closed at 1.

        Args:
            bin_request: BinRequest with points (list of {x, y}) and k

        Returns:
            Dictionary with k, n and cells as k rows of k counts
        """
        try:
            table = bin_samples(bin_request.points, bin_request.k)
            return {"k": table.k, "n": table.n, "cells": table.as_matrix().tolist()}
        except Exception as e:
            return f"Error binning points: {str(e)}"
