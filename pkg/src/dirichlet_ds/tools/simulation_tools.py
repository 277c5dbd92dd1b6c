import asyncio
import logging
from typing import Any

from fastmcp import FastMCP

from dirichlet_ds.models.simulation_models import SimulationConfig
from dirichlet_ds.simulation import run_experiment, summarize

logger = logging.getLogger(__name__)


def simulation_result(config: SimulationConfig, include_records: bool) -> dict[str, Any]:
    records = run_experiment(config)
    result = {
        "config": config.model_dump(mode="json"),
        "record_count": len(records),
        "summary": [row.model_dump(mode="json") for row in summarize(records)],
    }
    if include_records:
        result["records"] = [record.model_dump(mode="json") for record in records]
    return result


def register_simulation_tools(mcp: FastMCP):
    """Register the simulation study tool"""

    @mcp.tool()
    async def run_simulation(config: SimulationConfig, include_records: bool = False) -> Any:
        """
        Run the DS vs chi-square simulation study and summarise calibration and power.

        Datasets of n samples are drawn under h0 (Beta(1,1) marginals) or h1 (Beta(1,2)
        marginals), binned at every resolution and tested with every method.

        Args:
            config: SimulationConfig containing:
                - n: Samples per dataset (default: 30)
                - datasets: Number of datasets (default: 100)
                - resolutions: Resolutions k (default: [2, 3, 6])
                - m: Polytopes per DS test (default: 200)
                - weaken: Missing trials r (default: 0)
                - hypothesis: 'h0' or 'h1' (default: 'h0')
                - methods: Subset of ['ds', 'chisq']
                - master_seed: Seed (default: 0)
                - threads: Concurrent datasets (default: 1)
            include_records: Also return every p-value record (default: False)

        Returns:
            Dictionary with config, record_count, summary rows of mean p-values, mean gap
            and rejection rates at alpha 0.05/0.1/0.2, and optionally records
        """
        try:
            return await asyncio.to_thread(simulation_result, config, include_records)
        except Exception as e:
            logger.error("Simulation failed: %s", e)
            return f"Error running simulation: {str(e)}"
