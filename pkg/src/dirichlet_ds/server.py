import logging

from fastmcp import FastMCP
from starlette.responses import JSONResponse

from dirichlet_ds.tools.sampling_tools import register_sampling_tools
from dirichlet_ds.tools.simulation_tools import register_simulation_tools
from dirichlet_ds.tools.testing_tools import register_testing_tools

logger = logging.getLogger(__name__)

mcp = FastMCP(
    name="DirichletDsServer",
    instructions="""
    This server provides Dirichlet Dempster-Shafer (DS) inference for multinomial
    proportions and a multi-resolution test of uniformity for bivariate data on [0, 1]^2.

    ## Quick Tool Selection Guide:

    **"What does my count data say about the category proportions?"**
    → Use sample_ds_polytopes() with the observed counts

    **"Is this sample uniform / are X and Y independent at resolution k?"**
    → Use run_uniformity_test() with points or a k*k table of counts

    **"How well calibrated is the DS test compared with chi-square?"**
    → Use run_simulation()

    ## Reading the results:
    - p_upper is used as the usual p-value; p_lower <= p_upper always
    - A large gap p_upper - p_lower means the data cannot decide at that resolution
    - weaken=r accounts for r observations that may be missing

    ## Performance Tips:
    - Keep m at a few hundred polytopes; k*k categories up to thousands are fine
    - Use threads > 1 in run_simulation for many datasets
    """,
)


@mcp.custom_route("/health", methods=["GET"])
async def health_check(request):
    return JSONResponse({"status": "healthy", "service": "ds-uniformity-mcp"})


logger.info("Registering tools")
register_sampling_tools(mcp)
register_testing_tools(mcp)
register_simulation_tools(mcp)
app = mcp.http_app(stateless_http=True)


def main():
    """Run the server in stdio mode"""
    logging.basicConfig(level=logging.INFO)
    logger.info("Starting Dirichlet DS MCP Server")
    mcp.run()


if __name__ == "__main__":
    main()
