import asyncio
import logging
import time
from collections import defaultdict
from collections.abc import Iterable, Sequence

import numpy as np
from scipy import special

from dirichlet_ds.errors import EmptyInputError, ExperimentError
from dirichlet_ds.models.common_models import (
    DATA_STREAM_TAG,
    METHOD_STREAM_TAGS,
    Bound,
    Method,
)
from dirichlet_ds.models.ds_models import WeakeningParam
from dirichlet_ds.models.simulation_models import (
    EcdfCurve,
    HypothesisSpec,
    LabelledCurve,
    PValueRecord,
    SimulationConfig,
    SummaryRow,
)
from dirichlet_ds.uniformity_test import (
    bin_samples,
    chi_square_uniformity_test,
    ds_uniformity_test,
)

logger = logging.getLogger(__name__)

# 0.00, 0.01, ..., 1.00
ECDF_GRID = np.arange(101) / 100.0
DEFAULT_ALPHAS = (0.05, 0.1, 0.2)


def beta_inverse_cdf(u: np.ndarray, a: float, b: float) -> np.ndarray:
    """Beta(a, b) quantile; closed form when either shape is 1"""
    u = np.asarray(u, dtype=np.float64)
    if a == 1.0 and b == 1.0:
        return u.copy()
    if a == 1.0:
        return 1.0 - np.power(1.0 - u, 1.0 / b)
    if b == 1.0:
        return np.power(u, 1.0 / a)
    return special.betaincinv(a, b, u)


def generate_dataset(hyp: HypothesisSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    """n independent (x, y) pairs with Beta(a, b) marginals, as an (n, 2) array"""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return beta_inverse_cdf(rng.random((n, 2)), hyp.a, hyp.b)


def derive_seed(master_seed: int, dataset_index: int, method_tag: int, k: int) -> int:
    """64-bit stream seed for one (dataset, method, k) tuple.

    Pure function of its arguments, so results do not depend on evaluation order.
    """
    sequence = np.random.SeedSequence(
        entropy=master_seed, spawn_key=(dataset_index, method_tag, k)
    )
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def stream(master_seed: int, dataset_index: int, method_tag: int, k: int) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master_seed, dataset_index, method_tag, k))


def evaluate_dataset(config: SimulationConfig, dataset_index: int) -> list[PValueRecord]:
    """Generate one dataset, bin it at every resolution and run every configured method"""
    hyp = HypothesisSpec.from_tag(config.hypothesis)
    data_rng = stream(config.master_seed, dataset_index, DATA_STREAM_TAG, 0)
    points = generate_dataset(hyp, config.n, data_rng)
    weaken = WeakeningParam(r=config.weaken)

    records = []
    for k in config.resolutions:
        table = bin_samples(points, k)
        for method in config.methods:
            try:
                if method == Method.DS:
                    rng = stream(config.master_seed, dataset_index, METHOD_STREAM_TAGS[method], k)
                    report = ds_uniformity_test(table, config.m, weaken, rng)
                else:
                    report = chi_square_uniformity_test(table)
            except Exception as e:
                raise ExperimentError(dataset_index, method.value, k, str(e)) from e
            records.append(
                PValueRecord(
                    dataset_index=dataset_index,
                    method=method,
                    k=k,
                    p_upper=report.p_upper,
                    p_lower=report.p_lower,
                )
            )
    return records


async def _run_concurrently(config: SimulationConfig) -> list[list[PValueRecord]]:
    semaphore = asyncio.Semaphore(config.threads)

    async def evaluate(index: int) -> list[PValueRecord]:
        async with semaphore:
            records = await asyncio.to_thread(evaluate_dataset, config, index)
            logger.info("Dataset %d/%d done", index + 1, config.datasets)
            return records

    return await asyncio.gather(*[evaluate(index) for index in range(config.datasets)])


def run_experiment(config: SimulationConfig) -> list[PValueRecord]:
    """All records of the study, sorted by (dataset, method, k)"""
    logger.info(
        "Running %d datasets of n=%d under %s, k=%s, methods=%s, threads=%d",
        config.datasets,
        config.n,
        config.hypothesis.value,
        config.resolutions,
        [method.value for method in config.methods],
        config.threads,
    )
    if config.threads == 1:
        batches = []
        for index in range(config.datasets):
            batches.append(evaluate_dataset(config, index))
            logger.info("Dataset %d/%d done", index + 1, config.datasets)
    else:
        batches = asyncio.run(_run_concurrently(config))

    records = [record for batch in batches for record in batch]
    return sorted(records, key=PValueRecord.sort_key)


def ecdf(values: Sequence[float], grid: Sequence[float] = ECDF_GRID) -> EcdfCurve:
    """Fraction of `values` at or below each grid point"""
    values = np.sort(np.asarray(values, dtype=np.float64))
    if values.size == 0:
        raise EmptyInputError("ecdf needs at least one value")
    grid = np.asarray(grid, dtype=np.float64)
    counts = np.searchsorted(values, grid, side="right")
    return EcdfCurve(grid=grid, values=counts / values.size)


def _group(records: Iterable[PValueRecord]) -> dict[tuple[Method, int], list[PValueRecord]]:
    groups = defaultdict(list)
    for record in records:
        groups[(record.method, record.k)].append(record)
    return dict(sorted(groups.items(), key=lambda item: (item[0][0].value, item[0][1])))


def ecdf_curves(
    records: Iterable[PValueRecord], grid: Sequence[float] = ECDF_GRID
) -> list[LabelledCurve]:
    """Upper and lower p-value ECDFs per (method, k)"""
    curves = []
    for (method, k), group in _group(records).items():
        for bound in (Bound.UPPER, Bound.LOWER):
            values = [getattr(record, f"p_{bound.value}") for record in group]
            curves.append(LabelledCurve(method=method, k=k, bound=bound, curve=ecdf(values, grid)))
    return curves


def summarize(
    records: Iterable[PValueRecord], alphas: Sequence[float] = DEFAULT_ALPHAS
) -> list[SummaryRow]:
    """Mean p-values, mean gap and rejection rates at each alpha, per (method, k)"""
    rows = []
    for (method, k), group in _group(records).items():
        upper = np.array([record.p_upper for record in group])
        lower = np.array([record.p_lower for record in group])
        for alpha in alphas:
            rows.append(
                SummaryRow(
                    method=method,
                    k=k,
                    mean_p_upper=float(upper.mean()),
                    mean_p_lower=float(lower.mean()),
                    mean_gap=float((upper - lower).mean()),
                    alpha=alpha,
                    reject_upper=float(np.mean(upper <= alpha)),
                    reject_lower=float(np.mean(lower <= alpha)),
                )
            )
    return rows


def time_polytope_generation(k: int, m: int, seed: int = 0, n: int = 30) -> float:
    """Seconds spent drawing m polytopes and both distances for one uniform k x k table"""
    data_rng = stream(seed, 0, DATA_STREAM_TAG, 0)
    table = bin_samples(generate_dataset(HypothesisSpec.from_tag("h0"), n, data_rng), k)
    rng = stream(seed, 0, METHOD_STREAM_TAGS[Method.DS], k)
    start = time.perf_counter()
    ds_uniformity_test(table, m, None, rng)
    return time.perf_counter() - start
