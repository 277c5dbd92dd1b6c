import argparse
import logging
import sys
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from dirichlet_ds.ds_core import as_category_counts, sample_ds_weight_matrix
from dirichlet_ds.errors import DsError, ExperimentError, OutOfDomainError
from dirichlet_ds.formats import (
    parse_int_list,
    parse_str_list,
    read_config_file,
    read_points,
    write_bench,
    write_curves,
    write_polytopes,
    write_records,
    write_reports,
    write_summary,
    write_table,
)
from dirichlet_ds.models.ds_models import WeakeningParam
from dirichlet_ds.models.simulation_models import SimulationConfig
from dirichlet_ds.models.table_models import ContingencyTable
from dirichlet_ds.simulation import (
    ecdf_curves,
    run_experiment,
    summarize,
    time_polytope_generation,
)
from dirichlet_ds.uniformity_test import (
    bin_samples,
    chi_square_uniformity_test,
    ds_uniformity_test,
)

logger = logging.getLogger(__name__)

DEFAULT_SEED = 0

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def resolution(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"resolution must be >= 2, got {text}")
    return value


def resolution_list(text: str) -> list[int]:
    values = parse_int_list(text, "resolutions")
    if any(value < 2 for value in values):
        raise argparse.ArgumentTypeError(f"resolutions must be >= 2, got {text}")
    return values


def cmd_sample(args: argparse.Namespace) -> int:
    """Dump m Dirichlet DS polytopes for inline counts"""
    counts = as_category_counts(parse_int_list(args.counts))
    rng = np.random.default_rng(args.seed)
    weight_matrix = sample_ds_weight_matrix(counts, WeakeningParam(r=args.weaken), rng, args.m)
    write_polytopes(sys.stdout, weight_matrix)
    return EXIT_OK


def _load_table(args: argparse.Namespace) -> ContingencyTable:
    if args.points is not None:
        points = read_points(args.points)
        if points.shape[0] == 0:
            logger.warning("Points file %s holds no samples", args.points)
        return bin_samples(points, args.k)
    return ContingencyTable(k=args.k, cells=parse_int_list(args.counts))


def cmd_test(args: argparse.Namespace) -> int:
    """DS and chi-square uniformity test of one table"""
    table = _load_table(args)
    rng = np.random.default_rng(args.seed)
    reports = [
        ds_uniformity_test(table, args.m, WeakeningParam(r=args.weaken), rng, args.corrected)
    ]
    if table.n > 0:
        reports.append(chi_square_uniformity_test(table))
    else:
        logger.warning("Empty table, chi-square row skipped")
    write_reports(sys.stdout, reports)
    return EXIT_OK


def cmd_bin(args: argparse.Namespace) -> int:
    points = read_points(args.points)
    if points.shape[0] == 0:
        logger.warning("Points file %s holds no samples, writing an all-zero table", args.points)
    write_table(sys.stdout, bin_samples(points, args.k))
    return EXIT_OK


def simulation_config(args: argparse.Namespace) -> tuple[SimulationConfig, Path]:
    """Config file values overridden by explicitly given flags"""
    values = read_config_file(args.config) if args.config is not None else {}
    for name in ("n", "datasets", "resolutions", "m", "weaken", "hypothesis", "methods"):
        flag = getattr(args, name)
        if flag is not None:
            values[name] = flag
    for name in ("seed", "threads", "out"):
        flag = getattr(args, name)
        if flag is not None:
            values[name] = flag

    if isinstance(values.get("resolutions"), str):
        values["resolutions"] = parse_int_list(values["resolutions"], "resolutions")
    if isinstance(values.get("methods"), str):
        values["methods"] = parse_str_list(values["methods"])
    out = values.pop("out", None)
    if out is None:
        raise argparse.ArgumentTypeError("simulate needs --out or an 'out' config key")
    values["master_seed"] = values.pop("seed", DEFAULT_SEED)
    return SimulationConfig(**values), Path(out)


def cmd_simulate(args: argparse.Namespace) -> int:
    """Write records.csv, ecdf.csv and summary.csv for the simulation study"""
    config, out = simulation_config(args)
    records = run_experiment(config)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "records.csv", "w", encoding="utf-8", newline="") as handle:
        write_records(handle, records)
    with open(out / "ecdf.csv", "w", encoding="utf-8", newline="") as handle:
        write_curves(handle, ecdf_curves(records))
    with open(out / "summary.csv", "w", encoding="utf-8", newline="") as handle:
        write_summary(handle, summarize(records))
    logger.info("Wrote %d records to %s", len(records), out)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    """Time polytope generation plus distances per resolution"""
    timings = [
        (k, args.m, time_polytope_generation(k, args.m, args.seed)) for k in args.resolutions
    ]
    write_bench(sys.stdout, timings)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ds-uniformity",
        description="Dirichlet Dempster-Shafer inference and multi-resolution uniformity tests",
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging verbosity (default: WARNING)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    sample = subparsers.add_parser("sample", help="Draw Dirichlet DS polytopes")
    sample.add_argument("--counts", required=True, help="Comma-separated category counts")
    sample.add_argument("-m", type=positive_int, required=True, help="Number of polytopes")
    sample.add_argument("--weaken", type=non_negative_int, default=0, help="Missing trials r")
    sample.add_argument("--seed", type=non_negative_int, default=DEFAULT_SEED)
    sample.set_defaults(handler=cmd_sample)

    test = subparsers.add_parser("test", help="Test uniformity of one sample or table")
    source = test.add_mutually_exclusive_group(required=True)
    source.add_argument("--points", type=Path, help="File of 'x,y' lines")
    source.add_argument("--counts", help="k*k comma-separated cell counts, row-major")
    test.add_argument("-k", type=resolution, required=True, help="Resolution")
    test.add_argument("-m", type=positive_int, required=True, help="Number of polytopes")
    test.add_argument("--weaken", type=non_negative_int, default=0, help="Missing trials r")
    test.add_argument("--seed", type=non_negative_int, default=DEFAULT_SEED)
    test.add_argument(
        "--corrected",
        action="store_true",
        help="Use (count + 1) / (m + 1) instead of count / m",
    )
    test.set_defaults(handler=cmd_test)

    bin_parser = subparsers.add_parser("bin", help="Bin points into a k x k table")
    bin_parser.add_argument("--points", type=Path, required=True, help="File of 'x,y' lines")
    bin_parser.add_argument("-k", type=resolution, required=True, help="Resolution")
    bin_parser.set_defaults(handler=cmd_bin)

    simulate = subparsers.add_parser("simulate", help="Run the simulation study")
    simulate.add_argument("--config", type=Path, help="key=value file; flags override it")
    simulate.add_argument("--n", type=positive_int, help="Samples per dataset (default: 30)")
    simulate.add_argument("--datasets", type=positive_int, help="Datasets (default: 100)")
    simulate.add_argument("--resolutions", help="Comma-separated k values (default: 2,3,6)")
    simulate.add_argument("-m", type=positive_int, help="Polytopes per ds test (default: 200)")
    simulate.add_argument("--weaken", type=non_negative_int, help="Missing trials r")
    simulate.add_argument("--hypothesis", choices=["h0", "h1"], help="Default: h0")
    simulate.add_argument("--methods", help="Comma-separated subset of ds,chisq")
    simulate.add_argument("--seed", type=non_negative_int, help="Master seed (default: 0)")
    simulate.add_argument("--threads", type=positive_int, help="Concurrent datasets")
    simulate.add_argument("--out", type=Path, help="Output directory")
    simulate.set_defaults(handler=cmd_simulate)

    bench = subparsers.add_parser("bench", help="Time polytope generation per resolution")
    bench.add_argument("-m", type=positive_int, default=200, help="Number of polytopes")
    bench.add_argument(
        "--resolutions",
        type=resolution_list,
        default=[2, 3, 6],
    )
    bench.add_argument("--seed", type=non_negative_int, default=DEFAULT_SEED)
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    """Console entry point; returns the process exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.handler(args)
    except OutOfDomainError as e:
        logger.error("%s", e)
        return EXIT_DOMAIN
    except ExperimentError as e:
        logger.error("%s", e)
        return EXIT_DOMAIN if isinstance(e.__cause__, OutOfDomainError) else EXIT_FAILURE
    except (ValidationError, DsError, argparse.ArgumentTypeError) as e:
        logger.error("%s", e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
