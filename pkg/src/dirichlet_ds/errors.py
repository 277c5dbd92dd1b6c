class DsError(Exception):
    """Base class for Dirichlet DS inference errors"""


class DegenerateInputError(DsError, ValueError):
    """Fewer than two categories"""


class InvalidPartitionError(DsError, ValueError):
    """Category groups overlap, omit an index, or form fewer than two blocks"""


class DimensionMismatchError(DsError, ValueError):
    """Point and polytope (or estimator and resolution) disagree on dimension"""


class OutOfDomainError(DsError, ValueError):
    """Sample coordinate or chi-square argument outside its domain"""


class EmptyInputError(DsError, ValueError):
    """Operation needs at least one observation"""


class EmptyTableError(EmptyInputError):
    """Contingency table without observations"""


class ExperimentError(DsError, RuntimeError):
    """A single (dataset, method, k) evaluation failed inside run_experiment"""

    def __init__(self, dataset_index: int, method: str, k: int, reason: str):
        self.dataset_index = dataset_index
        self.method = method
        self.k = k
        super().__init__(
            f"Experiment failed at dataset={dataset_index} method={method} k={k}: {reason}"
        )


class InputFormatError(DsError, ValueError):
    """Malformed counts list, points file or config file"""
