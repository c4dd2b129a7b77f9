"""Boolean matrix factorization toolkit.

Median-expansion pattern mining over bit-packed binary matrices, with a
seeded simulation generator, evaluation metrics, an exhaustive
small-instance search, text-format matrix I/O, and a batch CLI.
"""

from .boolmat import (
    BinaryMatrix,
    BinaryVector,
    UtlView,
    axis_sums,
    bool_product,
    complement,
    cost_gamma,
    dot,
    elementwise,
    rank1_product,
    utl_rearrange,
)
from .factorize import (
    FactorResult,
    MebfConfig,
    bidirectional_growth,
    mebf_factorize,
    weak_signal_detection,
)
from .matio import (
    FORMATS,
    MatrixFormatError,
    RealMatrix,
    binarize,
    mask_denoise,
    read_matrix,
    write_matrix,
)
from .metrics import (
    MetricsReport,
    UndefinedMetricError,
    build_report,
    coverage_rate,
    density,
    reconstruction_error,
    report_from_factors,
)
from .oracle import exhaustive_bmf, naive_bool_product
from .simulate import (
    SimulatedInstance,
    SimulationSpec,
    preset_grid,
    replicate_seed,
    simulate,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryMatrix",
    "BinaryVector",
    "FORMATS",
    "FactorResult",
    "MatrixFormatError",
    "MebfConfig",
    "MetricsReport",
    "RealMatrix",
    "SimulatedInstance",
    "SimulationSpec",
    "UndefinedMetricError",
    "UtlView",
    "axis_sums",
    "bidirectional_growth",
    "binarize",
    "bool_product",
    "build_report",
    "complement",
    "cost_gamma",
    "coverage_rate",
    "density",
    "dot",
    "elementwise",
    "exhaustive_bmf",
    "mask_denoise",
    "mebf_factorize",
    "naive_bool_product",
    "preset_grid",
    "rank1_product",
    "read_matrix",
    "reconstruction_error",
    "replicate_seed",
    "report_from_factors",
    "simulate",
    "utl_rearrange",
    "weak_signal_detection",
    "write_matrix",
]
