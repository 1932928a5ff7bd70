"""Bi-level image thresholding by entropy maximization.

Selects thresholds for 8-bit grayscale images by maximizing Shannon, Tsallis,
or Kaniadakis entropy over the histogram, sweeps entropic indices, and ranks
the resulting binarizations by their edge-pixel count.
"""

from .entropy import (
    ENTROPY_KINDS,
    KANIADAKIS,
    SHANNON,
    TSALLIS,
    Distribution,
    EntropyFunctional,
    coentropy,
    kaniadakis_compose,
    kaniadakis_entropy,
    kappa_log,
    log_multiplicity,
    q_log,
    shannon_entropy,
    tsallis_compose,
    tsallis_entropy,
)
from .imaging import (
    BiLevelImage,
    GrayImage,
    Histogram,
    PgmParseError,
    UnsupportedFormatError,
    build_histogram,
    load_image,
    to_grayscale,
    write_bilevel,
)
from .sweep import (
    DEFAULT_INDEX_GRID,
    DEFAULT_JUMP_TOLERANCE,
    SweepRow,
    SweepTable,
    ThresholdJump,
    TransitionReport,
    detect_transitions,
    mirror_check,
    select_best,
    sweep,
)
from .thresholding import (
    ClassDistribution,
    InfeasibleHistogramError,
    ThresholdResult,
    binarize,
    edge_pixel_count,
    optimize_threshold,
    split,
    total_entropy,
)

__version__ = "0.1.0"

__all__ = [
    "BiLevelImage",
    "ClassDistribution",
    "DEFAULT_INDEX_GRID",
    "DEFAULT_JUMP_TOLERANCE",
    "Distribution",
    "ENTROPY_KINDS",
    "EntropyFunctional",
    "GrayImage",
    "Histogram",
    "InfeasibleHistogramError",
    "KANIADAKIS",
    "PgmParseError",
    "SHANNON",
    "SweepRow",
    "SweepTable",
    "TSALLIS",
    "ThresholdJump",
    "ThresholdResult",
    "TransitionReport",
    "UnsupportedFormatError",
    "binarize",
    "build_histogram",
    "coentropy",
    "detect_transitions",
    "edge_pixel_count",
    "kaniadakis_compose",
    "kaniadakis_entropy",
    "kappa_log",
    "load_image",
    "log_multiplicity",
    "mirror_check",
    "optimize_threshold",
    "q_log",
    "select_best",
    "shannon_entropy",
    "split",
    "sweep",
    "to_grayscale",
    "total_entropy",
    "tsallis_compose",
    "tsallis_entropy",
    "write_bilevel",
]
