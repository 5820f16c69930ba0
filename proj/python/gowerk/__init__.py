"""Distance-to-kernel transforms, Euclidean repair and kernel k-means."""

from ._core import (
    GowerkError,
    __version__,
    centered_transform,
    cost_of,
    embed,
    euclidise,
    exhaustive_best,
    gower_sigma,
    gower_transform,
    is_euclidean,
    lloyd,
    metric_constant,
    metricize,
    min_eigenvalue,
    paper_repro,
    point_to_centroid_sq,
    recover_distances,
    schoenberg_exp_kernel,
    shift_cost_check,
    sym_eigen,
    validate_dissimilarity,
    weighted_cost_of,
)

__all__ = [
    "GowerkError",
    "__version__",
    "centered_transform",
    "cost_of",
    "embed",
    "euclidise",
    "exhaustive_best",
    "gower_sigma",
    "gower_transform",
    "is_euclidean",
    "lloyd",
    "metric_constant",
    "metricize",
    "min_eigenvalue",
    "paper_repro",
    "point_to_centroid_sq",
    "recover_distances",
    "schoenberg_exp_kernel",
    "shift_cost_check",
    "sym_eigen",
    "validate_dissimilarity",
    "weighted_cost_of",
]
