"""Clustering-agnostic outlier detection via rate-distortion hulls.

A clustering compresses a dataset: its entropy measures the degree of
compression, its distortion the representation inaccuracy. The lower convex
hull of the (distortion, entropy) pairs of several clusterings bounds the
achievable trade-off; observations that would be represented better by their
own singleton cluster than by any hull clustering are reported as outliers.
"""

from ._core import (
    Clustering,
    Dataset,
    DegenerateError,
    OutlierReport,
    classwise_f1,
    dbscan,
    definition_oracle,
    entropy,
    entropy_delta,
    f1,
    grid_search,
    hac_complete,
    kmeans,
    nn_representation,
    parameter_free,
    parametric,
    perturb,
    total_distortion,
    vanilla_detect,
)
from ._core import __version__

__all__ = [
    "Clustering",
    "Dataset",
    "DegenerateError",
    "OutlierReport",
    "classwise_f1",
    "dbscan",
    "definition_oracle",
    "entropy",
    "entropy_delta",
    "f1",
    "grid_search",
    "hac_complete",
    "kmeans",
    "nn_representation",
    "parameter_free",
    "parametric",
    "perturb",
    "total_distortion",
    "vanilla_detect",
    "__version__",
]
