"""Elastic functional data analysis on [0,1].

Square-root slope transforms, warping-group actions, dynamic-programming
elastic alignment, Fisher-Rao geometry, and an exact-arithmetic measure
theory lab, served over HTTP with a thin CLI client.
"""

__version__ = "0.1.0"

from .align import (
    AlignmentResult,
    DpConfig,
    brute_force_alignment,
    elastic_distance,
    fisher_rao_distance,
    geodesic_path,
    scalar_invariance_check,
    shape_distance,
)
from .errors import (
    BasepointMismatch,
    DomainError,
    ElasticFdaError,
    InputError,
    LevelTooDeep,
    NotInvertible,
    NotPositiveSlope,
    ZeroLength,
)
from .fnspace import (
    CellFunction,
    Grid,
    SampledFunction,
    bounded_variation,
    cumulative_integral,
    derivative,
    integrate_cells,
    l2_norm,
    resample,
    sampled_from_points,
)
from .metric import TangentVector, fisher_rao_inner, isometry_check, srsf_pushforward
from .srsf import Srsf, constant_speed, normalize, reconstruct, srsf_of, standard_form
from .warps import Warp, action, action_algebra_check, compose, identity_warp, invert

__all__ = [
    "__version__",
    "AlignmentResult",
    "BasepointMismatch",
    "CellFunction",
    "DomainError",
    "DpConfig",
    "ElasticFdaError",
    "Grid",
    "InputError",
    "LevelTooDeep",
    "NotInvertible",
    "NotPositiveSlope",
    "SampledFunction",
    "Srsf",
    "TangentVector",
    "Warp",
    "ZeroLength",
    "action",
    "action_algebra_check",
    "bounded_variation",
    "brute_force_alignment",
    "compose",
    "constant_speed",
    "cumulative_integral",
    "derivative",
    "elastic_distance",
    "fisher_rao_distance",
    "fisher_rao_inner",
    "geodesic_path",
    "identity_warp",
    "integrate_cells",
    "invert",
    "isometry_check",
    "l2_norm",
    "normalize",
    "reconstruct",
    "resample",
    "sampled_from_points",
    "scalar_invariance_check",
    "shape_distance",
    "srsf_of",
    "srsf_pushforward",
    "standard_form",
]
