"""Concentration, dependence, and transmission diagnostics for holdings matrices."""

from .comparative import (
    HeadlineIndices,
    OperationDelta,
    PredictedIndices,
    dilute,
    headline,
    merge_investors,
    nonid_family,
    remove_stock,
)
from .core import (
    EPS_SUPPORT,
    TOL_NORM,
    Marginals,
    OwnershipMatrix,
    Profiles,
    is_active,
    marginals,
    normalize,
    profiles,
    restrict_active,
)
from .dependence import (
    AggregationSplit,
    DependenceReport,
    Partition,
    aggregate,
    chi2_divergence,
    dependence_index,
    merger_delta,
)
from .dynamics import (
    ActiveVarianceResult,
    FireSaleResult,
    active_variance,
    fire_sale,
    isotropic_capacity,
)
from .extensions import (
    RenyiSummary,
    SignedOwnership,
    renyi_summary,
    signed_dependence,
    signed_from_raw,
)
from .indices import (
    ConcentrationSummary,
    MicroDecomposition,
    concentration_summary,
    herfindahl,
    micro_concentration,
    micro_decomposition,
    support_bounds,
)
from .spectral import SpectralResidual, rho, spectral_identity_gap, whiten
from .transport import (
    MAX_ENUMERATION,
    TOL_FEAS,
    TOL_KKT,
    SparsityScore,
    TransportFamily2x2,
    TransportSolution,
    family_2x2,
    is_extreme_point,
    is_feasible,
    max_micro,
    min_micro,
    sparsity_score,
    transport_matrix_2x2,
    vertex_count,
)

__version__ = "0.1.0"

__all__ = [
    "ActiveVarianceResult",
    "AggregationSplit",
    "ConcentrationSummary",
    "DependenceReport",
    "EPS_SUPPORT",
    "FireSaleResult",
    "HeadlineIndices",
    "MAX_ENUMERATION",
    "Marginals",
    "MicroDecomposition",
    "OperationDelta",
    "OwnershipMatrix",
    "Partition",
    "PredictedIndices",
    "Profiles",
    "RenyiSummary",
    "SignedOwnership",
    "SparsityScore",
    "SpectralResidual",
    "TOL_FEAS",
    "TOL_KKT",
    "TOL_NORM",
    "TransportFamily2x2",
    "TransportSolution",
    "active_variance",
    "aggregate",
    "chi2_divergence",
    "concentration_summary",
    "dependence_index",
    "dilute",
    "family_2x2",
    "fire_sale",
    "headline",
    "herfindahl",
    "is_active",
    "is_extreme_point",
    "is_feasible",
    "isotropic_capacity",
    "marginals",
    "max_micro",
    "merge_investors",
    "merger_delta",
    "micro_concentration",
    "micro_decomposition",
    "min_micro",
    "nonid_family",
    "normalize",
    "profiles",
    "remove_stock",
    "renyi_summary",
    "restrict_active",
    "rho",
    "signed_dependence",
    "signed_from_raw",
    "sparsity_score",
    "spectral_identity_gap",
    "support_bounds",
    "transport_matrix_2x2",
    "vertex_count",
    "whiten",
]
