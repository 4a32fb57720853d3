"""
Core clustering components
"""

from .exceptions import (
    ClusterAnalyzerError,
    InputNotFoundError,
    EmptyInputError,
    SchemaError,
    ParseError,
    ArgumentError,
    UndefinedMetricError,
    ExportError,
)
from .kmeans import (
    KMeansConfig,
    QualityMetrics,
    ClusterModel,
    SweepEntry,
    SweepResult,
    euclidean_distance,
    compute_quality,
    intra_cluster_f0,
    inter_cluster_f1,
    quality_ratio,
    kmeans_fit,
    sweep_k,
)
from .fuzzy import (
    Side,
    FuzzyConfig,
    ClusterRadii,
    MembershipQuery,
    MembershipProfile,
    compute_radii,
    mu_rho,
    mu_x,
    mu_y,
    mu_xy,
    evaluate_point,
    evaluate_membership,
)

__all__ = [
    'ClusterAnalyzerError', 'InputNotFoundError', 'EmptyInputError', 'SchemaError',
    'ParseError', 'ArgumentError', 'UndefinedMetricError', 'ExportError',
    'KMeansConfig', 'QualityMetrics', 'ClusterModel', 'SweepEntry', 'SweepResult',
    'euclidean_distance', 'compute_quality', 'intra_cluster_f0', 'inter_cluster_f1',
    'quality_ratio', 'kmeans_fit', 'sweep_k',
    'Side', 'FuzzyConfig', 'ClusterRadii', 'MembershipQuery', 'MembershipProfile',
    'compute_radii', 'mu_rho', 'mu_x', 'mu_y', 'mu_xy', 'evaluate_point', 'evaluate_membership',
]
