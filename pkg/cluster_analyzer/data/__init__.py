"""
Score data loading and preparation
"""

from .dataset import (
    Record,
    Dataset,
    FeatureView,
    ScalingReport,
    load_csv,
    select_features,
    scale_features,
)
from .validation import DataValidator, ValidationIssue, ValidationResult

__all__ = [
    'Record',
    'Dataset',
    'FeatureView',
    'ScalingReport',
    'load_csv',
    'select_features',
    'scale_features',
    'DataValidator',
    'ValidationIssue',
    'ValidationResult',
]
