"""
Fuzzy Cluster Analyzer
K-Means clustering of score tables described by asymmetric triangular
fuzzy membership functions
"""

from .config import VERSION

__version__ = VERSION
