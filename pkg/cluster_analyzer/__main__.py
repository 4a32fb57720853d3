"""
Fuzzy Cluster Analyzer - Main Entry Point
Allows running the package with: python -m cluster_analyzer
"""

import sys
from .main import main

if __name__ == "__main__":
    sys.exit(main())
