"""
Cluster Analyzer Utilities Package

- Number formatting for deterministic exports
- Logging setup (rich)
- Ordered parallel execution
"""

from .formatting import round_sig, format_sig, format_score, format_bar
from .log import get_logger, setup_logging
from .parallel import ParallelProcessor, ParallelConfig

__all__ = [
    # Formatting
    'round_sig',
    'format_sig',
    'format_score',
    'format_bar',

    # Logging
    'get_logger',
    'setup_logging',

    # Parallel processing
    'ParallelProcessor',
    'ParallelConfig',
]
