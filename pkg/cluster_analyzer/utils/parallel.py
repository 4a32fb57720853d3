"""
Parallel Processing Utilities
Ordered thread-pool execution for independent K-Means restarts
"""
from concurrent.futures import ThreadPoolExecutor
from typing import List, Callable, Any, Optional, Sequence
import multiprocessing
from dataclasses import dataclass


@dataclass
class ParallelConfig:
    """Configuration for parallel processing"""
    max_workers: Optional[int] = None  # None = auto-detect CPU count


class ParallelProcessor:
    """
    Runs a function over items on a thread pool

    Results always come back in item order, so callers that pick a winner
    by position get the same answer as a sequential loop.
    """

    def __init__(self, config: Optional[ParallelConfig] = None):
        self.config = config or ParallelConfig()

        # Auto-detect optimal worker count if not specified
        if self.config.max_workers is None:
            cpu_count = multiprocessing.cpu_count()
            # Use 75% of CPUs, leave some for system
            self.config.max_workers = max(1, int(cpu_count * 0.75))

    def map_ordered(self, func: Callable[[Any], Any], items: Sequence[Any]) -> List[Any]:
        """
        Apply func to every item

        Args:
            func: Function of one item
            items: Items to process

        Returns:
            Results in the order of items; the first exception raised by
            any call is re-raised
        """
        if self.config.max_workers <= 1 or len(items) <= 1:
            return [func(item) for item in items]

        with ThreadPoolExecutor(max_workers=self.config.max_workers) as executor:
            futures = [executor.submit(func, item) for item in items]
            return [future.result() for future in futures]
