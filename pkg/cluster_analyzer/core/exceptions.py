"""
Cluster Analyzer Errors
Every error a run can end with, each mapped to its own process exit code
"""
from typing import Optional


class ClusterAnalyzerError(Exception):
    """Base class for all analyzer errors"""
    exit_code = 1


class InputNotFoundError(ClusterAnalyzerError):
    """Input file is missing or unreadable"""
    exit_code = 3

    def __init__(self, path: str, reason: str = "file not found"):
        self.path = str(path)
        super().__init__(f"Input not available: {self.path} ({reason})")


class EmptyInputError(ClusterAnalyzerError):
    """Input holds a header but no data rows"""
    exit_code = 4


class SchemaError(ClusterAnalyzerError):
    """A required column is missing or not numeric"""
    exit_code = 5

    def __init__(self, message: str, column: Optional[str] = None):
        self.column = column
        super().__init__(message)


class ParseError(ClusterAnalyzerError):
    """A score cell could not be read as a valid number"""
    exit_code = 6

    def __init__(self, message: str, row: int, column: Optional[str] = None):
        self.row = row
        self.column = column
        super().__init__(f"Row {row}: {message}")


class ArgumentError(ClusterAnalyzerError, ValueError):
    """An operation was called with arguments outside its domain"""
    exit_code = 7


class UndefinedMetricError(ClusterAnalyzerError):
    """A quality functional has no defined value for this partition"""
    exit_code = 8


class ExportError(ClusterAnalyzerError):
    """A report file could not be written"""
    exit_code = 9

    def __init__(self, path: str, reason: str):
        self.path = str(path)
        super().__init__(f"Cannot write {self.path}: {reason}")
