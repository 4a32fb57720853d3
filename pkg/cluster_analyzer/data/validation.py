"""
Score Table Validation
Check score cells before they become records
"""
import numpy as np
import pandas as pd
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from ..utils.log import get_logger

logger = get_logger(__name__)


@dataclass
class ValidationIssue:
    """Data quality issue"""
    severity: str  # 'CRITICAL', 'WARNING', 'INFO'
    message: str
    field: Optional[str] = None
    row: Optional[int] = None  # 1-based data row


@dataclass
class ValidationResult:
    """Validation outcome plus the parsed score matrix (Q x D)"""
    is_valid: bool
    issues: List[ValidationIssue]
    values: np.ndarray = field(repr=False)

    @property
    def critical(self) -> List[ValidationIssue]:
        return [i for i in self.issues if i.severity == 'CRITICAL']

    @property
    def warnings(self) -> List[ValidationIssue]:
        return [i for i in self.issues if i.severity == 'WARNING']


class DataValidator:
    """Validate the score columns of a raw (string-typed) table"""

    def __init__(self, score_range: Optional[Tuple[float, float]] = None):
        """
        Args:
            score_range: Inclusive (low, high) bounds for every score,
                None accepts any finite value
        """
        self.score_range = score_range
        self.validation_stats = {
            'cells_checked': 0,
            'critical': 0,
            'warnings': 0,
        }

    def validate_scores(self, frame: pd.DataFrame, score_columns: Sequence[str]) -> ValidationResult:
        """
        Parse and validate every score cell

        Args:
            frame: Table read with every cell as a string
            score_columns: Columns that must hold numbers

        Returns:
            ValidationResult; CRITICAL issues are listed in row order
        """
        issues: List[ValidationIssue] = []
        values = np.empty((len(frame), len(score_columns)), dtype=float)

        for col_pos, column in enumerate(score_columns):
            raw = frame[column].astype(str).str.strip()
            parsed = pd.to_numeric(raw, errors='coerce').to_numpy(dtype=float)
            values[:, col_pos] = parsed
            self.validation_stats['cells_checked'] += len(raw)

            for pos in np.flatnonzero(~np.isfinite(parsed)):
                cell = raw.iloc[pos]
                reason = 'missing score' if cell == '' else f'cannot parse {cell!r} as a finite number'
                issues.append(ValidationIssue('CRITICAL', reason, column, int(pos) + 1))

            if self.score_range is not None:
                low, high = self.score_range
                finite = np.isfinite(parsed)
                outside = finite & ((parsed < low) | (parsed > high))
                for pos in np.flatnonzero(outside):
                    issues.append(ValidationIssue(
                        'CRITICAL',
                        f'score {raw.iloc[pos]} outside [{low:g}, {high:g}]',
                        column,
                        int(pos) + 1,
                    ))

        issues.sort(key=lambda i: (i.row or 0, list(score_columns).index(i.field)))

        if not any(i.severity == 'CRITICAL' for i in issues) and len(frame) > 1:
            issues.extend(self._check_spread(values, score_columns))

        return self._create_result(issues, values)

    def _check_spread(self, values: np.ndarray, score_columns: Sequence[str]) -> List[ValidationIssue]:
        """Constant columns and repeated score rows"""
        issues = []
        for col_pos, column in enumerate(score_columns):
            if np.ptp(values[:, col_pos]) == 0:
                issues.append(ValidationIssue(
                    'WARNING',
                    f'column is constant ({values[0, col_pos]:g})',
                    column,
                ))

        unique_rows = np.unique(values, axis=0).shape[0]
        duplicates = len(values) - unique_rows
        if duplicates:
            issues.append(ValidationIssue(
                'INFO',
                f'{duplicates} rows repeat an earlier score combination',
            ))
        return issues

    def _create_result(self, issues: List[ValidationIssue], values: np.ndarray) -> ValidationResult:
        critical = sum(1 for i in issues if i.severity == 'CRITICAL')
        warnings = sum(1 for i in issues if i.severity == 'WARNING')
        self.validation_stats['critical'] += critical
        self.validation_stats['warnings'] += warnings

        for issue in issues:
            if issue.severity == 'WARNING':
                logger.warning("%s: %s", issue.field or 'table', issue.message)
            elif issue.severity == 'INFO':
                logger.info("%s", issue.message)

        return ValidationResult(is_valid=critical == 0, issues=issues, values=values)
