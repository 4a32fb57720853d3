"""
Score Dataset
Load score tables, pick the two clustering features and equalize their scale
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from ..config import SCORE_RANGE, SCALING_RATIO_LIMIT
from ..core.exceptions import (
    ArgumentError,
    EmptyInputError,
    InputNotFoundError,
    ParseError,
    SchemaError,
)
from ..utils.formatting import format_score
from ..utils.log import get_logger
from .validation import DataValidator

logger = get_logger(__name__)

PathLike = Union[str, Path]


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Record:
    """One row of the score table"""
    index: int  # 1-based object number
    scores: Dict[str, float]
    categorical: Dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class Dataset:
    """Ordered score records sharing one set of field names"""
    records: Tuple[Record, ...]
    score_columns: Tuple[str, ...]
    columns: Tuple[str, ...] = ()  # source column order, for re-serialization

    def __post_init__(self):
        object.__setattr__(self, 'records', tuple(self.records))
        object.__setattr__(self, 'score_columns', tuple(self.score_columns))
        if not self.records:
            raise EmptyInputError("Dataset has no records")

        if not self.columns:
            categorical = tuple(self.records[0].categorical)
            object.__setattr__(self, 'columns', categorical + self.score_columns)
        else:
            object.__setattr__(self, 'columns', tuple(self.columns))

        indices = [r.index for r in self.records]
        if len(set(indices)) != len(indices):
            raise ArgumentError("Record indices must be unique")

        score_names = set(self.score_columns)
        categorical_names = set(self.records[0].categorical)
        for record in self.records:
            if set(record.scores) != score_names or set(record.categorical) != categorical_names:
                raise SchemaError(f"Record {record.index} does not share the dataset field names")

    @property
    def Q(self) -> int:
        """Record count"""
        return len(self.records)

    @property
    def D(self) -> int:
        """Number of numeric parameters"""
        return len(self.score_columns)

    @property
    def categorical_columns(self) -> Tuple[str, ...]:
        return tuple(self.records[0].categorical)

    def column(self, name: str) -> np.ndarray:
        """
        Values of one score column in record order

        Raises:
            SchemaError: unknown or non-numeric column
        """
        if name in self.score_columns:
            return _frozen_array([r.scores[name] for r in self.records])
        if name in self.categorical_columns:
            raise SchemaError(f"Column is not numeric: {name!r}", column=name)
        raise SchemaError(f"Unknown column: {name!r}", column=name)

    def to_frame(self) -> pd.DataFrame:
        """Records as a string table in source column order"""
        rows = []
        for record in self.records:
            row = dict(record.categorical)
            row.update({name: format_score(value) for name, value in record.scores.items()})
            rows.append(row)
        return pd.DataFrame(rows, columns=list(self.columns), dtype=str)

    def to_csv(self, path: PathLike) -> Path:
        """Write the records back out as CSV"""
        path = Path(path)
        self.to_frame().to_csv(path, index=False, lineterminator="\n")
        return path


@dataclass(frozen=True)
class ScalingReport:
    """How the feature view was rescaled, if at all"""
    applied: bool = False
    scaled_axis: str = 'none'  # 'x', 'y' or 'none'
    factor: float = 1.0
    original_ranges: Tuple[float, float] = (0.0, 0.0)

    def to_feature_space(self, x: float, y: float) -> Tuple[float, float]:
        """Map a point from original units into the clustering space"""
        if self.scaled_axis == 'x':
            return x * self.factor, y
        if self.scaled_axis == 'y':
            return x, y * self.factor
        return x, y

    def to_original_units(self, x: float, y: float) -> Tuple[float, float]:
        """Map a point from the clustering space back to original units"""
        if self.scaled_axis == 'x':
            return x / self.factor, y
        if self.scaled_axis == 'y':
            return x, y / self.factor
        return x, y

    def to_dict(self) -> Dict:
        return {
            'applied': self.applied,
            'scaled_axis': self.scaled_axis,
            'factor': self.factor,
            'original_ranges': list(self.original_ranges),
        }


@dataclass(frozen=True, eq=False)
class FeatureView:
    """The (x, y) feature pair used for clustering"""
    x: np.ndarray
    y: np.ndarray
    x_name: str = 'x'
    y_name: str = 'y'
    scaling: ScalingReport = field(default_factory=ScalingReport)

    def __post_init__(self):
        x = _frozen_array(self.x)
        y = _frozen_array(self.y)
        if x.ndim != 1 or x.shape != y.shape:
            raise ArgumentError("x and y must be one-dimensional and of equal length")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ArgumentError("Feature values must be finite")
        object.__setattr__(self, 'x', x)
        object.__setattr__(self, 'y', y)

    @classmethod
    def from_points(cls, points, x_name: str = 'x', y_name: str = 'y') -> 'FeatureView':
        """Build an unscaled view from a sequence of (x, y) pairs"""
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        ranges = (float(np.ptp(pts[:, 0])), float(np.ptp(pts[:, 1]))) if len(pts) else (0.0, 0.0)
        return cls(pts[:, 0], pts[:, 1], x_name, y_name, ScalingReport(original_ranges=ranges))

    @property
    def Q(self) -> int:
        return len(self.x)

    @property
    def points(self) -> np.ndarray:
        """(Q, 2) array of feature-space points"""
        pts = np.column_stack([self.x, self.y])
        pts.setflags(write=False)
        return pts


# ============================================================================
# OPERATIONS
# ============================================================================

def load_csv(path: PathLike,
             score_columns: Sequence[str],
             score_range: Optional[Tuple[float, float]] = SCORE_RANGE) -> Dataset:
    """
    Read a comma-separated score table

    Args:
        path: UTF-8 CSV file with a header row
        score_columns: Columns to parse as numbers; every other column is
            kept as categorical text
        score_range: Inclusive bounds for every score (None: any finite value)

    Returns:
        Dataset with one record per data row, indexed from 1

    Raises:
        InputNotFoundError: path missing or unreadable
        EmptyInputError: no data rows
        SchemaError: a score column is missing from the header
        ParseError: a score cell is empty, not a number or out of range
    """
    path = Path(path)
    score_columns = list(score_columns)
    if not score_columns:
        raise ArgumentError("At least one score column is required")
    if len(set(score_columns)) != len(score_columns):
        raise ArgumentError("Score columns must be distinct")
    if not path.is_file():
        raise InputNotFoundError(str(path))

    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding='utf-8')
    except pd.errors.EmptyDataError:
        raise EmptyInputError(f"Input is empty: {path}")
    except pd.errors.ParserError as e:
        raise SchemaError(f"Malformed CSV in {path}: {e}")
    except UnicodeDecodeError as e:
        raise SchemaError(f"Input is not UTF-8 text: {path} ({e.reason})")
    except OSError as e:
        raise InputNotFoundError(str(path), e.strerror or str(e))

    for column in score_columns:
        if column not in frame.columns:
            raise SchemaError(f"Missing column {column!r} in {path.name}", column=column)

    if frame.empty:
        raise EmptyInputError(f"Input has a header but no data rows: {path}")

    result = DataValidator(score_range).validate_scores(frame, score_columns)
    if not result.is_valid:
        first = result.critical[0]
        raise ParseError(f"{first.field}: {first.message}", row=first.row, column=first.field)

    categorical_columns = [c for c in frame.columns if c not in score_columns]
    records = []
    for pos in range(len(frame)):
        records.append(Record(
            index=pos + 1,
            scores={name: float(result.values[pos, j]) for j, name in enumerate(score_columns)},
            categorical={name: frame[name].iat[pos] for name in categorical_columns},
        ))

    logger.debug("Loaded %d records with %d score columns from %s", len(records), len(score_columns), path)
    return Dataset(tuple(records), tuple(score_columns), tuple(frame.columns))


def select_features(d: Dataset, x_name: str, y_name: str) -> FeatureView:
    """
    Pick the two clustering features

    Raises:
        ArgumentError: x_name equals y_name
        SchemaError: unknown or non-numeric column
    """
    if x_name == y_name:
        raise ArgumentError(f"x and y features must differ (both {x_name!r})")

    x = d.column(x_name)
    y = d.column(y_name)
    ranges = (float(np.ptp(x)), float(np.ptp(y)))
    return FeatureView(x, y, x_name, y_name, ScalingReport(original_ranges=ranges))


def scale_features(v: FeatureView, ratio_limit: float = SCALING_RATIO_LIMIT) -> FeatureView:
    """
    Bring the two feature ranges within one order of magnitude

    When the larger range exceeds the smaller by more than ratio_limit, the
    smaller-range axis is multiplied so both ranges become equal. Constant
    axes count as range 1 for the ratio test and are never rescaled.

    Returns:
        A new scaled view, or v itself when no scaling is needed
    """
    range_x = float(np.ptp(v.x))
    range_y = float(np.ptp(v.y))
    eff_x = range_x if range_x > 0 else 1.0
    eff_y = range_y if range_y > 0 else 1.0

    ratio = max(eff_x, eff_y) / min(eff_x, eff_y)
    if ratio <= ratio_limit:
        logger.debug("Feature ranges %.6g / %.6g within limit, no scaling", range_x, range_y)
        return v

    axis = 'x' if eff_x < eff_y else 'y'
    small, large = (range_x, range_y) if axis == 'x' else (range_y, range_x)
    if small == 0:
        logger.warning("Axis %s is constant; ranges stay %.6g apart", axis, ratio)
        return v

    factor = large / small
    if not np.isfinite(factor):
        logger.warning("Axis %s range %.6g is too small to rescale", axis, small)
        return v

    report = ScalingReport(applied=True, scaled_axis=axis, factor=factor, original_ranges=(range_x, range_y))
    logger.info("Scaling %s axis by %.6g (range ratio %.6g)", axis, factor, ratio)
    if axis == 'x':
        return FeatureView(v.x * factor, v.y, v.x_name, v.y_name, report)
    return FeatureView(v.x, v.y * factor, v.x_name, v.y_name, report)
