"""
Report Export
Write run reports as JSON, CSV, Excel and SVG files
"""
import hashlib
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd

from ..config import EXPORT_SETTINGS, SUPPORTED_FORMATS, default_output_dir
from ..core.exceptions import ArgumentError, ExportError
from ..utils.formatting import format_sig, round_sig
from ..utils.log import get_logger
from .summary import RunReport

logger = get_logger(__name__)

PathLike = Union[str, Path]


def round_payload(value: Any, digits: int = 6) -> Any:
    """Round every float in a nested payload to fixed significant digits"""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (float, np.floating)):
        return round_sig(float(value), digits)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, dict):
        return {str(k): round_payload(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_payload(v, digits) for v in value]
    return value


def canonical_payload(report: RunReport, digits: int = 6) -> Dict[str, Any]:
    """Rounded report payload with its SHA-256 digest attached"""
    payload = round_payload(report.to_dict(), digits)
    canonical = json.dumps(payload, sort_keys=True, separators=(',', ':'), ensure_ascii=False)
    payload['digest'] = hashlib.sha256(canonical.encode('utf-8')).hexdigest()
    return payload


def report_rows(report: RunReport, digits: int = 6) -> List[Dict[str, str]]:
    """One pre-formatted row per object"""
    rows = []
    for row in report.rows:
        line = {
            'object': str(row.index),
            'x': format_sig(row.x, digits),
            'y': format_sig(row.y, digits),
            'cluster': str(row.assigned),
            'label': report.labels[row.assigned - 1],
        }
        for k, mu in enumerate(row.mu_xy, start=1):
            line[f'mu_xy_{k}'] = format_sig(mu, digits)
        line['primary_level'] = str(row.recommendation.primary_level)
        line['supplementary_levels'] = ';'.join(str(k) for k in row.recommendation.supplementary_levels)
        rows.append(line)
    return rows


def _report_columns(report: RunReport) -> List[str]:
    return (['object', 'x', 'y', 'cluster', 'label']
            + [f'mu_xy_{k}' for k in range(1, report.Q_k + 1)]
            + ['primary_level', 'supplementary_levels'])


class ReportExporter:
    """Export run reports in multiple formats"""

    def __init__(self, output_dir: Optional[PathLike] = None, digits: Optional[int] = None):
        """
        Initialize exporter

        Args:
            output_dir: Output directory (default: environment or settings)
            digits: Significant digits for floats (default: export settings)
        """
        self.output_dir = Path(output_dir) if output_dir else default_output_dir()
        self.digits = digits or EXPORT_SETTINGS['significant_digits']

        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ExportError(str(self.output_dir), e.strerror or str(e))

    def _write_text(self, path: Path, text: str) -> Path:
        try:
            with open(path, 'w', encoding='utf-8', newline='\n') as f:
                f.write(text)
        except OSError as e:
            raise ExportError(str(path), e.strerror or str(e))
        logger.info("Wrote %s", path)
        return path

    def export_to_json(self, report: RunReport, filename: str) -> Path:
        """
        Export the report as JSON with sorted keys

        Returns:
            Path to exported file
        """
        payload = canonical_payload(report, self.digits)
        text = json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
        return self._write_text(self.output_dir / filename, text)

    def export_to_csv(self, report: RunReport, filename: str) -> Path:
        """
        Export one row per object

        Returns:
            Path to exported file
        """
        df = pd.DataFrame(report_rows(report, self.digits), columns=_report_columns(report), dtype=str)
        return self._write_text(self.output_dir / filename, df.to_csv(index=False, lineterminator="\n"))

    def export_to_excel(self, report: RunReport, filename: str) -> Path:
        """
        Export objects and clusters to a formatted workbook

        Falls back to CSV when openpyxl is missing.

        Returns:
            Path to exported file
        """
        try:
            from openpyxl.styles import Alignment, Font, PatternFill
            from openpyxl.formatting.rule import ColorScaleRule
        except ImportError:
            logger.warning("Install openpyxl for Excel export: pip install openpyxl")
            return self.export_to_csv(report, Path(filename).with_suffix('.csv').name)

        filepath = self.output_dir / filename

        objects = pd.DataFrame([
            {
                'object': row.index,
                'x': row.x,
                'y': row.y,
                'cluster': row.assigned,
                'label': report.labels[row.assigned - 1],
                **{f'mu_xy_{k}': mu for k, mu in enumerate(row.mu_xy, start=1)},
                'primary_level': row.recommendation.primary_level,
            }
            for row in report.rows
        ])
        clusters = pd.DataFrame([
            {
                'cluster': c.index,
                'label': c.label,
                f'{report.x_name}': c.centroid[0],
                f'{report.y_name}': c.centroid[1],
                'count': c.count,
                **c.radii,
            }
            for c in report.clusters
        ])

        try:
            with pd.ExcelWriter(filepath, engine='openpyxl') as writer:
                objects.to_excel(writer, sheet_name='Objects', index=False)
                clusters.to_excel(writer, sheet_name='Clusters', index=False)

                header_fill = PatternFill(start_color="366092", end_color="366092", fill_type="solid")
                header_font = Font(bold=True, color="FFFFFF")

                for worksheet in writer.sheets.values():
                    for cell in worksheet[1]:
                        cell.fill = header_fill
                        cell.font = header_font
                        cell.alignment = Alignment(horizontal="center")

                    for column in worksheet.columns:
                        max_length = max(len(str(cell.value)) for cell in column if cell.value is not None)
                        worksheet.column_dimensions[column[0].column_letter].width = min(max_length + 2, 40)

                    # Freeze header row
                    worksheet.freeze_panes = 'A2'

                # Membership columns: red (0) -> green (1)
                sheet = writer.sheets['Objects']
                first = objects.columns.get_loc('mu_xy_1') + 1
                last = first + report.Q_k - 1
                first_letter = sheet.cell(row=1, column=first).column_letter
                last_letter = sheet.cell(row=1, column=last).column_letter
                sheet.conditional_formatting.add(
                    f"{first_letter}2:{last_letter}{len(objects) + 1}",
                    ColorScaleRule(start_type='num', start_value=0, start_color='F8696B',
                                   end_type='num', end_value=1, end_color='63BE7B'),
                )
        except OSError as e:
            raise ExportError(str(filepath), e.strerror or str(e))

        logger.info("Wrote %s", filepath)
        return filepath

    def export_svg(self, document: str, filename: str) -> Path:
        """Write an SVG document"""
        return self._write_text(self.output_dir / filename, document)

    def export(self, report: RunReport, fmt: str, basename: Optional[str] = None) -> Path:
        """Export in one tabular format (json, csv or xlsx)"""
        basename = basename or EXPORT_SETTINGS['report_basename']
        writers = {
            'json': self.export_to_json,
            'csv': self.export_to_csv,
            'xlsx': self.export_to_excel,
        }
        if fmt not in writers:
            raise ArgumentError(f"Unsupported report format {fmt!r} (choose from {', '.join(writers)})")
        return writers[fmt](report, f"{basename}.{fmt}")


def export_report(r: RunReport, format: str, path: PathLike) -> Path:
    """
    Write a report to an explicit file path

    Args:
        r: Run report
        format: 'json', 'csv' or 'xlsx'
        path: Target file

    Returns:
        Path written

    Raises:
        ExportError: the file could not be written
    """
    if format not in SUPPORTED_FORMATS or format == 'svg':
        raise ArgumentError(f"Unsupported report format {format!r}")
    path = Path(path)
    exporter = ReportExporter(path.parent if str(path.parent) else Path('.'))
    writers = {
        'json': exporter.export_to_json,
        'csv': exporter.export_to_csv,
        'xlsx': exporter.export_to_excel,
    }
    return writers[format](r, path.name)
