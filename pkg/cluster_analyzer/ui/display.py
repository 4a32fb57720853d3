"""
Display Functions
Rich console tables for run results
"""
from pathlib import Path
from typing import Optional, Sequence

from rich import box
from rich.console import Console
from rich.table import Table
from rich.text import Text

from ..core.fuzzy import MembershipProfile
from ..report.summary import DifficultyRecommendation, RunReport, recommendation_agreement
from ..utils.formatting import format_bar, format_sig


def _metric(value: Optional[float]) -> str:
    return "undefined" if value is None else format_sig(value, 4)


def create_cluster_table(report: RunReport) -> Table:
    """Centroids, counts and radii per cluster"""
    table = Table(
        title="📊 Clusters",
        box=box.ROUNDED,
        show_header=True,
        header_style="bold cyan",
    )
    table.add_column("k", style="dim", justify="right")
    table.add_column("Label", style="bold")
    table.add_column(report.x_name, justify="right")
    table.add_column(report.y_name, justify="right")
    table.add_column("C_q", justify="right")
    for name in ('R_c', 'R_cxL', 'R_cxR', 'R_cyDn', 'R_cyUp'):
        table.add_column(name, justify="right")

    for c in report.clusters:
        table.add_row(
            str(c.index),
            c.label,
            format_sig(c.centroid[0], 4),
            format_sig(c.centroid[1], 4),
            str(c.count),
            *(format_sig(c.radii[name], 4) for name in ('R_c', 'R_cxL', 'R_cxR', 'R_cyDn', 'R_cyUp')),
        )
    return table


def create_sweep_table(report: RunReport) -> Table:
    """Quality per tried cluster count"""
    table = Table(title="🔎 Cluster count sweep", box=box.ROUNDED, header_style="bold cyan")
    table.add_column("k", justify="right")
    table.add_column("F0", justify="right")
    table.add_column("F1", justify="right")
    table.add_column("F0/F1", justify="right")
    for k, quality in report.sweep:
        style = "green bold" if k == report.selected_k else ""
        table.add_row(
            Text(str(k), style=style),
            _metric(quality.F0),
            _metric(quality.F1),
            Text(_metric(quality.ratio), style=style),
        )
    return table


def create_profile_table(report: RunReport, profile: MembershipProfile) -> Table:
    """Four membership families per cluster for one object"""
    if profile.object_index is not None:
        title = f"🎯 Object {profile.object_index} (cluster {profile.assigned})"
    else:
        px, py = report.scaling.to_original_units(*profile.query.point)
        title = f"🎯 Point ({format_sig(px, 4)}, {format_sig(py, 4)})"

    table = Table(title=title, box=box.ROUNDED, header_style="bold cyan")
    table.add_column("k", justify="right")
    table.add_column("Label")
    for name in ('mu_rho', 'mu_x', 'mu_y', 'mu_xy'):
        table.add_column(name, justify="right")
    table.add_column("", width=20)

    top = profile.ranked()[0]
    for k in range(1, profile.Q_k + 1):
        d = profile.degrees(k)
        style = "green bold" if k == top else ""
        table.add_row(
            str(k),
            report.labels[k - 1],
            format_sig(d['mu_rho'], 3),
            format_sig(d['mu_x'], 3),
            format_sig(d['mu_y'], 3),
            Text(format_sig(d['mu_xy'], 3), style=style),
            format_bar(d['mu_xy']),
        )
    return table


def display_recommendation(rec: DifficultyRecommendation, console: Console):
    """One-line difficulty recommendation"""
    line = f"✅ Recommended difficulty level {rec.primary_level}"
    if rec.supplementary_levels:
        extra = ', '.join(str(k) for k in rec.supplementary_levels)
        line += f", additionally level(s) {extra} (mu_xy >= {format_sig(rec.theta, 3)})"
    console.print(line)


def display_report(report: RunReport,
                   files: Sequence[Path] = (),
                   console: Optional[Console] = None):
    """
    Print the full run summary

    Args:
        report: Run report
        files: Files written by the run
        console: Target console (default: stdout)
    """
    console = console or Console()

    if report.sweep:
        console.print(create_sweep_table(report))
        console.print(f"✅ Selected k = {report.selected_k}")

    if report.scaling.applied:
        console.print(f"ℹ️  Axis {report.scaling.scaled_axis} scaled by {format_sig(report.scaling.factor, 4)}")

    console.print(create_cluster_table(report))
    q = report.quality
    console.print(f"F0 = {_metric(q.F0)}   F1 = {_metric(q.F1)}   F0/F1 = {_metric(q.ratio)}")

    for profile, rec in zip(report.profiles, report.recommendations):
        console.print(create_profile_table(report, profile))
        display_recommendation(rec, console)

    agreement = recommendation_agreement(report)
    if agreement.exceptions:
        console.print(f"⚠️  Primary level differs from the K-Means cluster for "
                      f"{len(agreement.exceptions)} of {report.Q} objects")

    for path in files:
        console.print(f"✅ Wrote {path}")
    console.print(Text(f"Generated {report.generated_at}", style="dim"))
