"""
Main Entry Point
Load -> select -> scale -> cluster (or sweep k) -> radii -> memberships -> report -> files
"""
import hashlib
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import List, Optional, Sequence

from rich.console import Console

from .config import (
    apply_user_settings,
    default_output_dir,
    get_settings_info,
    load_user_settings,
)
from .core.exceptions import ClusterAnalyzerError
from .core.fuzzy import FuzzyConfig, compute_radii
from .core.kmeans import KMeansConfig, kmeans_fit, sweep_k
from .data.dataset import load_csv, scale_features, select_features
from .report.export import ReportExporter
from .report.summary import RunReport, build_run_report
from .report.svg import (
    AXES,
    SvgOptions,
    plot_membership_family,
    profile_markers,
    render_membership_bars_svg,
    render_scatter_svg,
)
from .ui.cli import RunConfig, parse_args, show_banner
from .ui.display import display_report
from .utils.log import get_logger, setup_logging

logger = get_logger(__name__)


@dataclass
class RunResult:
    """Outcome of a successful run"""
    report: RunReport
    files: List[Path] = field(default_factory=list)
    exit_code: int = 0


def _input_digest(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(65536), b''):
            digest.update(chunk)
    return digest.hexdigest()


def write_svgs(report: RunReport, exporter: ReportExporter) -> List[Path]:
    """Scatter plot plus membership charts for every profile (or all clusters)"""
    labels = list(report.labels)
    files = [exporter.export_svg(
        render_scatter_svg(report.view, report.model, report.radii, SvgOptions(
            show_arcs=True,
            show_radius=True,
            k_R=report.fuzzy.k_R,
            labels=labels,
            title=f"{report.Q} objects, {report.Q_k} clusters",
        )),
        'clusters.svg',
    )]

    if not report.profiles:
        for axis in AXES:
            document = plot_membership_family(report.radii, report.fuzzy, axis,
                                              options=SvgOptions(labels=labels, title=f"mu_{axis}"))
            files.append(exporter.export_svg(document, f"membership_{axis}.svg"))
        return files

    point_number = 0
    for profile in report.profiles:
        if profile.object_index is not None:
            tag = f"i{profile.object_index}"
        else:
            point_number += 1
            tag = f"p{point_number}"
        for axis in AXES:
            document = plot_membership_family(
                report.radii, report.fuzzy, axis,
                markers=profile_markers(profile, axis),
                options=SvgOptions(labels=labels, title=f"mu_{axis}, {tag}"),
            )
            files.append(exporter.export_svg(document, f"membership_{tag}_{axis}.svg"))
        files.append(exporter.export_svg(
            render_membership_bars_svg(profile, labels, SvgOptions(title=f"Degrees of membership, {tag}")),
            f"degrees_{tag}.svg",
        ))
    return files


def run(cfg: RunConfig, console: Optional[Console] = None) -> RunResult:
    """
    Execute the full pipeline for one configuration

    Returns:
        RunResult with the report and the files written

    Raises:
        ClusterAnalyzerError: any failure, carrying its exit code
    """
    dataset = load_csv(cfg.input, cfg.columns)
    view = scale_features(select_features(dataset, cfg.x_col, cfg.y_col))

    kmeans_cfg = KMeansConfig(
        Q_k=cfg.k if cfg.k is not None else cfg.sweep[0],
        seed=cfg.seed,
        n_restarts=cfg.n_restarts,
        max_iter=cfg.max_iter,
        tol=cfg.tol,
        n_jobs=cfg.n_jobs,
    )

    sweep = None
    if cfg.sweep is not None:
        sweep = sweep_k(view, cfg.sweep, kmeans_cfg)
        model = sweep.selected.model
        kmeans_cfg = replace(kmeans_cfg, Q_k=sweep.selected_k)
    else:
        model = kmeans_fit(view, kmeans_cfg)

    fuzzy_cfg = FuzzyConfig(k_R=cfg.k_R)
    radii = compute_radii(view, model)

    report = build_run_report(
        view, model, radii, kmeans_cfg, fuzzy_cfg,
        theta=cfg.theta,
        queries=cfg.queries,
        points=cfg.points,
        sweep=sweep,
        provenance={'input': Path(cfg.input).name, 'input_sha256': _input_digest(Path(cfg.input))},
    )

    exporter = ReportExporter(cfg.out or default_output_dir())
    files: List[Path] = []
    for fmt in cfg.formats:
        if fmt == 'svg':
            files.extend(write_svgs(report, exporter))
        else:
            files.append(exporter.export(report, fmt))

    display_report(report, files, console)
    return RunResult(report, files)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Command-line entry point; returns the process exit status"""
    # Settings-file warnings need a handler before the flags are known
    setup_logging()
    user_settings = load_user_settings()
    if user_settings:
        apply_user_settings(user_settings)

    cfg = parse_args(argv)
    setup_logging(cfg.verbose)
    logger.debug("Settings: %s", get_settings_info())

    console = Console()
    show_banner(console)
    try:
        run(cfg, console)
    except ClusterAnalyzerError as e:
        Console(stderr=True).print(f"❌ {e}", markup=False, highlight=False, soft_wrap=True)
        return e.exit_code
    return 0
