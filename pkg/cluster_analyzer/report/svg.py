"""
SVG Charts
Scatter plots with cluster boundaries and membership function charts, drawn with matplotlib
"""
import io
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.lines import Line2D  # noqa: E402
from matplotlib.patches import Ellipse  # noqa: E402

from ..config import SVG_SETTINGS  # noqa: E402
from ..core.exceptions import ArgumentError  # noqa: E402
from ..core.fuzzy import ClusterRadii, FuzzyConfig, MembershipProfile, Side, mu_rho, mu_x, mu_y  # noqa: E402
from ..core.kmeans import ClusterModel  # noqa: E402
from ..data.dataset import FeatureView  # noqa: E402
from ..utils.formatting import format_sig  # noqa: E402

AXES = ('rho', 'x', 'y')
FAMILIES = ('mu_rho', 'mu_x', 'mu_y', 'mu_xy')
FAMILY_SHADES = ('#9ecae1', '#6baed6', '#3182bd', '#08519c')


@dataclass
class SvgOptions:
    """Rendering options; the defaults draw points and centroids only"""
    width: int = field(default_factory=lambda: SVG_SETTINGS['width'])
    height: int = field(default_factory=lambda: SVG_SETTINGS['height'])
    dpi: int = field(default_factory=lambda: SVG_SETTINGS['dpi'])
    marker_size: float = field(default_factory=lambda: SVG_SETTINGS['marker_size'])
    palette: Sequence[str] = field(default_factory=lambda: list(SVG_SETTINGS['palette']))
    show_arcs: bool = False  # quadrant arcs R_cxL / R_cxR / R_cyDn / R_cyUp
    show_radius: bool = False  # R_c outline
    k_R: Optional[float] = None  # scale the boundaries by k_R when set
    title: Optional[str] = None
    labels: Optional[Sequence[str]] = None

    def color(self, k: int) -> str:
        return self.palette[(k - 1) % len(self.palette)]

    def label(self, k: int) -> str:
        if self.labels is not None and 1 <= k <= len(self.labels):
            return self.labels[k - 1]
        return f"cluster {k}"


def _render(options: SvgOptions, draw: Callable[[plt.Axes], None]) -> str:
    """
    Draw on a fresh figure and return it as SVG text

    Ids are hashed with a fixed salt, text stays text and the date is
    omitted, so equal inputs give identical bytes.
    """
    rc = {'svg.hashsalt': SVG_SETTINGS['hashsalt'], 'svg.fonttype': 'none'}
    with plt.rc_context(rc):
        fig, ax = plt.subplots(figsize=(options.width / options.dpi, options.height / options.dpi),
                               dpi=options.dpi)
        try:
            draw(ax)
            if options.title:
                ax.set_title(options.title, fontsize=11, fontweight='bold')
            ax.grid(True, alpha=0.3)
            fig.tight_layout()
            buffer = io.BytesIO()
            fig.savefig(buffer, format='svg', metadata={'Date': None})
        finally:
            plt.close(fig)
    return buffer.getvalue().decode('utf-8')


# ============================================================================
# SCATTER PLOT
# ============================================================================

def quadrant_arcs(cx: float, cy: float,
                  a_left: float, a_right: float,
                  b_down: float, b_up: float,
                  steps: int = 24) -> Tuple[np.ndarray, np.ndarray]:
    """Closed outline of four quarter-ellipses, counter-clockwise from the right"""
    quarters = [
        (a_right, b_up, 0.0),
        (a_left, b_up, np.pi / 2),
        (a_left, b_down, np.pi),
        (a_right, b_down, 3 * np.pi / 2),
    ]
    xs, ys = [], []
    for a, b, start in quarters:
        t = np.linspace(start, start + np.pi / 2, steps)
        xs.append(cx + a * np.cos(t))
        ys.append(cy + b * np.sin(t))
    return np.concatenate(xs), np.concatenate(ys)


def render_scatter_svg(v: FeatureView,
                       m: ClusterModel,
                       radii: Optional[ClusterRadii] = None,
                       options: Optional[SvgOptions] = None) -> str:
    """
    Scatter plot of the clustered objects

    Every object is its own marker with gid ``point_{i}_c{k}`` and every
    centroid carries gid ``centroid_{k}``; R_c outlines (``radius_{k}``) and
    quadrant arcs (``arcs_{k}``) are added when options ask for them.

    Returns:
        SVG document text
    """
    options = options or SvgOptions()
    if m.Q != v.Q:
        raise ArgumentError(f"Model covers {m.Q} objects, view has {v.Q}")
    if (options.show_arcs or options.show_radius) and radii is None:
        raise ArgumentError("Cluster boundaries need radii")
    factor = options.k_R or 1.0

    def draw(ax):
        for i, (x, y, k) in enumerate(zip(v.x, v.y, m.assignments), start=1):
            ax.plot([x], [y], linestyle='none', marker='o', markersize=options.marker_size,
                    color=options.color(int(k)), alpha=0.8, gid=f"point_{i}_c{int(k)}")

        for k in range(1, m.Q_k + 1):
            cx, cy = (float(c) for c in m.centroids[k - 1])
            color = options.color(k)
            if radii is not None and options.show_radius:
                r = radii.for_cluster(k)['R_c'] * factor
                ax.add_patch(Ellipse((cx, cy), 2 * r, 2 * r, fill=False, edgecolor=color,
                                     linestyle='--', linewidth=1, gid=f"radius_{k}"))
            if radii is not None and options.show_arcs:
                r = radii.for_cluster(k)
                xs, ys = quadrant_arcs(cx, cy,
                                       r['R_cxL'] * factor, r['R_cxR'] * factor,
                                       r['R_cyDn'] * factor, r['R_cyUp'] * factor)
                ax.plot(xs, ys, color=color, linewidth=1, gid=f"arcs_{k}")
            ax.plot([cx], [cy], linestyle='none', marker='X', markersize=11, color='black',
                    markeredgecolor='white', gid=f"centroid_{k}")

        handles = [Line2D([], [], linestyle='none', marker='o', color=options.color(k), label=options.label(k))
                   for k in range(1, m.Q_k + 1)]
        handles.append(Line2D([], [], linestyle='none', marker='X', color='black', label='centroid'))
        ax.legend(handles=handles, loc='upper left', fontsize=8)
        ax.set_xlabel(v.x_name)
        ax.set_ylabel(v.y_name)

    return _render(options, draw)


# ============================================================================
# MEMBERSHIP FUNCTIONS
# ============================================================================

def membership_curve(radii: ClusterRadii, cfg: FuzzyConfig, k: int, axis: str) -> List[Tuple[float, float]]:
    """
    Breakpoints (distance, mu) of one cluster's triangular function

    For axis 'rho' the distance runs from 0 to k_R * R_c; for 'x' and 'y'
    the left / lower side is drawn at negative distances.
    """
    if axis not in AXES:
        raise ArgumentError(f"axis must be one of {', '.join(AXES)}, got {axis!r}")
    r = radii.for_cluster(k)
    if axis == 'rho':
        return [(0.0, 1.0), (cfg.k_R * r['R_c'], 0.0)]
    low, high = ('R_cxL', 'R_cxR') if axis == 'x' else ('R_cyDn', 'R_cyUp')
    return [(-cfg.k_R * r[low], 0.0), (0.0, 1.0), (cfg.k_R * r[high], 0.0)]


def membership_at(radii: ClusterRadii, cfg: FuzzyConfig, k: int, axis: str, distance: float) -> float:
    """Value of one membership family at a (signed, for x / y) distance"""
    if axis == 'rho':
        return mu_rho(k, abs(distance), radii, cfg)
    if axis == 'x':
        return mu_x(k, abs(distance), Side.L if distance < 0 else Side.R, radii, cfg)
    if axis == 'y':
        return mu_y(k, abs(distance), Side.DN if distance < 0 else Side.UP, radii, cfg)
    raise ArgumentError(f"axis must be one of {', '.join(AXES)}, got {axis!r}")


def plot_membership_family(radii: ClusterRadii,
                           cfg: FuzzyConfig,
                           axis: str,
                           markers: Optional[Dict[int, float]] = None,
                           clusters: Optional[Sequence[int]] = None,
                           options: Optional[SvgOptions] = None) -> str:
    """
    Membership functions of several clusters on one chart

    Args:
        radii: Cluster radii
        cfg: Membership parameters
        axis: 'rho', 'x' or 'y'
        markers: Optional distance per cluster, drawn as a vertical line
            (``marker_{k}``) with the point it hits (``marker-hit_{k}``)
            and the value there (``marker-value_{k}``)
        clusters: Clusters to draw (default: all)
        options: Rendering options

    Returns:
        SVG document text with one ``membership_{k}`` curve per cluster
    """
    options = options or SvgOptions()
    clusters = list(clusters) if clusters is not None else list(range(1, radii.Q_k + 1))
    markers = markers or {}
    curves = {k: membership_curve(radii, cfg, k, axis) for k in clusters}
    for k in markers:
        radii.check_cluster(k)
    hits = {k: membership_at(radii, cfg, k, axis, float(d)) for k, d in markers.items()}

    def draw(ax):
        for k, curve in curves.items():
            ds, mus = zip(*curve)
            ax.plot(ds, mus, color=options.color(k), linewidth=2, label=options.label(k),
                    gid=f"membership_{k}")

        for k in sorted(markers):
            d, mu = float(markers[k]), hits[k]
            ax.axvline(d, color=options.color(k), linestyle=':', linewidth=1, gid=f"marker_{k}")
            ax.plot([d], [mu], linestyle='none', marker='o', markersize=6, color=options.color(k),
                    gid=f"marker-hit_{k}")
            ax.annotate(format_sig(mu), (d, mu), xytext=(4, 4), textcoords='offset points',
                        fontsize=8, gid=f"marker-value_{k}")

        ax.set_ylim(-0.02, 1.08)
        ax.set_xlabel({'rho': 'rho', 'x': 'dx', 'y': 'dy'}[axis])
        ax.set_ylabel(f"mu_{axis}")
        ax.legend(loc='upper right', fontsize=8)

    return _render(options, draw)


def plot_membership_functions(radii: ClusterRadii,
                              cfg: FuzzyConfig,
                              k: int,
                              axis: str,
                              marker: Optional[float] = None,
                              options: Optional[SvgOptions] = None) -> str:
    """
    Membership function of one cluster, optionally with a distance marker

    Raises:
        ArgumentError: unknown cluster index or axis
    """
    radii.check_cluster(k)
    markers = {k: marker} if marker is not None else None
    return plot_membership_family(radii, cfg, axis, markers=markers, clusters=[k], options=options)


def profile_markers(profile: MembershipProfile, axis: str) -> Dict[int, float]:
    """Signed distances of a profiled object to every centroid, for chart markers"""
    q = profile.query
    markers = {}
    for k in range(1, profile.Q_k + 1):
        i = k - 1
        if axis == 'rho':
            markers[k] = q.rho[i]
        elif axis == 'x':
            markers[k] = -q.dx[i] if q.x_side[i] is Side.L else q.dx[i]
        else:
            markers[k] = -q.dy[i] if q.y_side[i] is Side.DN else q.dy[i]
    return markers


def render_membership_bars_svg(profile: MembershipProfile,
                               labels: Optional[Sequence[str]] = None,
                               options: Optional[SvgOptions] = None) -> str:
    """
    Grouped bar chart of the four membership values per cluster

    Returns:
        SVG document text with one bar per (cluster, family), gid
        ``bar_{k}_{family}``
    """
    options = options or SvgOptions()
    names = list(labels) if labels is not None else [f"cluster {k}" for k in range(1, profile.Q_k + 1)]
    width = 0.8 / len(FAMILIES)

    def draw(ax):
        for pos, family in enumerate(FAMILIES):
            offset = (pos - (len(FAMILIES) - 1) / 2) * width
            for k in range(1, profile.Q_k + 1):
                ax.bar(k + offset, profile.degrees(k)[family], width * 0.9,
                       color=FAMILY_SHADES[pos],
                       label=family if k == 1 else '_nolegend_',
                       gid=f"bar_{k}_{family}")

        ax.set_xticks(range(1, profile.Q_k + 1))
        ax.set_xticklabels(names)
        ax.set_xlim(0.5, profile.Q_k + 0.5)
        ax.set_ylim(0.0, 1.05)
        ax.set_xlabel('cluster')
        ax.set_ylabel('degree of membership')
        ax.legend(loc='upper right', fontsize=8)

    return _render(options, draw)
