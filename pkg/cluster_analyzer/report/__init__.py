"""
Report generation: summaries, recommendations, exports and SVG charts
"""

from .summary import (
    ClusterSummary,
    DifficultyRecommendation,
    ObjectRow,
    Agreement,
    RunReport,
    label_clusters,
    recommend_difficulty,
    recommendation_agreement,
    count_distribution,
    build_run_report,
)
from .export import ReportExporter, export_report, canonical_payload
from .svg import (
    SvgOptions,
    render_scatter_svg,
    membership_curve,
    plot_membership_functions,
    plot_membership_family,
    render_membership_bars_svg,
)

__all__ = [
    'ClusterSummary', 'DifficultyRecommendation', 'ObjectRow', 'Agreement', 'RunReport',
    'label_clusters', 'recommend_difficulty', 'recommendation_agreement', 'count_distribution',
    'build_run_report',
    'ReportExporter', 'export_report', 'canonical_payload',
    'SvgOptions', 'render_scatter_svg', 'membership_curve', 'plot_membership_functions',
    'plot_membership_family', 'render_membership_bars_svg',
]
