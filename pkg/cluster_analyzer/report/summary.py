"""
Run Summary
Cluster labels, difficulty recommendations and the run report assembled from a fitted model
"""
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config import FOUR_LEVEL_LABELS, VERSION
from ..core.exceptions import ArgumentError
from ..core.fuzzy import (
    ClusterRadii,
    FuzzyConfig,
    MembershipProfile,
    evaluate_membership,
    evaluate_point,
)
from ..core.kmeans import ClusterModel, KMeansConfig, QualityMetrics, SweepResult
from ..data.dataset import FeatureView, ScalingReport
from ..utils.log import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class ClusterSummary:
    """One cluster as the user sees it"""
    index: int  # 1-based
    label: str
    centroid: Tuple[float, float]  # original units
    centroid_feature: Tuple[float, float]  # clustering space
    count: int
    radii: Dict[str, float]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'cluster': self.index,
            'label': self.label,
            'centroid': list(self.centroid),
            'centroid_feature_space': list(self.centroid_feature),
            'count': self.count,
            'radii': dict(self.radii),
        }


@dataclass(frozen=True)
class DifficultyRecommendation:
    """Task difficulty levels suggested by a membership profile"""
    primary_level: int
    supplementary_levels: Tuple[int, ...]
    theta: float
    object_index: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'object': self.object_index,
            'primary_level': self.primary_level,
            'supplementary_levels': list(self.supplementary_levels),
            'theta': self.theta,
        }


@dataclass(frozen=True)
class ObjectRow:
    """Per-object line of the tabular export"""
    index: int
    x: float  # original units
    y: float
    assigned: int
    mu_xy: Tuple[float, ...]
    recommendation: DifficultyRecommendation


@dataclass(frozen=True)
class Agreement:
    """How often the primary recommendation matches the K-Means cluster"""
    fraction: float
    exceptions: Tuple[int, ...]  # object indices where they differ

    def to_dict(self) -> Dict[str, Any]:
        return {'fraction': self.fraction, 'exceptions': list(self.exceptions)}


@dataclass(frozen=True, eq=False)
class RunReport:
    """Everything one analysis run produced"""
    config: Dict[str, Any]
    x_name: str
    y_name: str
    scaling: ScalingReport
    labels: Tuple[str, ...]
    clusters: Tuple[ClusterSummary, ...]
    quality: QualityMetrics
    profiles: Tuple[MembershipProfile, ...]
    recommendations: Tuple[DifficultyRecommendation, ...]
    rows: Tuple[ObjectRow, ...]
    provenance: Dict[str, Any]
    sweep: Tuple[Tuple[int, QualityMetrics], ...] = ()
    selected_k: Optional[int] = None
    generated_at: str = field(default_factory=lambda: datetime.now().isoformat(timespec='seconds'))

    # Fitted objects kept for rendering
    view: Optional[FeatureView] = field(default=None, repr=False)
    model: Optional[ClusterModel] = field(default=None, repr=False)
    radii: Optional[ClusterRadii] = field(default=None, repr=False)
    fuzzy: FuzzyConfig = field(default_factory=FuzzyConfig, repr=False)

    @property
    def Q(self) -> int:
        return len(self.rows)

    @property
    def Q_k(self) -> int:
        return len(self.clusters)

    def profile_to_dict(self, profile: MembershipProfile) -> Dict[str, Any]:
        q = profile.query
        clusters = []
        for k in range(1, profile.Q_k + 1):
            i = k - 1
            entry = {
                'cluster': k,
                'label': self.labels[i],
                'dx': q.dx[i],
                'dy': q.dy[i],
                'rho': q.rho[i],
                'x_side': q.x_side[i].value,
                'y_side': q.y_side[i].value,
            }
            entry.update(profile.degrees(k))
            clusters.append(entry)
        return {
            'object': profile.object_index,
            'point': list(self.scaling.to_original_units(*q.point)),
            'point_feature_space': list(q.point),
            'assigned': profile.assigned,
            'clusters': clusters,
        }

    def to_dict(self) -> Dict[str, Any]:
        """
        Serializable payload (no timestamp, so identical runs compare equal)

        Keys: config, quality, clusters, profiles, recommendations, plus
        features, scaling, sweep, agreement, count_distribution, provenance.
        """
        payload = {
            'config': dict(self.config),
            'features': {'x': self.x_name, 'y': self.y_name},
            'scaling': self.scaling.to_dict(),
            'quality': self.quality.to_dict(),
            'clusters': [c.to_dict() for c in self.clusters],
            'profiles': [self.profile_to_dict(p) for p in self.profiles],
            'recommendations': [r.to_dict() for r in self.recommendations],
            'agreement': recommendation_agreement(self).to_dict(),
            'count_distribution': count_distribution([c.count for c in self.clusters]),
            'provenance': dict(self.provenance),
        }
        if self.sweep:
            payload['sweep'] = {
                'entries': [dict(k=k, **q.to_dict()) for k, q in self.sweep],
                'selected_k': self.selected_k,
            }
        return payload


# ============================================================================
# OPERATIONS
# ============================================================================

def label_clusters(m) -> List[str]:
    """
    Semantic names in canonical centroid order

    Args:
        m: ClusterModel, or a cluster count

    Returns:
        The four performance levels for four clusters, "level k" otherwise
    """
    q_k = m if isinstance(m, (int, np.integer)) else m.Q_k
    if q_k == 4:
        return list(FOUR_LEVEL_LABELS)
    return [f"level {k}" for k in range(1, int(q_k) + 1)]


def recommend_difficulty(p: MembershipProfile, theta: float = 0.5) -> DifficultyRecommendation:
    """
    Primary level = cluster of largest mu_xy (lowest index on ties);
    supplementary = every other cluster with mu_xy >= theta, strongest first

    Examples:
        mu_xy [0.10, 0.63, 0.83, 0.20] with theta 0.5 gives primary 3 and
        supplementary (2,)
    """
    if not 0.0 <= theta <= 1.0:
        raise ArgumentError(f"theta must lie in [0, 1], got {theta}")
    if p.Q_k == 0:
        raise ArgumentError("Membership profile is empty")

    primary = int(np.argmax(p.mu_xy)) + 1
    supplementary = tuple(k for k in p.ranked() if k != primary and p.mu_xy[k - 1] >= theta)
    return DifficultyRecommendation(primary, supplementary, theta, p.object_index)


def recommendation_agreement(report: RunReport) -> Agreement:
    """Share of objects whose primary level equals their assigned cluster"""
    if not report.rows:
        return Agreement(1.0, ())
    exceptions = tuple(r.index for r in report.rows if r.recommendation.primary_level != r.assigned)
    fraction = 1.0 - len(exceptions) / len(report.rows)
    return Agreement(fraction, exceptions)


def count_distribution(counts: Sequence[int]) -> str:
    """
    "unimodal" when cluster sizes rise to one peak and then fall, "skewed" otherwise

    Examples:
        >>> count_distribution([120, 380, 350, 150])
        'unimodal'
        >>> count_distribution([300, 100, 300])
        'skewed'
    """
    counts = list(counts)
    if not counts:
        return 'unimodal'
    peak = int(np.argmax(counts))
    rising = all(a <= b for a, b in zip(counts[:peak], counts[1:peak + 1]))
    falling = all(a >= b for a, b in zip(counts[peak:], counts[peak + 1:]))
    return 'unimodal' if rising and falling else 'skewed'


def build_run_report(view: FeatureView,
                     model: ClusterModel,
                     radii: ClusterRadii,
                     kmeans_cfg: KMeansConfig,
                     fuzzy_cfg: FuzzyConfig,
                     theta: float = 0.5,
                     queries: Sequence[int] = (),
                     points: Sequence[Tuple[float, float]] = (),
                     sweep: Optional[SweepResult] = None,
                     provenance: Optional[Dict[str, Any]] = None) -> RunReport:
    """
    Assemble the report of one run

    Args:
        view: Clustered (possibly scaled) features
        model: Fitted model
        radii: Radii of model
        kmeans_cfg: Clustering parameters used
        fuzzy_cfg: Membership parameters used
        theta: Supplementary recommendation threshold
        queries: 1-based objects to profile in detail
        points: Free points to profile, in original units
        sweep: Sweep result when the cluster count was selected automatically
        provenance: Extra provenance fields (input name, digest)

    Returns:
        RunReport
    """
    labels = label_clusters(model)
    scaling = view.scaling

    clusters = []
    for k in range(1, model.Q_k + 1):
        cx, cy = (float(c) for c in model.centroids[k - 1])
        clusters.append(ClusterSummary(
            index=k,
            label=labels[k - 1],
            centroid=scaling.to_original_units(cx, cy),
            centroid_feature=(cx, cy),
            count=int(model.counts[k - 1]),
            radii=radii.for_cluster(k),
        ))

    rows = []
    for i in range(1, view.Q + 1):
        profile = evaluate_membership(i, view, model, radii, fuzzy_cfg)
        x, y = scaling.to_original_units(float(view.x[i - 1]), float(view.y[i - 1]))
        rows.append(ObjectRow(
            index=i,
            x=x,
            y=y,
            assigned=int(model.assignments[i - 1]),
            mu_xy=tuple(float(v) for v in profile.mu_xy),
            recommendation=recommend_difficulty(profile, theta),
        ))

    profiles = [evaluate_membership(i, view, model, radii, fuzzy_cfg) for i in queries]
    for px, py in points:
        profiles.append(evaluate_point(scaling.to_feature_space(float(px), float(py)), model, radii, fuzzy_cfg))
    recommendations = [recommend_difficulty(p, theta) for p in profiles]

    config = {
        'x_column': view.x_name,
        'y_column': view.y_name,
        'Q': view.Q,
        'Q_k': model.Q_k,
        'k_R': fuzzy_cfg.k_R,
        'theta': theta,
        'seed': kmeans_cfg.seed,
        'n_restarts': kmeans_cfg.n_restarts,
        'max_iter': kmeans_cfg.max_iter,
        'tol': kmeans_cfg.tol,
        'queries': list(queries),
        'points': [list(map(float, p)) for p in points],
    }
    prov = {'version': VERSION, 'seed': kmeans_cfg.seed}
    prov.update(provenance or {})

    report = RunReport(
        config=config,
        x_name=view.x_name,
        y_name=view.y_name,
        scaling=scaling,
        labels=tuple(labels),
        clusters=tuple(clusters),
        quality=model.quality,
        profiles=tuple(profiles),
        recommendations=tuple(recommendations),
        rows=tuple(rows),
        provenance=prov,
        sweep=tuple((e.k, e.quality) for e in sweep.entries) if sweep else (),
        selected_k=sweep.selected_k if sweep else None,
        view=view,
        model=model,
        radii=radii,
        fuzzy=fuzzy_cfg,
    )

    agreement = recommendation_agreement(report)
    if agreement.exceptions:
        logger.info("Primary level differs from the assigned cluster for %d objects: %s",
                    len(agreement.exceptions), list(agreement.exceptions))
    return report
