"""
K-Means Clustering
Lloyd iteration with k-means++ seeding and the intra/inter-cluster quality functionals
"""
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import ArgumentError, UndefinedMetricError
from ..utils.log import get_logger
from ..utils.parallel import ParallelConfig, ParallelProcessor

if TYPE_CHECKING:
    from ..data.dataset import FeatureView

logger = get_logger(__name__)


@dataclass(frozen=True)
class KMeansConfig:
    """K-Means run parameters"""
    Q_k: int = 4
    seed: int = 0
    n_restarts: int = 10
    max_iter: int = 300
    tol: float = 1e-6
    n_jobs: int = 1  # >1 runs restarts on a thread pool, 0 sizes it from the CPU count

    def __post_init__(self):
        if self.Q_k < 1:
            raise ArgumentError(f"Cluster count must be at least 1, got {self.Q_k}")
        if self.n_restarts < 1:
            raise ArgumentError("n_restarts must be positive")
        if self.max_iter < 1:
            raise ArgumentError("max_iter must be positive")
        if self.tol < 0:
            raise ArgumentError("tol must be non-negative")
        if self.n_jobs < 0:
            raise ArgumentError("n_jobs must be non-negative")


@dataclass(frozen=True)
class QualityMetrics:
    """Average intra-cluster distance, inter-cluster distance and their ratio"""
    F0: float
    F1: Optional[float]  # None with a single cluster
    ratio: Optional[float]  # None when F1 is undefined or zero

    def to_dict(self) -> dict:
        return {'F0': self.F0, 'F1': self.F1, 'ratio': self.ratio}


@dataclass(frozen=True, eq=False)
class ClusterModel:
    """
    A fitted partition

    Cluster indices are 1-based everywhere in the public API: assignments
    hold values 1..Q_k and centroids[k - 1] is the centroid of cluster k.
    """
    centroids: np.ndarray  # (Q_k, 2)
    assignments: np.ndarray  # (Q,), values in 1..Q_k
    counts: np.ndarray  # (Q_k,)
    quality: QualityMetrics
    converged: bool = True
    iterations: int = 0
    wcss: float = 0.0
    history: Tuple[float, ...] = field(default=())

    def __post_init__(self):
        for name, dtype in (('centroids', float), ('assignments', int), ('counts', int)):
            arr = np.array(getattr(self, name), dtype=dtype)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, 'history', tuple(float(w) for w in self.history))

    @property
    def Q_k(self) -> int:
        return len(self.centroids)

    @property
    def Q(self) -> int:
        return len(self.assignments)

    def centroid(self, k: int) -> np.ndarray:
        """Centroid of cluster k (1-based)"""
        self._check_cluster(k)
        return self.centroids[k - 1]

    def members(self, k: int) -> np.ndarray:
        """0-based positions of the objects assigned to cluster k"""
        self._check_cluster(k)
        return np.flatnonzero(self.assignments == k)

    def _check_cluster(self, k: int):
        if not 1 <= k <= self.Q_k:
            raise ArgumentError(f"Cluster index {k} outside 1..{self.Q_k}")

    @classmethod
    def from_assignments(cls,
                         points,
                         assignments: Sequence[int],
                         centroids=None) -> 'ClusterModel':
        """
        Build a model from a known partition

        Args:
            points: (Q, 2) feature-space points
            assignments: 1-based cluster index per point
            centroids: Optional (Q_k, 2) centroids; computed as member
                means when omitted

        Raises:
            ArgumentError: shape mismatch or an empty cluster
        """
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        labels = np.asarray(assignments, dtype=int)
        if labels.shape != (len(pts),):
            raise ArgumentError("One assignment per point is required")
        if len(labels) and labels.min() < 1:
            raise ArgumentError("Assignments are 1-based")

        if centroids is None:
            q_k = int(labels.max()) if len(labels) else 0
            counts = np.bincount(labels - 1, minlength=q_k)
            if np.any(counts == 0):
                raise ArgumentError("Every cluster needs at least one member")
            centers = _cluster_means(pts, labels - 1, q_k)
        else:
            centers = np.asarray(centroids, dtype=float).reshape(-1, 2)
            q_k = len(centers)
            if len(labels) and labels.max() > q_k:
                raise ArgumentError("Assignment refers to a missing centroid")
            counts = np.bincount(labels - 1, minlength=q_k)

        w = _wcss(pts, centers, labels - 1)
        return cls(
            centroids=centers,
            assignments=labels,
            counts=counts,
            quality=compute_quality(pts, labels),
            converged=True,
            iterations=0,
            wcss=w,
            history=(w,),
        )


@dataclass(frozen=True, eq=False)
class SweepEntry:
    k: int
    quality: QualityMetrics
    model: ClusterModel


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Quality of every cluster count tried, plus the selected one"""
    entries: Tuple[SweepEntry, ...]
    selected_k: int

    @property
    def selected(self) -> SweepEntry:
        return next(e for e in self.entries if e.k == self.selected_k)


# ============================================================================
# DISTANCES AND QUALITY FUNCTIONALS
# ============================================================================

def euclidean_distance(a: Sequence[float], b: Sequence[float]) -> float:
    """
    Euclidean distance between two points of the feature plane

    Examples:
        >>> euclidean_distance((0, 0), (3, 4))
        5.0
    """
    dx = float(a[0]) - float(b[0])
    dy = float(a[1]) - float(b[1])
    return float(np.sqrt(dx * dx + dy * dy))


def _pair_distances(points: np.ndarray, labels: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Distances and same-cluster flags for all unordered pairs i < j"""
    i, j = np.triu_indices(len(points), k=1)
    diff = points[i] - points[j]
    dist = np.sqrt(np.sum(diff * diff, axis=1))
    return dist, labels[i] == labels[j]


def compute_quality(points, assignments) -> QualityMetrics:
    """F0, F1 and F0/F1 for a partition; undefined values are None"""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    dist, same = _pair_distances(pts, np.asarray(assignments))

    f0 = float(dist[same].mean()) if same.any() else 0.0
    f1 = float(dist[~same].mean()) if (~same).any() else None
    ratio = f0 / f1 if f1 else None
    return QualityMetrics(F0=f0, F1=f1, ratio=ratio)


def intra_cluster_f0(v: 'FeatureView', m: ClusterModel) -> float:
    """Mean distance over same-cluster pairs (0 when there are none)"""
    _check_coverage(v, m)
    dist, same = _pair_distances(v.points, m.assignments)
    return float(dist[same].mean()) if same.any() else 0.0


def inter_cluster_f1(v: 'FeatureView', m: ClusterModel) -> float:
    """
    Mean distance over pairs in different clusters

    Raises:
        UndefinedMetricError: no pair spans two clusters
    """
    _check_coverage(v, m)
    dist, same = _pair_distances(v.points, m.assignments)
    if not (~same).any():
        raise UndefinedMetricError("Inter-cluster distance needs at least two populated clusters")
    return float(dist[~same].mean())


def quality_ratio(f0: float, f1: float) -> float:
    """
    F0 / F1, to be minimized

    Raises:
        UndefinedMetricError: f1 is zero
    """
    if f1 == 0:
        raise UndefinedMetricError("Quality ratio is undefined when F1 = 0")
    return f0 / f1


def _check_coverage(v: 'FeatureView', m: ClusterModel):
    if m.Q != v.Q:
        raise ArgumentError(f"Model covers {m.Q} objects, view has {v.Q}")


# ============================================================================
# LLOYD ITERATION
# ============================================================================

@dataclass
class _RunResult:
    centers: np.ndarray
    labels: np.ndarray  # 0-based
    wcss: float
    history: List[float]
    iterations: int
    converged: bool


def _assign(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Nearest centroid per point; argmin keeps the lowest index on ties"""
    diff = points[:, None, :] - centers[None, :, :]
    return np.argmin(np.sum(diff * diff, axis=2), axis=1)


def _cluster_means(points: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    counts = np.bincount(labels, minlength=k).astype(float)
    sums = np.zeros((k, 2))
    np.add.at(sums, labels, points)
    return sums / counts[:, None]


def _wcss(points: np.ndarray, centers: np.ndarray, labels: np.ndarray) -> float:
    diff = points - centers[labels]
    return float(np.sum(diff * diff))


def _fill_empty(points: np.ndarray, centers: np.ndarray, labels: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Reseed every empty cluster with the point farthest from its centroid

    Only points from clusters with more than one member are moved.
    """
    k = len(centers)
    counts = np.bincount(labels, minlength=k)
    if counts.all():
        return centers, labels

    centers = centers.copy()
    labels = labels.copy()
    for empty in np.flatnonzero(counts == 0):
        diff = points - centers[labels]
        dist = np.sum(diff * diff, axis=1)
        dist[counts[labels] <= 1] = -1.0
        donor = int(np.argmax(dist))
        counts[labels[donor]] -= 1
        labels[donor] = empty
        counts[empty] = 1
        centers[empty] = points[donor]
    return centers, labels


def _kmeans_plusplus(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ seeding: each next center drawn with probability ~ D(x)^2"""
    n = len(points)
    centers = np.empty((k, 2))
    centers[0] = points[rng.integers(n)]
    closest = np.sum((points - centers[0]) ** 2, axis=1)

    for c in range(1, k):
        total = closest.sum()
        if total > 0:
            idx = rng.choice(n, p=closest / total)
        else:
            idx = rng.integers(n)  # all remaining mass is on existing centers
        centers[c] = points[idx]
        closest = np.minimum(closest, np.sum((points - centers[c]) ** 2, axis=1))
    return centers


def _canonical_order(centers: np.ndarray) -> np.ndarray:
    return np.argsort(centers.sum(axis=1), kind='stable')


def _relabel(centers: np.ndarray, labels: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    order = _canonical_order(centers)
    inverse = np.empty_like(order)
    inverse[order] = np.arange(len(order))
    return centers[order], inverse[labels]


def _lloyd_run(points: np.ndarray, cfg: KMeansConfig, restart: int) -> _RunResult:
    """One seeded Lloyd run"""
    rng = np.random.default_rng([cfg.seed, restart])
    k = cfg.Q_k
    centers = _kmeans_plusplus(points, k, rng)
    history: List[float] = []
    converged = False
    iterations = 0

    for iterations in range(1, cfg.max_iter + 1):
        labels = _assign(points, centers)
        centers, labels = _fill_empty(points, centers, labels)
        new_centers = _cluster_means(points, labels, k)
        history.append(_wcss(points, new_centers, labels))

        shift = float(np.max(np.sqrt(np.sum((new_centers - centers) ** 2, axis=1))))
        centers = new_centers
        if shift < cfg.tol or shift == 0.0:
            converged = True
            break

    # Final pass in canonical order so argmin ties resolve to the lowest index
    centers = centers[_canonical_order(centers)]
    labels = _assign(points, centers)
    centers, labels = _fill_empty(points, centers, labels)
    centers = _cluster_means(points, labels, k)
    centers, labels = _relabel(centers, labels)

    wcss = _wcss(points, centers, labels)
    history.append(wcss)
    logger.debug("restart %d: wcss=%.6g after %d iterations (converged=%s)",
                 restart, wcss, iterations, converged)
    return _RunResult(centers, labels, wcss, history, iterations, converged)


def kmeans_fit(v: 'FeatureView', cfg: KMeansConfig) -> ClusterModel:
    """
    Cluster the feature view into cfg.Q_k groups

    Runs cfg.n_restarts independent Lloyd runs, each seeded from
    (cfg.seed, restart index), and keeps the one with the lowest
    within-cluster sum of squares (earliest restart on ties). Clusters are
    numbered by ascending centroid x + y.

    Raises:
        ArgumentError: Q_k outside 1..Q
    """
    points = np.array(v.points, dtype=float)
    if not 1 <= cfg.Q_k <= len(points):
        raise ArgumentError(f"Cluster count {cfg.Q_k} outside 1..{len(points)}")

    processor = ParallelProcessor(ParallelConfig(max_workers=cfg.n_jobs or None))
    runs = processor.map_ordered(lambda r: _lloyd_run(points, cfg, r), list(range(cfg.n_restarts)))

    best = runs[0]
    for run in runs[1:]:
        if run.wcss < best.wcss:
            best = run

    labels = best.labels + 1
    logger.info("K-Means Q_k=%d: wcss=%.6g, %d iterations", cfg.Q_k, best.wcss, best.iterations)
    return ClusterModel(
        centroids=best.centers,
        assignments=labels,
        counts=np.bincount(best.labels, minlength=cfg.Q_k),
        quality=compute_quality(points, labels),
        converged=best.converged,
        iterations=best.iterations,
        wcss=best.wcss,
        history=tuple(best.history),
    )


def sweep_k(v: 'FeatureView', k_range: Tuple[int, int], cfg: KMeansConfig) -> SweepResult:
    """
    Fit every cluster count in an inclusive range and pick the lowest F0/F1

    Ties go to the smaller k; counts whose ratio is undefined never win.

    Raises:
        ArgumentError: range not within [2, Q]
        UndefinedMetricError: no count in the range has a defined ratio
    """
    low, high = int(k_range[0]), int(k_range[1])
    if not 2 <= low <= high <= v.Q:
        raise ArgumentError(f"Sweep range {low}..{high} must lie within 2..{v.Q}")

    entries = []
    selected_k = None
    best_ratio = float('inf')
    for k in range(low, high + 1):
        model = kmeans_fit(v, replace(cfg, Q_k=k))
        entries.append(SweepEntry(k, model.quality, model))
        ratio = model.quality.ratio
        logger.info("sweep k=%d: F0/F1=%s", k, 'undefined' if ratio is None else f"{ratio:.6g}")
        if ratio is not None and (selected_k is None or ratio < best_ratio):
            selected_k = k
            best_ratio = ratio

    if selected_k is None:
        raise UndefinedMetricError(f"F0/F1 is undefined for every k in {low}..{high}")
    return SweepResult(tuple(entries), selected_k)
