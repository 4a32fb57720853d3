"""
Fuzzy Cluster Membership
Asymmetric triangular membership functions built from per-cluster radii
"""
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .exceptions import ArgumentError
from .kmeans import ClusterModel
from ..utils.log import get_logger

if TYPE_CHECKING:
    from ..data.dataset import FeatureView

logger = get_logger(__name__)


class Side(Enum):
    """Which side of a centroid an object lies on"""
    L = "L"
    R = "R"
    DN = "Dn"
    UP = "Up"


@dataclass(frozen=True)
class FuzzyConfig:
    """Membership parameters"""
    k_R: float = 1.5  # radius change factor

    def __post_init__(self):
        if not (np.isfinite(self.k_R) and self.k_R > 0):
            raise ArgumentError(f"k_R must be a positive number, got {self.k_R}")


@dataclass(frozen=True, eq=False)
class ClusterRadii:
    """Per-cluster Euclidean radius and the four one-sided axis radii"""
    R_c: np.ndarray
    R_cxL: np.ndarray
    R_cxR: np.ndarray
    R_cyDn: np.ndarray
    R_cyUp: np.ndarray

    def __post_init__(self):
        for name in ('R_c', 'R_cxL', 'R_cxR', 'R_cyDn', 'R_cyUp'):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def Q_k(self) -> int:
        return len(self.R_c)

    def check_cluster(self, k: int):
        if not 1 <= k <= self.Q_k:
            raise ArgumentError(f"Cluster index {k} outside 1..{self.Q_k}")

    def for_cluster(self, k: int) -> Dict[str, float]:
        """All five radii of cluster k (1-based)"""
        self.check_cluster(k)
        i = k - 1
        return {
            'R_c': float(self.R_c[i]),
            'R_cxL': float(self.R_cxL[i]),
            'R_cxR': float(self.R_cxR[i]),
            'R_cyDn': float(self.R_cyDn[i]),
            'R_cyUp': float(self.R_cyUp[i]),
        }

    def side_radius(self, k: int, side: Side) -> float:
        self.check_cluster(k)
        table = {
            Side.L: self.R_cxL,
            Side.R: self.R_cxR,
            Side.DN: self.R_cyDn,
            Side.UP: self.R_cyUp,
        }
        return float(table[side][k - 1])


@dataclass(frozen=True)
class MembershipQuery:
    """Offsets of one point from every centroid"""
    point: Tuple[float, float]
    dx: Tuple[float, ...]
    dy: Tuple[float, ...]
    rho: Tuple[float, ...]
    x_side: Tuple[Side, ...]
    y_side: Tuple[Side, ...]


@dataclass(frozen=True, eq=False)
class MembershipProfile:
    """Degrees of belonging of one object to every cluster"""
    query: MembershipQuery
    mu_rho: np.ndarray
    mu_x: np.ndarray
    mu_y: np.ndarray
    mu_xy: np.ndarray
    object_index: Optional[int] = None  # 1-based, None for free points
    assigned: Optional[int] = None  # K-Means cluster of the object

    def __post_init__(self):
        for name in ('mu_rho', 'mu_x', 'mu_y', 'mu_xy'):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def Q_k(self) -> int:
        return len(self.mu_xy)

    def degrees(self, k: int) -> Dict[str, float]:
        """The four membership values for cluster k (1-based)"""
        if not 1 <= k <= self.Q_k:
            raise ArgumentError(f"Cluster index {k} outside 1..{self.Q_k}")
        i = k - 1
        return {
            'mu_rho': float(self.mu_rho[i]),
            'mu_x': float(self.mu_x[i]),
            'mu_y': float(self.mu_y[i]),
            'mu_xy': float(self.mu_xy[i]),
        }

    def ranked(self) -> List[int]:
        """Cluster indices by descending mu_xy, lower index first on ties"""
        order = np.argsort(-self.mu_xy, kind='stable')
        return [int(i) + 1 for i in order]


# ============================================================================
# RADII
# ============================================================================

def _one_sided_max(offsets: np.ndarray) -> float:
    return float(offsets.max()) if offsets.size and offsets.max() > 0 else 0.0


def compute_radii(v: 'FeatureView', m: ClusterModel) -> ClusterRadii:
    """
    Radii of every cluster around its centroid

    R_c is the largest member distance to the centroid; R_cxL / R_cxR
    (R_cyDn / R_cyUp) are the largest member offsets to the left / right
    (below / above) of the centroid, 0 when no member lies on that side.
    """
    if m.Q != v.Q:
        raise ArgumentError(f"Model covers {m.Q} objects, view has {v.Q}")

    points = v.points
    radii = {name: np.zeros(m.Q_k) for name in ('R_c', 'R_cxL', 'R_cxR', 'R_cyDn', 'R_cyUp')}
    for k in range(1, m.Q_k + 1):
        members = points[m.assignments == k]
        if not len(members):
            continue
        cx, cy = m.centroids[k - 1]
        dx = members[:, 0] - cx
        dy = members[:, 1] - cy
        i = k - 1
        radii['R_c'][i] = float(np.max(np.sqrt(dx * dx + dy * dy)))
        radii['R_cxL'][i] = _one_sided_max(-dx)
        radii['R_cxR'][i] = _one_sided_max(dx)
        radii['R_cyDn'][i] = _one_sided_max(-dy)
        radii['R_cyUp'][i] = _one_sided_max(dy)

    return ClusterRadii(**radii)


# ============================================================================
# MEMBERSHIP FUNCTIONS
# ============================================================================

def _triangular(distance: float, radius: float, k_R: float) -> float:
    """Linear decay from 1 at the centre to 0 at radius * k_R"""
    if distance < 0:
        raise ArgumentError(f"Distance must be non-negative, got {distance}")
    if radius == 0:
        return 1.0 if distance == 0 else 0.0
    support = radius * k_R
    if distance >= support:
        return 0.0
    return min(1.0, max(0.0, 1.0 - distance / support))


def _side(side: Union[Side, str]) -> Side:
    try:
        return Side(side)
    except ValueError:
        raise ArgumentError(f"Unknown side {side!r}")


def mu_rho(k: int, rho: float, radii: ClusterRadii, cfg: FuzzyConfig) -> float:
    """Membership of cluster k by Euclidean distance to its centroid"""
    radii.check_cluster(k)
    return _triangular(rho, float(radii.R_c[k - 1]), cfg.k_R)


def mu_x(k: int, dx: float, side: Union[Side, str], radii: ClusterRadii, cfg: FuzzyConfig) -> float:
    """Membership of cluster k along x; side is L or R of the centroid"""
    side = _side(side)
    if side not in (Side.L, Side.R):
        raise ArgumentError(f"x side must be L or R, got {side.value}")
    radius = radii.side_radius(k, side)
    if dx == 0:
        return 1.0
    return _triangular(dx, radius, cfg.k_R)


def mu_y(k: int, dy: float, side: Union[Side, str], radii: ClusterRadii, cfg: FuzzyConfig) -> float:
    """Membership of cluster k along y; side is Dn or Up of the centroid"""
    side = _side(side)
    if side not in (Side.DN, Side.UP):
        raise ArgumentError(f"y side must be Dn or Up, got {side.value}")
    radius = radii.side_radius(k, side)
    if dy == 0:
        return 1.0
    return _triangular(dy, radius, cfg.k_R)


def mu_xy(mu_x_val: float, mu_y_val: float) -> float:
    """
    Combined membership over both coordinates (root mean square)

    Examples:
        >>> mu_xy(1.0, 1.0)
        1.0
    """
    return float(np.sqrt((mu_x_val * mu_x_val + mu_y_val * mu_y_val) / 2.0))


def build_query(point: Sequence[float], m: ClusterModel) -> MembershipQuery:
    """Offsets and sides of a feature-space point against every centroid"""
    x, y = float(point[0]), float(point[1])
    dx, dy, rho, x_side, y_side = [], [], [], [], []
    for cx, cy in m.centroids:
        ox = x - float(cx)
        oy = y - float(cy)
        dx.append(abs(ox))
        dy.append(abs(oy))
        rho.append(float(np.sqrt(ox * ox + oy * oy)))
        # On-axis objects get R / Up; their membership is 1 either way
        x_side.append(Side.L if ox < 0 else Side.R)
        y_side.append(Side.DN if oy < 0 else Side.UP)
    return MembershipQuery((x, y), tuple(dx), tuple(dy), tuple(rho), tuple(x_side), tuple(y_side))


def evaluate_point(point: Sequence[float],
                   m: ClusterModel,
                   radii: ClusterRadii,
                   cfg: FuzzyConfig,
                   object_index: Optional[int] = None,
                   assigned: Optional[int] = None) -> MembershipProfile:
    """
    Membership profile of an arbitrary feature-space point

    Args:
        point: (x, y) in the clustering space
        m: Fitted model
        radii: Radii of m
        cfg: Membership parameters

    Returns:
        MembershipProfile with all four families for every cluster
    """
    if radii.Q_k != m.Q_k:
        raise ArgumentError(f"Radii describe {radii.Q_k} clusters, model has {m.Q_k}")

    q = build_query(point, m)
    rho_vals, x_vals, y_vals, xy_vals = [], [], [], []
    for k in range(1, m.Q_k + 1):
        i = k - 1
        mx = mu_x(k, q.dx[i], q.x_side[i], radii, cfg)
        my = mu_y(k, q.dy[i], q.y_side[i], radii, cfg)
        rho_vals.append(mu_rho(k, q.rho[i], radii, cfg))
        x_vals.append(mx)
        y_vals.append(my)
        xy_vals.append(mu_xy(mx, my))

    return MembershipProfile(
        query=q,
        mu_rho=rho_vals,
        mu_x=x_vals,
        mu_y=y_vals,
        mu_xy=xy_vals,
        object_index=object_index,
        assigned=assigned,
    )


def evaluate_membership(i_v: int,
                        v: 'FeatureView',
                        m: ClusterModel,
                        radii: ClusterRadii,
                        cfg: FuzzyConfig) -> MembershipProfile:
    """
    Membership profile of object i_v (1-based) of the view

    Raises:
        ArgumentError: i_v outside 1..Q
    """
    if not 1 <= i_v <= v.Q:
        raise ArgumentError(f"Object index {i_v} outside 1..{v.Q}")
    if m.Q != v.Q:
        raise ArgumentError(f"Model covers {m.Q} objects, view has {v.Q}")

    point = (float(v.x[i_v - 1]), float(v.y[i_v - 1]))
    profile = evaluate_point(point, m, radii, cfg,
                             object_index=i_v,
                             assigned=int(m.assignments[i_v - 1]))
    logger.debug("object %d: mu_xy=%s", i_v, np.round(profile.mu_xy, 4).tolist())
    return profile
