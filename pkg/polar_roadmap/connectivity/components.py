"""
Epsilon-graph connected components of point clouds.
"""
from dataclasses import dataclass
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

logger = logging.getLogger(__name__)


@dataclass
class ComponentGraph:
    points: np.ndarray
    epsilon: float
    labels: np.ndarray
    count: int
    stable: bool

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.count) if self.count else np.zeros(0, dtype=int)

    def members(self, label: int) -> np.ndarray:
        return np.flatnonzero(self.labels == label)

    def significant(self, min_size: int) -> List[int]:
        """Labels of components with at least ``min_size`` points, largest first."""
        sizes = self.sizes
        keep = [int(c) for c in np.flatnonzero(sizes >= min_size)]
        return sorted(keep, key=lambda c: (-sizes[c], c))

    def nearest(self, queries, radius: Optional[float] = None) -> np.ndarray:
        """Component label of the closest cloud point to each query, -1 beyond ``radius``."""
        Q = np.atleast_2d(np.asarray(queries, dtype=float))
        if not len(self.points) or not len(Q):
            return np.full(len(Q), -1, dtype=int)
        distances, index = cKDTree(self.points).query(Q)
        labels = self.labels[index].astype(int)
        if radius is not None:
            labels[distances > radius] = -1
        return labels


def median_spacing(points: np.ndarray) -> float:
    """Median distance from a point to its nearest neighbour."""
    if len(points) < 2:
        return 0.0
    distances, _ = cKDTree(points).query(points, k=2)
    return float(np.median(distances[:, 1]))


def label_components(points: np.ndarray, epsilon: float, extra_edges: Sequence[Tuple[int, int]] = ()) -> Tuple[int, np.ndarray]:
    """Connected components of the graph joining points closer than ``epsilon``, plus ``extra_edges``."""
    m = len(points)
    if m == 0:
        return 0, np.zeros(0, dtype=int)
    pairs = cKDTree(points).query_pairs(epsilon, output_type="ndarray") if epsilon > 0 else np.empty((0, 2), dtype=int)
    if len(extra_edges):
        pairs = np.vstack([pairs.reshape(-1, 2), np.asarray(extra_edges, dtype=int).reshape(-1, 2)])
    adjacency = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(m, m))
    count, labels = connected_components(adjacency, directed=False)
    return int(count), labels


def _count_at_least(labels: np.ndarray, min_size: int) -> int:
    return int(np.sum(np.bincount(labels) >= min_size)) if len(labels) else 0


def epsilon_components(points, epsilon: Optional[float] = None, factor: float = 3.0, min_size: int = 1) -> ComponentGraph:
    """
    Components of the epsilon-graph; epsilon defaults to ``factor`` times the
    median nearest-neighbour spacing. The partition counts as stable when
    doubling epsilon does not change the number of components with at least
    ``min_size`` points.
    """
    X = np.asarray(points, dtype=float)
    if X.ndim == 1:
        X = X.reshape(0, 0) if X.size == 0 else X[None, :]
    if epsilon is None:
        epsilon = factor * median_spacing(X)
    count, labels = label_components(X, epsilon)
    _, wide_labels = label_components(X, 2 * epsilon)
    kept, wide = _count_at_least(labels, min_size), _count_at_least(wide_labels, min_size)
    stable = wide == kept
    logger.debug("epsilon %.3g gives %d component(s) of %d+ points, %d at twice epsilon", epsilon, kept, min_size, wide)
    return ComponentGraph(X, float(epsilon), labels, count, stable)
