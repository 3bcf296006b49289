"""Unit-disk graphs and the x = 1/2 cut."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from common.errors import InvalidArgument
from geometry.network import NetworkInstance

# cKDTree is queried slightly wide and the closed-disk rule re-applied exactly
_QUERY_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class UnitDiskGraph:
    num_nodes: int
    edges: np.ndarray
    capacity: float
    radius: float

    @property
    def num_edges(self) -> int:
        return int(self.edges.shape[0])

    def adjacency(self) -> csr_matrix:
        u, v = self.edges[:, 0], self.edges[:, 1]
        data = np.ones(2 * self.num_edges)
        rows = np.concatenate([u, v])
        cols = np.concatenate([v, u])
        return csr_matrix((data, (rows, cols)), shape=(self.num_nodes, self.num_nodes))

    def component_labels(self) -> np.ndarray:
        _, labels = connected_components(self.adjacency(), directed=False)
        return labels

    def is_connected(self) -> bool:
        count, _ = connected_components(self.adjacency(), directed=False)
        return count == 1

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.num_nodes)


@dataclass(frozen=True)
class CutStats:
    straddling_edges: int
    left_strip: int
    right_strip: int


def unit_disk_edges(positions: np.ndarray, radius: float) -> np.ndarray:
    if positions.shape[0] < 2 or radius <= 0:
        return np.empty((0, 2), dtype=np.int64)
    tree = cKDTree(positions)
    pairs = tree.query_pairs(radius * (1 + _QUERY_SLACK) + 1e-15, output_type='ndarray')
    if pairs.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    pairs = np.sort(pairs.astype(np.int64), axis=1)
    delta = positions[pairs[:, 0]] - positions[pairs[:, 1]]
    keep = np.hypot(delta[:, 0], delta[:, 1]) <= radius
    pairs = pairs[keep]
    order = np.lexsort((pairs[:, 1], pairs[:, 0]))
    return pairs[order]


def build_graph(inst: NetworkInstance, c: float = 1.0, radius: Optional[float] = None) -> UnitDiskGraph:
    """Closed-disk graph: (u, v) is an edge iff dist <= radius (default inst.d)."""
    if not c > 0 or not math.isfinite(c):
        raise InvalidArgument(f"capacity must be positive and finite, got {c}")
    r = inst.d if radius is None else float(radius)
    if r < 0:
        raise InvalidArgument(f"radius must be >= 0, got {r}")
    edges = unit_disk_edges(inst.positions, r)
    edges.flags.writeable = False
    return UnitDiskGraph(num_nodes=inst.n, edges=edges, capacity=float(c), radius=r)


def count_cut_edges(g: UnitDiskGraph, inst: NetworkInstance) -> CutStats:
    if g.num_nodes != inst.n:
        raise InvalidArgument("graph was not built from this instance")
    xs = inst.xs
    left = xs < 0.5
    straddle = left[g.edges[:, 0]] != left[g.edges[:, 1]]
    r = g.radius
    left_strip = np.count_nonzero((xs >= 0.5 - r) & (xs < 0.5))
    right_strip = np.count_nonzero((xs >= 0.5) & (xs <= 0.5 + r))
    return CutStats(straddling_edges=int(np.count_nonzero(straddle)),
                    left_strip=int(left_strip), right_strip=int(right_strip))
