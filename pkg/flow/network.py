"""Capacitated arc lists, commodity sets and multicommodity flow solutions."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from common.errors import InvalidArgument
from geometry.graph import UnitDiskGraph
from geometry.network import NetworkInstance


def _frozen(values, dtype):
    out = np.array(values, dtype=dtype)
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class FlowNetwork:
    """Arc list in which every arc has a partner: ``reverse[a]`` is the arc v->u."""

    num_nodes: int
    tails: np.ndarray
    heads: np.ndarray
    capacity: np.ndarray
    reverse: np.ndarray
    super_source: Optional[int] = None
    super_sink: Optional[int] = None

    @classmethod
    def from_graph(cls, g: UnitDiskGraph) -> 'FlowNetwork':
        """Each undirected edge becomes arcs 2k (u->v) and 2k+1 (v->u), both of capacity c."""
        u, v = g.edges[:, 0], g.edges[:, 1]
        tails = np.empty(2 * g.num_edges, dtype=np.int64)
        heads = np.empty(2 * g.num_edges, dtype=np.int64)
        tails[0::2], tails[1::2] = u, v
        heads[0::2], heads[1::2] = v, u
        reverse = np.arange(2 * g.num_edges, dtype=np.int64) ^ 1
        capacity = np.full(2 * g.num_edges, g.capacity)
        return cls(g.num_nodes, _frozen(tails, np.int64), _frozen(heads, np.int64),
                   _frozen(capacity, float), _frozen(reverse, np.int64))

    @classmethod
    def from_arcs(cls, num_nodes: int, arcs) -> 'FlowNetwork':
        """Directed network; each given (u, v, cap) gets a zero-capacity partner v->u."""
        tails, heads, caps = [], [], []
        for u, v, cap in arcs:
            if not (0 <= u < num_nodes and 0 <= v < num_nodes) or u == v:
                raise InvalidArgument(f"bad arc ({u}, {v})")
            if cap < 0:
                raise InvalidArgument(f"negative capacity on arc ({u}, {v})")
            tails += [u, v]
            heads += [v, u]
            caps += [float(cap), 0.0]
        reverse = np.arange(len(tails), dtype=np.int64) ^ 1
        return cls(num_nodes, _frozen(tails, np.int64), _frozen(heads, np.int64),
                   _frozen(caps, float), _frozen(reverse, np.int64))

    @classmethod
    def undirected(cls, num_nodes: int, edges, capacity: float = 1.0) -> 'FlowNetwork':
        """Symmetric network from an explicit edge list (small hand-built cases)."""
        edges = np.array(sorted({(min(u, v), max(u, v)) for u, v in edges}), dtype=np.int64).reshape(-1, 2)
        g = UnitDiskGraph(num_nodes=num_nodes, edges=edges, capacity=float(capacity), radius=math.nan)
        return cls.from_graph(g)

    @property
    def num_arcs(self) -> int:
        return int(self.tails.shape[0])

    def with_terminals(self, sources, sinks) -> 'FlowNetwork':
        sources, sinks = sorted(set(sources)), sorted(set(sinks))
        if not sources or not sinks:
            raise InvalidArgument("source and sink sets must be nonempty")
        if set(sources) & set(sinks):
            raise InvalidArgument("source and sink sets must be disjoint")
        for node in sources + sinks:
            if not 0 <= node < self.num_nodes:
                raise InvalidArgument(f"terminal {node} out of range")
        s_star, t_star = self.num_nodes, self.num_nodes + 1
        extra = [(s_star, u) for u in sources] + [(v, t_star) for v in sinks]
        new_tails, new_heads = [], []
        for u, v in extra:
            new_tails += [u, v]
            new_heads += [v, u]
        tails = np.concatenate([self.tails, np.array(new_tails, dtype=np.int64)])
        heads = np.concatenate([self.heads, np.array(new_heads, dtype=np.int64)])
        caps = np.concatenate([self.capacity, np.tile([math.inf, 0.0], len(extra))])
        reverse = np.concatenate([self.reverse, self.num_arcs + (np.arange(2 * len(extra)) ^ 1)])
        return FlowNetwork(self.num_nodes + 2, _frozen(tails, np.int64), _frozen(heads, np.int64),
                           _frozen(caps, float), _frozen(reverse, np.int64),
                           super_source=s_star, super_sink=t_star)

    @cached_property
    def out_arcs(self) -> list[list[int]]:
        out = [[] for _ in range(self.num_nodes)]
        for a, u in enumerate(self.tails.tolist()):
            out[u].append(a)
        return out

    @cached_property
    def arc_index(self) -> dict[tuple[int, int], int]:
        index = {}
        for a, (u, v) in enumerate(zip(self.tails.tolist(), self.heads.tolist())):
            index.setdefault((u, v), a)
        return index

    @cached_property
    def edge_arcs(self) -> np.ndarray:
        """Canonical arc of every arc pair (the one with the smaller index)."""
        arcs = np.arange(self.num_arcs)
        return arcs[arcs < self.reverse]

    def is_symmetric(self) -> bool:
        return bool(np.all(self.capacity == self.capacity[self.reverse]))

    def require_simple_symmetric(self):
        """Concurrent solvers work on undirected simple networks."""
        if not self.is_symmetric():
            raise InvalidArgument("concurrent flow needs equal capacity on both arcs of every edge")
        a = self.edge_arcs
        u, v = self.tails[a], self.heads[a]
        keys = np.minimum(u, v) * self.num_nodes + np.maximum(u, v)
        if np.unique(keys).size != keys.size:
            raise InvalidArgument("concurrent flow needs a network without parallel edges")


@dataclass(frozen=True)
class CommoditySet:
    pairs: tuple[tuple[int, int], ...]
    left_to_right: bool = False
    full_size: int = 0

    @classmethod
    def from_instance(cls, inst: NetworkInstance, left_to_right: bool = False) -> 'CommoditySet':
        pairs = inst.commodities
        if left_to_right:
            pairs = pairs[inst.left_to_right_mask()]
        return cls(tuple((int(s), int(t)) for s, t in pairs), left_to_right, inst.n)

    @classmethod
    def of(cls, pairs) -> 'CommoditySet':
        pairs = tuple((int(s), int(t)) for s, t in pairs)
        return cls(pairs, False, len(pairs))

    def __len__(self):
        return len(self.pairs)

    def require_nonempty(self):
        if not self.pairs:
            raise InvalidArgument("commodity set is empty")


@dataclass(frozen=True, eq=False)
class FlowSolution:
    """Per-commodity net flow keyed by arc; both arcs of a pair carry opposite values."""

    commodities: tuple[tuple[int, int], ...]
    flows: tuple[dict, ...]
    value: float
    num_arcs: int
    utilization: dict = field(default_factory=dict)

    @classmethod
    def build(cls, net: FlowNetwork, commodities, flows, value: float) -> 'FlowSolution':
        util = {}
        reverse = net.reverse
        for f in flows:
            for a, amount in f.items():
                if a < reverse[a]:
                    util[a] = util.get(a, 0.0) + abs(amount)
        return cls(tuple(commodities), tuple(flows), float(value), net.num_arcs, util)

    @classmethod
    def zero(cls, net: FlowNetwork, commodities) -> 'FlowSolution':
        commodities = tuple(commodities)
        return cls.build(net, commodities, tuple({} for _ in commodities), 0.0)

    def edge_loads(self, net: FlowNetwork) -> list[tuple[int, int, float]]:
        return [(int(net.tails[a]), int(net.heads[a]), load) for a, load in sorted(self.utilization.items())]
