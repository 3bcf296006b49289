"""Approximate maximum concurrent flow by multiplicative weights.

Garg-Könemann style: each phase routes the same demand for every commodity
along shortest paths under exponential edge lengths, lengthening every edge it
uses. The accumulated flow is feasible once divided by its worst edge
congestion, and every length vector gives the dual bound D(l)/alpha(l) on the
optimum. The loop stops as soon as the scaled primal is within (1 - eps) of
the best dual bound, which certifies the approximation.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, dijkstra

from common.errors import InvalidArgument
from common.logger_config import setup_logger
from flow.network import CommoditySet, FlowNetwork, FlowSolution

logger = setup_logger(__name__)

DEFAULT_EPSILON = 0.05
DEFAULT_MAX_PHASES = 4000

_RENORMALIZE_ABOVE = 1e150


@dataclass(frozen=True)
class ConcurrentFlowResult:
    value: float
    epsilon: float
    iterations: int
    solution: FlowSolution
    upper_bound: float
    converged: bool
    disconnected: tuple[int, ...] = ()

    @property
    def gap(self) -> float:
        if self.upper_bound <= 0:
            return 0.0
        return 1.0 - self.value / self.upper_bound


class _EdgeGraph:
    """Undirected view of a symmetric network, laid out for scipy's Dijkstra."""

    def __init__(self, net: FlowNetwork):
        net.require_simple_symmetric()
        self.net = net
        self.arcs = net.edge_arcs
        self.u = net.tails[self.arcs]
        self.v = net.heads[self.arcs]
        self.cap = net.capacity[self.arcs].astype(float)
        if np.any(self.cap <= 0) or not np.all(np.isfinite(self.cap)):
            raise InvalidArgument("edge capacities must be positive and finite")
        n = net.num_nodes
        self.n = n
        order = np.lexsort((self.v, self.u))
        self.order = order
        self.indices = self.v[order]
        self.indptr = np.concatenate([[0], np.cumsum(np.bincount(self.u, minlength=n))])
        self.edge_of = {}
        for k, (a, b) in enumerate(zip(self.u.tolist(), self.v.tolist())):
            self.edge_of[(a, b)] = (k, 1)
            self.edge_of[(b, a)] = (k, -1)

    def matrix(self, lengths: np.ndarray) -> csr_matrix:
        return csr_matrix((lengths[self.order], self.indices, self.indptr), shape=(self.n, self.n))

    def component_labels(self) -> np.ndarray:
        _, labels = connected_components(self.matrix(np.ones(len(self.cap))), directed=False)
        return labels

    def path_edges(self, predecessors: np.ndarray, s: int, t: int) -> list[tuple[int, int]]:
        edges = []
        node = t
        while node != s:
            prev = int(predecessors[node])
            edges.append(self.edge_of[(prev, node)])
            node = prev
        edges.reverse()
        return edges


def concurrent_flow_approx(net: FlowNetwork, comm: CommoditySet, epsilon: float = DEFAULT_EPSILON,
                           max_phases: int = DEFAULT_MAX_PHASES) -> ConcurrentFlowResult:
    if not 0 < epsilon < 1:
        raise InvalidArgument(f"epsilon must lie in (0, 1), got {epsilon}")
    if max_phases < 1:
        raise InvalidArgument(f"max_phases must be >= 1, got {max_phases}")
    comm.require_nonempty()
    graph = _EdgeGraph(net)
    pairs = comm.pairs
    for s, t in pairs:
        if not (0 <= s < net.num_nodes and 0 <= t < net.num_nodes) or s == t:
            raise InvalidArgument(f"bad commodity ({s}, {t})")

    labels = graph.component_labels()
    cut_off = tuple(i for i, (s, t) in enumerate(pairs) if labels[s] != labels[t])
    if cut_off:
        logger.warning(f"[Flow] {len(cut_off)} commodities are disconnected; lambda forced to 0")
        return ConcurrentFlowResult(0.0, epsilon, 0, FlowSolution.zero(net, pairs), 0.0, True, cut_off)

    m = len(graph.cap)
    cap = graph.cap
    step = epsilon / 3.0
    lengths = 1.0 / cap
    sources = np.array(sorted({s for s, _ in pairs}), dtype=np.int64)
    row_of = {int(s): i for i, s in enumerate(sources)}

    def dual_bound():
        dist = dijkstra(graph.matrix(lengths), directed=False, indices=sources)
        alpha = sum(dist[row_of[s], t] for s, t in pairs)
        return float(np.dot(cap, lengths)) / alpha

    # demand per phase starts at the uniform-length dual bound, so lambda*/demand <= 1
    demand = dual_bound()
    upper = demand
    net_flow = [dict() for _ in pairs]
    load = np.zeros(m)
    lower = 0.0
    phases = 0
    converged = False

    while True:
        if phases:
            upper = min(upper, dual_bound())
            if lower >= (1.0 - epsilon) * upper:
                converged = True
                break
        if phases >= max_phases:
            break
        for i, (s, t) in enumerate(pairs):
            remaining = demand
            flows = net_flow[i]
            while remaining > 1e-15 * demand:
                _, pred = dijkstra(graph.matrix(lengths), directed=False, indices=s,
                                   return_predecessors=True)
                path = graph.path_edges(pred, s, t)
                ks = np.fromiter((k for k, _ in path), dtype=np.int64, count=len(path))
                amount = min(remaining, float(cap[ks].min()))
                for k, sign in path:
                    old = flows.get(k, 0.0)
                    new = old + sign * amount
                    flows[k] = new
                    load[k] += abs(new) - abs(old)
                lengths[ks] *= 1.0 + step * amount / cap[ks]
                remaining -= amount
        phases += 1
        congestion = float(np.max(load / cap))
        lower = phases * demand / congestion
        top = lengths.max()
        if top > _RENORMALIZE_ABOVE:
            lengths /= top
            np.maximum(lengths, 1e-300, out=lengths)
        logger.debug(f"[Flow] phase {phases}: lower={lower:.6g} upper={upper:.6g}")

    scale = 1.0 / congestion
    arcs, reverse = graph.arcs, net.reverse
    solution_flows = []
    for flows in net_flow:
        f = {}
        for k, amount in flows.items():
            if amount:
                a = int(arcs[k])
                f[a] = amount * scale
                f[int(reverse[a])] = -amount * scale
        solution_flows.append(f)
    value = phases * demand * scale
    solution = FlowSolution.build(net, pairs, solution_flows, value)
    if not converged:
        logger.warning(f"[Flow] stopped after {phases} phases with gap {1 - value / upper:.4f} > eps={epsilon}")
    else:
        logger.info(f"[Flow] lambda={value:.6g} (upper {upper:.6g}) after {phases} phases")
    return ConcurrentFlowResult(value=value, epsilon=epsilon, iterations=phases, solution=solution,
                                upper_bound=upper, converged=converged)


def solution_to_json(result: ConcurrentFlowResult, net: FlowNetwork) -> dict:
    return {
        'lambda': result.value,
        'epsilon': result.epsilon,
        'upper_bound': result.upper_bound,
        'converged': result.converged,
        'iterations': result.iterations,
        'edge_loads': [[u, v, load] for u, v, load in result.solution.edge_loads(net)],
    }
