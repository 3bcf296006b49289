"""Exact single-commodity max-flow by blocking flows on level graphs."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from common.errors import InvalidArgument
from common.logger_config import setup_logger
from flow.network import FlowNetwork

logger = setup_logger(__name__)

_EPS = 1e-12


@dataclass(frozen=True)
class MaxFlowResult:
    value: float
    cut_arcs: tuple[tuple[int, int], ...]
    cut_capacity: float
    source_side: frozenset
    arc_flows: tuple[float, ...]


def _levels(net, residual, s, t):
    level = [-1] * net.num_nodes
    level[s] = 0
    queue = deque([s])
    heads, out_arcs = net.heads, net.out_arcs
    while queue:
        u = queue.popleft()
        for a in out_arcs[u]:
            v = heads[a]
            if level[v] < 0 and residual[a] > _EPS:
                level[v] = level[u] + 1
                queue.append(v)
    return level if level[t] >= 0 else None


def _blocking_flow(net, residual, level, s, t):
    heads, tails, reverse, out_arcs = net.heads, net.tails, net.reverse, net.out_arcs
    pointer = [0] * net.num_nodes
    pushed = 0.0
    while True:
        path = []
        u = s
        while u != t:
            arcs = out_arcs[u]
            while pointer[u] < len(arcs):
                a = arcs[pointer[u]]
                v = heads[a]
                if residual[a] > _EPS and level[v] == level[u] + 1:
                    break
                pointer[u] += 1
            else:
                if u == s:
                    return pushed
                # dead end: prune u from the level graph and retreat
                level[u] = -1
                a = path.pop()
                u = tails[a]
                pointer[u] += 1
                continue
            path.append(a)
            u = v
        bottleneck = min(residual[a] for a in path)
        for a in path:
            residual[a] -= bottleneck
            residual[reverse[a]] += bottleneck
        pushed += bottleneck


def max_flow(net: FlowNetwork, sources, sinks) -> MaxFlowResult:
    """Maximum flow from a source set to a sink set, with a certifying min cut.

    Sources and sinks are joined to a super-source/super-sink by
    infinite-capacity arcs; the returned cut lists arcs of ``net`` only.
    """
    sources, sinks = set(sources), set(sinks)
    if not sources or not sinks:
        raise InvalidArgument("max_flow needs nonempty source and sink sets")
    aug = net.with_terminals(sources, sinks)
    s, t = aug.super_source, aug.super_sink

    # inner loops index plain lists
    aug_view = _ListView(aug)
    residual = aug.capacity.tolist()
    value = 0.0
    rounds = 0
    while True:
        level = _levels(aug_view, residual, s, t)
        if level is None:
            break
        value += _blocking_flow(aug_view, residual, level, s, t)
        rounds += 1

    reachable = _reachable(aug_view, residual, s)
    capacity = net.capacity.tolist()
    cut = []
    cut_capacity = 0.0
    for a in range(net.num_arcs):
        u, v = aug_view.tails[a], aug_view.heads[a]
        if u in reachable and v not in reachable and capacity[a] > 0:
            cut.append((u, v))
            cut_capacity += capacity[a]
    flows = tuple(capacity[a] - residual[a] for a in range(net.num_arcs))
    logger.debug(f"[Flow] max-flow {value:.6g} after {rounds} blocking rounds, cut of {len(cut)} arcs")
    return MaxFlowResult(value=value, cut_arcs=tuple(cut), cut_capacity=cut_capacity,
                         source_side=frozenset(u for u in reachable if u < net.num_nodes),
                         arc_flows=flows)


def _reachable(net, residual, s):
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        for a in net.out_arcs[u]:
            v = net.heads[a]
            if v not in seen and residual[a] > _EPS:
                seen.add(v)
                stack.append(v)
    return seen


class _ListView:
    def __init__(self, net: FlowNetwork):
        self.num_nodes = net.num_nodes
        self.tails = net.tails.tolist()
        self.heads = net.heads.tolist()
        self.reverse = net.reverse.tolist()
        self.out_arcs = net.out_arcs
