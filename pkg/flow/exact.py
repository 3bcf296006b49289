"""Exact concurrent-flow oracle for desk-sized networks.

Enumerates every simple path of every commodity and solves the path LP

    maximize lam  s.t.  sum_{p in P_i} x_p >= lam   for each commodity i
                        sum_{p through e} x_p <= c_e for each edge e

with the rational simplex, so the optimum comes back as an exact Fraction.
"""
from __future__ import annotations

from fractions import Fraction

import networkx as nx

from common.errors import InvalidArgument, OracleScaleExceeded
from common.logger_config import setup_logger
from flow.network import CommoditySet, FlowNetwork
from flow.simplex import OPTIMAL, LinearProgram

logger = setup_logger(__name__)

ORACLE_MAX_NODES = 12
# relative slack when comparing an approximate rate with the exact optimum
ORACLE_REL_TOL = 1e-6


def _edge_graph(net: FlowNetwork) -> nx.Graph:
    net.require_simple_symmetric()
    g = nx.Graph()
    g.add_nodes_from(range(net.num_nodes))
    for a in net.edge_arcs.tolist():
        u, v = int(net.tails[a]), int(net.heads[a])
        g.add_edge(u, v, capacity=Fraction(float(net.capacity[a])), index=len(g.edges))
    return g


def _check_inputs(net: FlowNetwork, comm: CommoditySet):
    if net.num_nodes > ORACLE_MAX_NODES:
        raise OracleScaleExceeded(
            f"exact oracle handles at most {ORACLE_MAX_NODES} nodes, got {net.num_nodes}")
    comm.require_nonempty()
    for s, t in comm.pairs:
        if not (0 <= s < net.num_nodes and 0 <= t < net.num_nodes) or s == t:
            raise InvalidArgument(f"bad commodity ({s}, {t})")


def _path_program(net: FlowNetwork, comm: CommoditySet, lam=None):
    """Path LP; with ``lam`` given the rate is fixed and only feasibility matters."""
    g = _edge_graph(net)
    paths = []
    for i, (s, t) in enumerate(comm.pairs):
        found = [(i, tuple(g.edges[u, v]['index'] for u, v in nx.utils.pairwise(p)))
                 for p in nx.all_simple_paths(g, s, t)]
        if not found:
            return None
        paths.extend(found)
    offset = 0 if lam is not None else 1
    lp = LinearProgram(len(paths) + offset)
    for i in range(len(comm.pairs)):
        row = {offset + k: 1 for k, (owner, _) in enumerate(paths) if owner == i}
        if lam is None:
            row[0] = -1
            lp.add_constraint(row, '>=', 0)
        else:
            lp.add_constraint(row, '>=', Fraction(lam))
    through = [dict() for _ in range(g.number_of_edges())]
    for k, (_, edges) in enumerate(paths):
        for e in edges:
            through[e][offset + k] = 1
    for _, _, data in g.edges(data=True):
        row = through[data['index']]
        if row:
            lp.add_constraint(row, '<=', data['capacity'])
    if lam is None:
        lp.set_objective({0: 1})
    logger.debug(f"[Flow] path LP with {len(paths)} paths over {g.number_of_edges()} edges")
    return lp


def concurrent_flow_exact(net: FlowNetwork, comm: CommoditySet) -> Fraction:
    """Optimal common rate lam*; 0 when some commodity has no path at all."""
    _check_inputs(net, comm)
    lp = _path_program(net, comm)
    if lp is None:
        return Fraction(0)
    result = lp.solve()
    if result.status != OPTIMAL:
        # lam = 0 is always feasible and edge rows bound every path
        raise InvalidArgument(f"path LP ended {result.status}")
    return result.value


def concurrent_flow_feasible(net: FlowNetwork, comm: CommoditySet, lam) -> bool:
    """Whether every commodity can carry ``lam`` at once (phase 1 of the simplex only)."""
    _check_inputs(net, comm)
    if lam < 0:
        raise InvalidArgument(f"rate must be nonnegative, got {lam}")
    lp = _path_program(net, comm, lam)
    if lp is None:
        return lam == 0
    return lp.is_feasible()
