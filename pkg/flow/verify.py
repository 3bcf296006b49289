"""Independent feasibility check of multicommodity flow solutions."""
from __future__ import annotations

import numpy as np

from common.errors import InvalidArgument
from common.logger_config import setup_logger
from flow.network import FlowNetwork, FlowSolution

logger = setup_logger(__name__)

FEASIBILITY_TOL = 1e-9


def _dense(sol: FlowSolution, net: FlowNetwork) -> np.ndarray:
    if sol.num_arcs != net.num_arcs:
        raise InvalidArgument(f"solution has {sol.num_arcs} arcs, network has {net.num_arcs}")
    if len(sol.flows) != len(sol.commodities):
        raise InvalidArgument("one flow vector per commodity expected")
    dense = np.zeros((len(sol.flows), net.num_arcs))
    for i, f in enumerate(sol.flows):
        for a, amount in f.items():
            if not 0 <= a < net.num_arcs:
                raise InvalidArgument(f"arc {a} out of range")
            dense[i, a] = amount
    for s, t in sol.commodities:
        if not (0 <= s < net.num_nodes and 0 <= t < net.num_nodes):
            raise InvalidArgument(f"commodity ({s}, {t}) outside the network")
    return dense


def verify_solution(sol: FlowSolution, net: FlowNetwork, tol: float = FEASIBILITY_TOL) -> bool:
    """True iff skew symmetry, capacity, conservation and fairness hold within ``tol``."""
    flows = _dense(sol, net)
    if sol.value < -tol:
        logger.debug(f"[Verify] negative rate {sol.value}")
        return False
    if not np.all(np.isfinite(flows)):
        return False

    reverse = net.reverse
    if np.any(np.abs(flows + flows[:, reverse]) > tol):
        logger.debug("[Verify] skew symmetry violated")
        return False

    capacity = net.capacity
    forward = np.clip(flows, 0.0, None).sum(axis=0)
    if np.any(forward > capacity + tol):
        logger.debug(f"[Verify] arc over capacity by {float(np.max(forward - capacity)):.3g}")
        return False
    canon = net.edge_arcs
    pair_cap = np.maximum(capacity[canon], capacity[reverse[canon]])
    usage = np.abs(flows[:, canon]).sum(axis=0)
    if np.any(usage > pair_cap + tol):
        logger.debug(f"[Verify] edge over capacity by {float(np.max(usage - pair_cap)):.3g}")
        return False

    for i, (s, t) in enumerate(sol.commodities):
        outflow = np.bincount(net.tails, weights=flows[i], minlength=net.num_nodes)
        expected = np.zeros(net.num_nodes)
        expected[s] += sol.value
        expected[t] -= sol.value
        if np.any(np.abs(outflow - expected) > tol):
            logger.debug(f"[Verify] commodity {i} breaks conservation or fairness")
            return False
    return True
