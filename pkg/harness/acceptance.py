"""Full-size checks of the quantities the unit tests only sample.

Each check takes its sizes as keyword arguments with the full-size values as
defaults, so the test suite can run the same code on smaller inputs.
``run_acceptance`` runs every registered check and reports one
``CheckResult`` per check.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import asdict, dataclass

import numpy as np

from antenna.occupancy import simulate_empty_bins
from common.errors import CapacityLabError, InvalidArgument
from common.logger_config import setup_logger
from common.rng import stream
from flow.concurrent import concurrent_flow_approx
from flow.exact import ORACLE_REL_TOL, concurrent_flow_exact
from flow.maxflow import max_flow
from flow.network import CommoditySet, FlowNetwork
from geometry.cut import expected_cut_edges
from geometry.graph import build_graph, count_cut_edges
from geometry.network import connectivity_radius, generate_instance
from harness.config import RADIUS_CONNECTIVITY, ExperimentConfig
from harness.experiment import connected_instance
from routing.grid import build_grid
from stats.chernoff import binomial_tail, chernoff_theta, empirical_tail, uniform_delta_threshold

logger = setup_logger(__name__)

RESTRICTION_BAND = (1 / 8, 8.0)
DELTA_BAND = (0.60, 0.63)
# (trials, p, delta); None stands for the uniform threshold
TAIL_POINTS = ((1000, 0.01, 0.5), (10 ** 4, 0.01, 0.3), (500, 0.2, 0.1), (100, 0.5, 0.9), (1000, 0.02, None))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    wall_ms: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)


def enumerated_min_cut(num_nodes, arcs, s, t):
    """Smallest s-t cut by trying every source side; exponential, for tiny graphs."""
    others = [v for v in range(num_nodes) if v not in (s, t)]
    best = math.inf
    for k in range(len(others) + 1):
        for side in itertools.combinations(others, k):
            source_side = {s, *side}
            cut = sum(c for u, v, c in arcs if u in source_side and v not in source_side)
            best = min(best, cut)
    return best


def random_digraph(rng: np.random.Generator, max_nodes: int = 10, density: float = 0.4):
    n = int(rng.integers(4, max_nodes + 1))
    arcs = [(u, v, int(rng.integers(1, 6))) for u in range(n) for v in range(n)
            if u != v and rng.random() < density]
    return n, arcs


def oracle_instances(count: int, seed: int = 0, nodes=(4, 10), commodities=(2, 4), xi: float = 1.0):
    """``count`` connected unit-disk networks with a few commodities each.

    Sizes and commodity counts are drawn from the ``graphs`` stream; the
    instance seeds walk upwards from ``seed`` until a connected one turns up.
    """
    rng = stream(seed, 'graphs')
    next_seed = seed
    for _ in range(count):
        n = int(rng.integers(nodes[0], nodes[1] + 1))
        k = int(rng.integers(commodities[0], commodities[1] + 1))
        while True:
            inst = generate_instance(n, next_seed, xi)
            next_seed += 1
            g = build_graph(inst)
            if g.is_connected():
                break
        yield FlowNetwork.from_graph(g), CommoditySet.of(inst.commodities[:k].tolist())


def check_cut_edge_mean(n: int = 10 ** 4, seeds: int = 100, tol: float = 0.05) -> CheckResult:
    counts = []
    for seed in range(seeds):
        inst = generate_instance(n, seed)
        counts.append(count_cut_edges(build_graph(inst), inst).straddling_edges)
    expected = expected_cut_edges(n, connectivity_radius(n))
    rel = abs(np.mean(counts) / expected - 1.0)
    return CheckResult('cut-edge-mean', rel <= tol,
                       f"mean {np.mean(counts):.1f} vs (2/3)n²d³ {expected:.1f} (off by {rel:.2%})")


def check_maxflow_enumeration(graphs: int = 500, max_nodes: int = 10, seed: int = 17) -> CheckResult:
    rng = stream(seed, 'graphs')
    mismatches = 0
    for _ in range(graphs):
        n, arcs = random_digraph(rng, max_nodes)
        if not arcs:
            continue
        value = max_flow(FlowNetwork.from_arcs(n, arcs), {0}, {n - 1}).value
        expected = enumerated_min_cut(n, arcs, 0, n - 1)
        # integer capacities, so the solver's value is an exact integer too
        if round(value) != expected or abs(value - expected) > 1e-9:
            mismatches += 1
            logger.error(f"[Acceptance] max-flow {value} != enumerated cut {expected} on {n} nodes")
    return CheckResult('maxflow-enumeration', mismatches == 0, f"{mismatches} of {graphs} graphs disagree")


def check_concurrent_oracle(instances: int = 200, epsilon: float = 0.05, seed: int = 0) -> CheckResult:
    outside = 0
    for net, comm in oracle_instances(instances, seed):
        exact = float(concurrent_flow_exact(net, comm))
        result = concurrent_flow_approx(net, comm, epsilon)
        low, high = (1 - epsilon) * exact - 1e-12, exact * (1 + ORACLE_REL_TOL)
        if not (result.converged and low <= result.value <= high):
            outside += 1
            logger.error(f"[Acceptance] lambda_hat {result.value:.9g} outside [{low:.9g}, {high:.9g}] "
                         f"({net.num_nodes} nodes, {len(comm)} commodities)")
    return CheckResult('concurrent-oracle', outside == 0,
                       f"{outside} of {instances} instances outside [(1-eps) lam*, lam*], eps={epsilon}")


def restriction_ratio(n: int, seed: int, epsilon: float = 0.3) -> float:
    """lam_hat over every commodity divided by lam_hat over the left-to-right ones."""
    cfg = ExperimentConfig('concurrent-lambda', (n,), epsilon=epsilon, radius_mode=RADIUS_CONNECTIVITY, workers=1)
    inst, g = connected_instance(n, seed, cfg)
    net = FlowNetwork.from_graph(g)
    full = concurrent_flow_approx(net, CommoditySet.from_instance(inst), epsilon).value
    restricted = concurrent_flow_approx(net, CommoditySet.from_instance(inst, left_to_right=True), epsilon).value
    if restricted <= 0:
        raise InvalidArgument(f"n={n} seed={seed}: restricted rate is zero")
    return full / restricted


def check_restriction_ratio(n_list=(256, 512, 1024), seeds: int = 3, epsilon: float = 0.3) -> CheckResult:
    lo, hi = RESTRICTION_BAND
    ratios = [restriction_ratio(n, seed, epsilon) for n in n_list for seed in range(seeds)]
    return CheckResult('restriction-ratio', all(lo <= r <= hi for r in ratios),
                       f"full/restricted in [{min(ratios):.3f}, {max(ratios):.3f}] over n={list(n_list)}")


def check_chernoff(samples: int = 20000, seed: int = 0) -> CheckResult:
    delta_star = uniform_delta_threshold()
    problems = []
    if not DELTA_BAND[0] <= delta_star <= DELTA_BAND[1]:
        problems.append(f"threshold {delta_star:.4f} outside {DELTA_BAND}")
    for trials, p, delta in TAIL_POINTS:
        delta = delta_star if delta is None else delta
        bound = chernoff_theta(delta).bound(trials * p)
        exact = binomial_tail(trials, p, delta)
        simulated = empirical_tail(trials, p, delta, samples, seed)
        if exact > bound or simulated > bound:
            problems.append(f"tail at ({trials}, {p}, {delta:.3f}) exceeds bound {bound:.3g}")
    return CheckResult('chernoff', not problems, '; '.join(problems) or f"threshold {delta_star:.4f}")


def check_empty_bins(m: int = 10 ** 5, seeds: int = 20, tol: float = 0.01) -> CheckResult:
    fractions = [simulate_empty_bins(m, m, seed)[0] / m for seed in range(seeds)]
    rel = abs(np.mean(fractions) * math.e - 1.0)
    return CheckResult('empty-bins', rel <= tol, f"empty fraction {np.mean(fractions):.5f} vs 1/e (off by {rel:.2%})")


def check_left_right_share(n: int = 10 ** 5, seeds: int = 50, tol: float = 0.02) -> CheckResult:
    share = np.mean([generate_instance(n, seed).left_to_right_mask().mean() for seed in range(seeds)])
    rel = abs(share / 0.25 - 1.0)
    return CheckResult('left-right-share', rel <= tol, f"share {share:.5f} vs 1/4 (off by {rel:.2%})")


def check_cells_occupied(n: int = 10 ** 4, seeds: int = 100, rate: float = 0.99) -> CheckResult:
    occupied = sum(1 for seed in range(seeds) if build_grid(generate_instance(n, seed)).min_occupancy >= 1)
    return CheckResult('cells-occupied', occupied >= rate * seeds, f"{occupied} of {seeds} grids fully occupied")


CHECKS = {
    'cut-edge-mean': check_cut_edge_mean,
    'maxflow-enumeration': check_maxflow_enumeration,
    'concurrent-oracle': check_concurrent_oracle,
    'restriction-ratio': check_restriction_ratio,
    'chernoff': check_chernoff,
    'empty-bins': check_empty_bins,
    'left-right-share': check_left_right_share,
    'cells-occupied': check_cells_occupied,
}


def run_check(name: str) -> CheckResult:
    try:
        check = CHECKS[name]
    except KeyError:
        raise InvalidArgument(f"unknown check {name!r}; choose from {', '.join(CHECKS)}") from None
    start = time.perf_counter()
    try:
        result = check()
    except CapacityLabError as e:
        logger.warning(f"[Acceptance] {name} could not run: {e}")
        result = CheckResult(name, False, f"error: {e}")
    wall_ms = (time.perf_counter() - start) * 1000.0
    log = logger.info if result.passed else logger.error
    log(f"[Acceptance] {name}: {'pass' if result.passed else 'FAIL'} ({result.detail}) in {wall_ms / 1000:.1f}s")
    return CheckResult(result.name, result.passed, result.detail, wall_ms)


def run_acceptance(names=None) -> list[CheckResult]:
    return [run_check(name) for name in (names or CHECKS)]
