"""Per-instance ordering of the three throughput quantities.

On one graph: the routed rate gamma is feasible, the concurrent solver's
lam_hat is within (1 - eps) of the optimum, and the center cut shared by the
left-to-right commodities bounds that optimum from above. So

    gamma <= lam_hat / (1 - eps)    and    lam_hat <= nu_bar.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace

from common.errors import CapacityLabError, InvalidArgument, SandwichViolation
from common.logger_config import setup_logger
from flow.concurrent import DEFAULT_EPSILON, DEFAULT_MAX_PHASES, concurrent_flow_approx
from flow.network import CommoditySet, FlowNetwork
from geometry.graph import build_graph, count_cut_edges
from geometry.network import NetworkInstance
from harness.config import RADIUS_GRID, ExperimentConfig
from harness.experiment import connected_instance, run_metadata, run_trials, working_radius
from harness.netfile import serialize_network
from harness.writers import rows_to_csv, write_sidecar, write_text
from routing.grid import DEFAULT_C_GRID, build_grid
from routing.router import achievable_throughput, compute_loads

logger = setup_logger(__name__)

_SLACK = 1e-9

SANDWICH_HEADER = ('n', 'seed', 'gamma', 'lambda', 'nu_bar', 'gamma_norm', 'lambda_norm',
                   'nu_bar_norm', 'holds', 'failed', 'wall_ms')


@dataclass(frozen=True)
class SandwichResult:
    gamma: float
    lam: float
    nu_bar: float
    epsilon: float
    commodities: int

    @property
    def lower_holds(self) -> bool:
        return self.gamma <= self.lam / (1.0 - self.epsilon) * (1 + _SLACK)

    @property
    def upper_holds(self) -> bool:
        return self.lam <= self.nu_bar * (1 + _SLACK)

    @property
    def holds(self) -> bool:
        return self.lower_holds and self.upper_holds


def sandwich_check(inst: NetworkInstance, epsilon: float = DEFAULT_EPSILON, *, c_grid: float = DEFAULT_C_GRID,
                   capacity: float = 1.0, radius_mode: str = RADIUS_GRID,
                   max_phases: int = DEFAULT_MAX_PHASES) -> SandwichResult:
    """gamma, lam_hat and nu_bar on the left-to-right commodities of ``inst``.

    Raises ``SandwichViolation`` with the serialized instance when the ordering fails.
    """
    cfg = ExperimentConfig('concurrent-lambda', (inst.n,), epsilon=epsilon, c_grid=c_grid, capacity=capacity,
                           xi_mode=inst.xi_mode, radius_mode=radius_mode, max_phases=max_phases, workers=1)
    g = build_graph(inst, cfg.capacity, working_radius(inst, cfg))
    if not g.is_connected():
        raise InvalidArgument(f"sandwich check needs a connected instance (n={inst.n}, seed={inst.seed})")
    comm = CommoditySet.from_instance(inst, left_to_right=True)
    comm.require_nonempty()

    grid = build_grid(inst, cfg.c_grid)
    gamma = achievable_throughput(compute_loads(grid, comm), cfg.capacity)
    lam = concurrent_flow_approx(FlowNetwork.from_graph(g), comm, cfg.epsilon, cfg.max_phases).value
    cut = count_cut_edges(g, inst).straddling_edges * cfg.capacity
    result = SandwichResult(gamma, lam, cut / len(comm), cfg.epsilon, len(comm))

    if not result.holds:
        message = (f"ordering broken for n={inst.n} seed={inst.seed}: gamma={gamma:.6g}, "
                   f"lambda={lam:.6g}, nu_bar={result.nu_bar:.6g}, eps={cfg.epsilon}")
        logger.error(f"[Sandwich] {message}")
        raise SandwichViolation(message, serialize_network(inst))
    logger.debug(f"[Sandwich] n={inst.n} seed={inst.seed}: {gamma:.4g} <= {lam:.4g} <= {result.nu_bar:.4g}")
    return result


@dataclass(frozen=True)
class SandwichRow:
    n: int
    seed: int
    result: SandwichResult = None
    failed: bool = False
    violated: bool = False
    wall_ms: float = 0.0
    dump: str = ''

    def as_tuple(self, cfg: ExperimentConfig):
        law = cfg.normalizer(self.n, 0.0)
        if self.result is None:
            values = (math.nan,) * 6
        else:
            r = self.result
            values = (r.gamma, r.lam, r.nu_bar, r.gamma / law, r.lam / law, r.nu_bar / law)
        wall = 0 if cfg.deterministic else int(round(self.wall_ms))
        return (self.n, self.seed) + values + (not self.violated and not self.failed, self.failed, wall)


def _sandwich_trial(cfg: ExperimentConfig, n: int, seed: int) -> SandwichRow:
    start = time.perf_counter()
    used = seed
    try:
        inst, _ = connected_instance(n, seed, cfg)
        used = inst.seed
        result = sandwich_check(inst, cfg.epsilon, c_grid=cfg.c_grid, capacity=cfg.capacity,
                                radius_mode=cfg.radius_mode, max_phases=cfg.max_phases)
        row = SandwichRow(n, used, result)
    except SandwichViolation as e:
        logger.error(f"[Sandwich] instance dump: {e.dump.strip()}")
        row = SandwichRow(n, used, violated=True, dump=e.dump)
    except CapacityLabError as e:
        logger.warning(f"[Sandwich] n={n} seed={seed} flagged: {e}")
        row = SandwichRow(n, used, failed=True)
    return replace(row, wall_ms=(time.perf_counter() - start) * 1000.0)


def sweep_sandwich(cfg: ExperimentConfig) -> list[SandwichRow]:
    """Sandwich check for every (n, seed) of ``cfg``; normalized by ln^(3/2) n / sqrt n."""
    cfg = cfg.with_metric('concurrent-lambda')
    logger.info(f"[Sandwich] sweep over n={list(cfg.n_list)} x {cfg.trials} trials")
    rows = run_trials(cfg, _sandwich_trial)
    broken = [row for row in rows if row.violated]
    if broken:
        logger.error(f"[Sandwich] {len(broken)} falsification events")
    if cfg.output:
        write_text(cfg.output, sandwich_to_csv(rows, cfg))
        meta = run_metadata(cfg)
        meta.update(metric='sandwich', violations=len(broken), failed=sum(1 for row in rows if row.failed))
        write_sidecar(cfg.output, meta)
    return rows


def sandwich_to_csv(rows, cfg: ExperimentConfig) -> str:
    return rows_to_csv([row.as_tuple(cfg) for row in rows], header=SANDWICH_HEADER)
