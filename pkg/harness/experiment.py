"""Scaling sweeps: one measurement per (n, seed), merged in (n, seed) order."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from antenna.beams import beam_count, beam_cut_edges
from antenna.models import AntennaModel, Variant
from antenna.omni import omni_schedule
from common.errors import CapacityLabError, DisconnectedInstance
from common.logger_config import setup_logger
from flow.concurrent import concurrent_flow_approx
from flow.maxflow import max_flow
from flow.network import CommoditySet, FlowNetwork
from geometry.graph import UnitDiskGraph, build_graph, count_cut_edges
from geometry.network import NetworkInstance, connectivity_radius, generate_instance
from harness.config import (
    MAX_RETRIES,
    METRICS,
    NORMALIZERS,
    RADIUS_GRID,
    RETRY_STRIDE,
    ExperimentConfig,
)
from harness.threadpool import ThreadPool
from harness.writers import ROW_HEADER, rows_to_csv, write_sidecar, write_text
from routing.grid import build_grid, grid_radius
from routing.router import achievable_throughput, compute_loads
from stats.regression import MIN_SWEEP_SIZES, FitResult, loglog_fit

logger = setup_logger(__name__)


@dataclass(frozen=True)
class ScalingRow:
    n: int
    seed: int
    metric: str
    raw: float
    normalized: float
    failed: bool
    wall_ms: float

    def as_tuple(self, deterministic: bool = False):
        return (self.n, self.seed, self.metric, self.raw, self.normalized, self.failed,
                0 if deterministic else int(round(self.wall_ms)))


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    rows: tuple
    fit_raw: Optional[FitResult]
    fit_normalized: Optional[FitResult]

    @property
    def failures(self) -> int:
        return sum(1 for row in self.rows if row.failed)

    def to_csv(self) -> str:
        return rows_to_csv([row.as_tuple(self.config.deterministic) for row in self.rows])

    def metadata(self) -> dict:
        meta = run_metadata(self.config)
        for key, fit in (('fit_raw', self.fit_raw), ('fit_normalized', self.fit_normalized)):
            meta[key] = None if fit is None else {'slope': fit.slope, 'r_squared': fit.r_squared}
        meta['failed'] = self.failures
        return meta


def run_metadata(cfg: ExperimentConfig) -> dict:
    """What the CSV rows were measured under; written as the CSV's sidecar."""
    return {'metric': cfg.metric, 'growth_law': NORMALIZERS[cfg.metric][0], 'n_list': list(cfg.n_list),
            'trials': cfg.trials, 'base_seed': cfg.base_seed, 'epsilon': cfg.epsilon, 'c_grid': cfg.c_grid,
            'xi_mode': cfg.xi_mode, 'eps_ang': cfg.eps_ang, 'capacity': cfg.capacity,
            'radius_mode': cfg.radius_mode, 'left_to_right': cfg.left_to_right, 'max_phases': cfg.max_phases}


def working_radius(inst: NetworkInstance, cfg: ExperimentConfig) -> float:
    """Radius of the graph the flow quantities share: max(d, d_grid) in grid mode."""
    if cfg.radius_mode == RADIUS_GRID:
        return max(inst.d, grid_radius(inst.n, cfg.c_grid))
    return inst.d


def connected_instance(n: int, seed: int, cfg: ExperimentConfig):
    """First connected instance among seed, seed + 2^32, ..., seed + 10 * 2^32."""
    for k in range(MAX_RETRIES + 1):
        candidate = seed + k * RETRY_STRIDE
        inst = generate_instance(n, candidate, cfg.xi_mode)
        g = build_graph(inst, cfg.capacity, working_radius(inst, cfg))
        if g.is_connected():
            if k:
                logger.warning(f"[Harness] n={n} seed={seed} disconnected; using retry seed {candidate}")
            return inst, g
    raise DisconnectedInstance(f"n={n} seed={seed}: no connected instance after {MAX_RETRIES} retries")


def left_right_flow(inst: NetworkInstance, g: UnitDiskGraph) -> float:
    left = inst.xs < 0.5
    return max_flow(FlowNetwork.from_graph(g), np.flatnonzero(left).tolist(),
                    np.flatnonzero(~left).tolist()).value


def measure(metric: str, n: int, seed: int, cfg: ExperimentConfig):
    """Raw value of one metric on one instance; returns ``(raw, seed actually used)``."""
    if metric == 'beta':
        return beam_count(n, connectivity_radius(n, cfg.xi_mode)), seed
    if metric == 'concurrent-lambda':
        inst, g = connected_instance(n, seed, cfg)
        comm = CommoditySet.from_instance(inst, cfg.left_to_right)
        result = concurrent_flow_approx(FlowNetwork.from_graph(g), comm, cfg.epsilon, cfg.max_phases)
        return result.value, inst.seed

    inst = generate_instance(n, seed, cfg.xi_mode)
    if metric == 'cut-edges':
        return float(count_cut_edges(build_graph(inst, cfg.capacity), inst).straddling_edges), seed
    if metric == 'maxflow-nu':
        g = build_graph(inst, cfg.capacity, working_radius(inst, cfg))
        return left_right_flow(inst, g), seed
    if metric == 'routing-gamma':
        grid = build_grid(inst, cfg.c_grid)
        loads = compute_loads(grid, CommoditySet.from_instance(inst, cfg.left_to_right))
        return achievable_throughput(loads, cfg.capacity), seed
    if metric == 'omni-schedule':
        return float(len(omni_schedule(inst))), seed
    if metric in ('single-beam', 'multi-beam'):
        model = AntennaModel(Variant(metric), cfg.eps_ang)
        return float(len(beam_cut_edges(inst, model))), seed
    raise CapacityLabError(f"unknown metric {metric!r}; choose one of {', '.join(METRICS)}")


def run_trial(cfg: ExperimentConfig, n: int, seed: int) -> ScalingRow:
    start = time.perf_counter()
    try:
        raw, used = measure(cfg.metric, n, seed, cfg)
        failed = False
    except CapacityLabError as e:
        logger.warning(f"[Harness] {cfg.metric} n={n} seed={seed} flagged: {e}")
        raw, used, failed = math.nan, seed, True
    wall_ms = (time.perf_counter() - start) * 1000.0
    if failed:
        normalized = math.nan
    else:
        normalized = raw / cfg.normalizer(n, connectivity_radius(n, cfg.xi_mode))
    return ScalingRow(n=n, seed=used, metric=cfg.metric, raw=raw, normalized=normalized,
                      failed=failed, wall_ms=wall_ms)


def sweep_means(rows, attr: str):
    """Per-n mean of ``attr`` over successful rows with a positive value."""
    by_n = {}
    for row in rows:
        value = getattr(row, attr)
        if not row.failed and value > 0:
            by_n.setdefault(row.n, []).append(value)
    ns = sorted(by_n)
    return ns, [float(np.mean(by_n[n])) for n in ns]


def _fit(rows, attr):
    ns, means = sweep_means(rows, attr)
    if len(ns) < MIN_SWEEP_SIZES:
        return None
    return loglog_fit(ns, means, min_points=MIN_SWEEP_SIZES)


def run_trials(cfg: ExperimentConfig, trial) -> list:
    """Fan ``trial(cfg, n, seed)`` out over the pool; results come back in (n, seed) order."""
    jobs = [(n, seed) for n in cfg.n_list for seed in cfg.seeds()]
    if cfg.workers == 1:
        results = [trial(cfg, n, seed) for n, seed in jobs]
    else:
        with ThreadPool(cfg.workers) as pool:
            handles = [pool.submit(trial, cfg, n, seed) for n, seed in jobs]
            logger.debug(f"[Harness] {pool.get_queue_size()} of {len(jobs)} trials queued")
            pool.wait()
            results = [h.result() for h in handles]
    return sorted(results, key=lambda r: (r.n, r.seed))


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    logger.info(f"[Harness] {cfg.metric} sweep over n={list(cfg.n_list)} x {cfg.trials} trials, "
                f"normalized by {NORMALIZERS[cfg.metric][0]}")
    rows = tuple(run_trials(cfg, run_trial))
    fit_raw = _fit(rows, 'raw')
    fit_norm = _fit(rows, 'normalized')
    if fit_raw is None:
        logger.warning(f"[Harness] fewer than {MIN_SWEEP_SIZES} sizes with data; no scaling fit")
    else:
        logger.info(f"[Harness] {cfg.metric}: raw slope {fit_raw.slope:.4f}, "
                    f"normalized slope {fit_norm.slope:.4f}")
    result = ExperimentResult(cfg, rows, fit_raw, fit_norm)
    if result.failures:
        logger.warning(f"[Harness] {result.failures} of {len(rows)} trials flagged")
    if cfg.output:
        write_text(cfg.output, result.to_csv())
        write_sidecar(cfg.output, result.metadata())
    return result


__all__ = ['ExperimentResult', 'ROW_HEADER', 'ScalingRow', 'connected_instance', 'measure',
           'run_experiment', 'run_metadata', 'run_trials', 'working_radius']
