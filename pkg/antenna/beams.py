"""Directional schedules: single-beam and multi-beam transmitters."""
from __future__ import annotations

import math
from collections import defaultdict
from typing import Optional

import numpy as np

from antenna.models import AntennaModel, CutSchedule, Variant
from common.errors import InvalidArgument
from common.logger_config import setup_logger
from geometry.graph import unit_disk_edges
from geometry.network import NetworkInstance

logger = setup_logger(__name__)


def beam_count(n: int, d: float) -> float:
    """Beams a transmitter needs to resolve every neighbour: n pi d²."""
    if n < 1:
        raise InvalidArgument(f"n must be >= 1, got {n}")
    if not d > 0:
        raise InvalidArgument(f"d must be positive, got {d}")
    return n * math.pi * d * d


def straddling_pairs(inst: NetworkInstance, radius: float) -> np.ndarray:
    """In-range (tx, rx) pairs with tx at x < 1/2 and rx at x >= 1/2, sorted by (tx, rx)."""
    edges = unit_disk_edges(inst.positions, radius)
    if edges.size == 0:
        return np.empty((0, 2), dtype=np.int64)
    left = inst.xs < 0.5
    u, v = edges[:, 0], edges[:, 1]
    keep = left[u] != left[v]
    tx = np.where(left[u], u, v)[keep]
    rx = np.where(left[u], v, u)[keep]
    pairs = np.column_stack([tx, rx])
    return pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]


def _bearing(pos, tx, rx) -> float:
    # tx -> rx always points rightwards, so bearings stay inside (-pi/2, pi/2]
    return math.atan2(pos[rx, 1] - pos[tx, 1], pos[rx, 0] - pos[tx, 0])


def _single_beam(inst: NetworkInstance, pairs: np.ndarray, eps: float):
    pos = inst.positions
    candidates = defaultdict(list)
    for tx, rx in pairs.tolist():
        candidates[tx].append(rx)
    taken = set()
    paired = []
    for tx in sorted(candidates):
        # spread beams over distinct receivers first
        rx = min(candidates[tx], key=lambda r: (r in taken, r))
        taken.add(rx)
        paired.append((tx, rx))

    # a receiver keeps its pairs in insertion order and drops any that are
    # near-collinear with one it already kept
    bearings = defaultdict(list)
    chosen = []
    for tx, rx in paired:
        angle = _bearing(pos, tx, rx)
        if all(abs(angle - other) >= eps for other in bearings[rx]):
            bearings[rx].append(angle)
            chosen.append((tx, rx))
        else:
            logger.debug(f"[Antenna] dropped ({tx}, {rx}): collinear with an earlier beam")
    return chosen


def _multi_beam(inst: NetworkInstance, pairs: np.ndarray, eps: float):
    pos = inst.positions
    heard = defaultdict(list)
    for tx, rx in pairs.tolist():
        heard[rx].append((_bearing(pos, tx, rx), tx))
    dropped = set()
    for rx, arrivals in heard.items():
        arrivals.sort()
        for (a, ta), (b, tb) in zip(arrivals, arrivals[1:]):
            if b - a < eps:
                dropped.add((ta, rx))
                dropped.add((tb, rx))
    return [(tx, rx) for tx, rx in pairs.tolist() if (tx, rx) not in dropped]


def beam_cut_edges(inst: NetworkInstance, model: AntennaModel, radius: Optional[float] = None) -> CutSchedule:
    if not model.is_beam:
        raise InvalidArgument("beam_cut_edges needs a single-beam or multi-beam model")
    r = inst.d if radius is None else float(radius)
    if not r > 0:
        raise InvalidArgument(f"radius must be positive, got {r}")
    pairs = straddling_pairs(inst, r)
    if model.variant == Variant.SINGLE_BEAM:
        chosen = _single_beam(inst, pairs, model.eps_ang)
    else:
        chosen = _multi_beam(inst, pairs, model.eps_ang)
    logger.debug(f"[Antenna] {model.variant.value}: {len(chosen)} of {len(pairs)} straddling pairs kept")
    return CutSchedule(model, tuple((int(tx), int(rx)) for tx, rx in chosen), r)
