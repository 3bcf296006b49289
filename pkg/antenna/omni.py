"""Omnidirectional transmission across the center cut.

Reception fails whenever a second transmitter is in range of the receiver,
so simultaneous cut edges need receivers spread at least 2d apart. The
schedule below is the constructive witness: disks of radius d stacked along
x = 1/2, one left-to-right pair per disk.
"""
from __future__ import annotations

import math
from typing import Optional

import numpy as np

from antenna.models import AntennaModel, CutSchedule, Variant
from common.errors import InvalidArgument
from common.logger_config import setup_logger
from geometry.network import NetworkInstance

logger = setup_logger(__name__)


def _radius(inst: NetworkInstance, radius: Optional[float]) -> float:
    r = inst.d if radius is None else float(radius)
    if not 0 < r < 0.5:
        raise InvalidArgument(f"radius must lie in (0, 1/2), got {r}")
    return r


def omni_cut_upper(n: int, d: float) -> float:
    """At most 1/(2d) receivers fit along the cut, each with a partner: 2/(pi d)."""
    if n < 2:
        raise InvalidArgument(f"n must be >= 2, got {n}")
    if not 0 < d < 0.5:
        raise InvalidArgument(f"d must lie in (0, 1/2), got {d}")
    return 2.0 / (math.pi * d)


def disk_centers(r: float) -> np.ndarray:
    k = math.floor(1.0 / (2.0 * r) + 1e-12)
    ys = (2 * np.arange(1, k + 1) - 1) * r
    return np.column_stack([np.full(k, 0.5), ys])


def _disk_members(inst: NetworkInstance, r: float):
    pos = inst.positions
    for center in disk_centers(r):
        dist = np.hypot(pos[:, 0] - center[0], pos[:, 1] - center[1])
        yield np.flatnonzero(dist <= r)


def omni_disk_counts(inst: NetworkInstance, radius: Optional[float] = None) -> np.ndarray:
    """Nodes inside each schedule disk."""
    r = _radius(inst, radius)
    return np.array([members.size for members in _disk_members(inst, r)], dtype=np.int64)


def omni_schedule(inst: NetworkInstance, radius: Optional[float] = None) -> CutSchedule:
    r = _radius(inst, radius)
    pos = inst.positions
    xs = inst.xs

    def close(u, v):
        return math.hypot(*(pos[u] - pos[v])) <= r

    pairs, txs, rxs = [], [], []
    for members in _disk_members(inst, r):
        left = [int(v) for v in members if xs[v] < 0.5]
        right = [int(v) for v in members if xs[v] >= 0.5]
        for tx in left:
            match = next((rx for rx in right
                          if close(tx, rx)
                          and not any(close(t, rx) for t in txs)
                          and not any(close(tx, q) for q in rxs)), None)
            if match is not None:
                pairs.append((tx, match))
                txs.append(tx)
                rxs.append(match)
                break
    logger.debug(f"[Antenna] omni schedule: {len(pairs)} of {len(disk_centers(r))} disks active")
    return CutSchedule(AntennaModel(Variant.OMNI), tuple(pairs), r)
