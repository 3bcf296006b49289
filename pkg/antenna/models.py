"""Antenna architectures, cut schedules and their independent certificate check."""
from __future__ import annotations

import csv
import io
import math
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from common.errors import InvalidArgument
from common.logger_config import setup_logger
from geometry.network import NetworkInstance

logger = setup_logger(__name__)

DEFAULT_EPS_ANG = 1e-9


class Variant(str, Enum):
    OMNI = 'omni'
    SINGLE_BEAM = 'single-beam'
    MULTI_BEAM = 'multi-beam'


@dataclass(frozen=True)
class AntennaModel:
    variant: Variant
    eps_ang: float = DEFAULT_EPS_ANG

    def __post_init__(self):
        object.__setattr__(self, 'variant', Variant(self.variant))
        if self.variant != Variant.OMNI and not self.eps_ang > 0:
            raise InvalidArgument(f"beam models need eps_ang > 0, got {self.eps_ang}")

    @classmethod
    def parse(cls, name: str, eps_ang: float = DEFAULT_EPS_ANG) -> 'AntennaModel':
        names = [v.value for v in Variant]
        if name not in names:
            raise InvalidArgument(f"unknown antenna model {name!r}; choose one of {', '.join(names)}")
        return cls(Variant(name), eps_ang)

    @property
    def is_beam(self) -> bool:
        return self.variant != Variant.OMNI


@dataclass(frozen=True)
class CutSchedule:
    """Directed (transmitter, receiver) pairs active at once across x = 1/2."""

    model: AntennaModel
    pairs: tuple[tuple[int, int], ...]
    radius: float
    valid: bool = True

    def __len__(self):
        return len(self.pairs)


def separation_angle(rx, a, b) -> float:
    """Angle at ``rx`` between the rays towards ``a`` and ``b``, in [0, pi]."""
    ax, ay = a[0] - rx[0], a[1] - rx[1]
    bx, by = b[0] - rx[0], b[1] - rx[1]
    return math.atan2(abs(ax * by - ay * bx), ax * bx + ay * by)


def validate_schedule(inst: NetworkInstance, schedule: CutSchedule, radius: Optional[float] = None) -> bool:
    """Re-derive every conflict from raw coordinates; True iff the schedule is legal."""
    r = schedule.radius if radius is None else radius
    pos = inst.positions
    model = schedule.model
    pairs = schedule.pairs
    for tx, rx in pairs:
        if not (0 <= tx < inst.n and 0 <= rx < inst.n):
            return False
        if not (pos[tx, 0] < 0.5 <= pos[rx, 0]):
            return False
        if math.hypot(*(pos[tx] - pos[rx])) > r:
            return False
    if len(set(pairs)) != len(pairs):
        return False

    txs = [tx for tx, _ in pairs]
    if model.variant == Variant.OMNI:
        rxs = [rx for _, rx in pairs]
        if len(set(txs)) != len(txs) or len(set(rxs)) != len(rxs) or set(txs) & set(rxs):
            return False
        for tx, rx in pairs:
            heard = [t for t in txs if math.hypot(*(pos[t] - pos[rx])) <= r]
            if heard != [tx]:
                return False
        return True

    if model.variant == Variant.SINGLE_BEAM and len(set(txs)) != len(txs):
        return False
    heard = defaultdict(list)
    for tx, rx in pairs:
        heard[rx].append(tx)
    for rx, sources in heard.items():
        for i, a in enumerate(sources):
            for b in sources[i + 1:]:
                if separation_angle(pos[rx], pos[a], pos[b]) < model.eps_ang:
                    return False
    return True


def schedule_to_csv(inst: NetworkInstance, schedule: CutSchedule) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(['tx_index', 'rx_index', 'tx_x', 'tx_y', 'rx_x', 'rx_y'])
    pos = inst.positions
    for tx, rx in schedule.pairs:
        writer.writerow([tx, rx, repr(float(pos[tx, 0])), repr(float(pos[tx, 1])),
                         repr(float(pos[rx, 0])), repr(float(pos[rx, 1]))])
    return buf.getvalue()
