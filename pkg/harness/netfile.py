"""Network interchange files.

One JSON object per instance::

    {"n": 4, "d": 0.53, "seed": 7, "xi_mode": "lnln",
     "nodes": [[x, y], ...], "commodities": [[s, t], ...]}

Floats are written with ``repr`` precision so a round trip is exact.
"""
from __future__ import annotations

import json
import math
import os

from common.errors import CapacityLabError, NetworkFileError
from common.logger_config import setup_logger
from geometry.network import LNLN, NetworkInstance, connectivity_radius, parse_xi_mode

logger = setup_logger(__name__)

_FIELDS = ('n', 'd', 'seed', 'xi_mode', 'nodes', 'commodities')
_D_REL_TOL = 1e-12


def network_to_dict(inst: NetworkInstance) -> dict:
    return {
        'n': inst.n,
        'd': inst.d,
        'seed': inst.seed,
        'xi_mode': LNLN if inst.xi_mode == LNLN else float(inst.xi_mode),
        'nodes': inst.positions.tolist(),
        'commodities': inst.commodities.tolist(),
    }


def serialize_network(inst: NetworkInstance) -> str:
    return json.dumps(network_to_dict(inst), separators=(',', ':')) + '\n'


def deserialize_network(data) -> NetworkInstance:
    if isinstance(data, (bytes, bytearray)):
        try:
            text = data.decode('utf-8')
        except UnicodeDecodeError as e:
            raise NetworkFileError(f"network file is not UTF-8: {e.reason}", byte_offset=e.start) from None
    else:
        text = data
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        offset = len(text[:e.pos].encode('utf-8'))
        raise NetworkFileError(f"malformed network file at byte {offset}: {e.msg}", byte_offset=offset) from None

    if not isinstance(obj, dict):
        raise NetworkFileError("network file must hold a JSON object")
    missing = [k for k in _FIELDS if k not in obj]
    if missing:
        raise NetworkFileError(f"network file lacks {', '.join(missing)}")
    try:
        xi_mode = parse_xi_mode(obj['xi_mode'])
        inst = NetworkInstance.create(obj['nodes'], obj['commodities'], seed=obj['seed'], xi_mode=xi_mode)
    except (CapacityLabError, TypeError, ValueError) as e:
        raise NetworkFileError(f"invalid network: {e}") from e

    if obj['n'] != inst.n:
        raise NetworkFileError(f"n={obj['n']} but the file lists {inst.n} nodes")
    d = obj['d']
    expected = connectivity_radius(inst.n, xi_mode)
    if not isinstance(d, (int, float)) or not math.isclose(d, expected, rel_tol=_D_REL_TOL, abs_tol=0.0):
        raise NetworkFileError(f"d={d!r} is inconsistent with n={inst.n}, xi_mode={xi_mode!r}; "
                               f"expected {expected!r}")
    return inst


def save_network(inst: NetworkInstance, path: str):
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(serialize_network(inst))
    logger.info(f"[Harness] network n={inst.n} seed={inst.seed} saved to {path}")


def load_network(path: str) -> NetworkInstance:
    with open(path, 'rb') as f:
        return deserialize_network(f.read())
