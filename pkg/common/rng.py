"""Seeded random streams.

Every random draw in the project comes from ``stream(seed, name)``: a numpy
``Generator`` over MT19937 (a twisted generalized-feedback shift register)
seeded by ``SeedSequence(seed, spawn_key=(index,))``. Each named stream gets
its own spawn key, so adding draws to one stream never shifts another.
"""
import numpy as np

from common.errors import InvalidArgument

STREAMS = {
    'nodes': 0,
    'permutation': 1,
    'occupancy': 2,
    'tail': 3,
    'graphs': 4,
}

SEED_LIMIT = 2 ** 64


def check_seed(seed):
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
        raise InvalidArgument(f"seed must be an integer, got {seed!r}")
    if not 0 <= int(seed) < SEED_LIMIT:
        raise InvalidArgument(f"seed must fit in 64 unsigned bits, got {seed}")
    return int(seed)


def stream(seed, name):
    seed = check_seed(seed)
    try:
        key = STREAMS[name]
    except KeyError:
        raise InvalidArgument(f"unknown random stream {name!r}") from None
    seq = np.random.SeedSequence(seed, spawn_key=(key,))
    return np.random.Generator(np.random.MT19937(seq))
