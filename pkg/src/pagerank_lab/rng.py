"""Deterministic random streams.

All randomness in the package flows through counter-based Philox
generators keyed by an explicit 64-bit seed plus a stream index, so any
run index yields an independent stream that reproduces bit-for-bit on
every platform.
"""

import numpy as np

U64_MAX = 2**64 - 1


def check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)):
        raise ValueError(f"seed must be an integer, got {type(seed).__name__}")
    if not 0 <= seed <= U64_MAX:
        raise ValueError(f"seed must fit in 64 bits, got {seed}")
    return int(seed)


def philox_stream(seed: int, stream: int = 0) -> np.random.Generator:
    """Independent reproducible generator for (seed, stream).

    Distinct stream indices under the same seed give statistically
    independent draws; identical pairs give identical draws.
    """
    seed = check_seed(seed)
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(int(stream),))
    return np.random.Generator(np.random.Philox(ss))
