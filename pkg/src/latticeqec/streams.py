"""Counter-based random streams.

Every randomized routine in the package derives its generator from a master
seed plus an index path via the Philox counter, never by drawing from a
shared sequential stream.  Streams for different paths are therefore
independent of scheduling: running trials in any order, or in parallel,
reproduces the same numbers.
"""

from __future__ import annotations

import numpy as np

__all__ = ["substream"]

_MAX_PATH = 3


def substream(master_seed: int, *path: int) -> np.random.Generator:
    """Generator for ``path`` under ``master_seed``.

    The path indices (up to three levels) are placed in the upper words of
    the 256-bit Philox counter, giving every leaf 2**64 draws of headroom.
    """
    if master_seed < 0:
        raise ValueError("seed must be non-negative")
    if len(path) > _MAX_PATH:
        raise ValueError(f"at most {_MAX_PATH} path levels supported")
    counter = 0
    for level, index in enumerate(path):
        if not 0 <= index < 1 << 64:
            raise ValueError("path indices must fit in 64 bits")
        counter |= index << (64 * (level + 1))
    return np.random.Generator(np.random.Philox(key=master_seed, counter=counter))
