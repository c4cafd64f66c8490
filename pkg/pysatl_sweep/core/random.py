"""Counter-based random streams keyed by integer tuples.

Every random quantity in the package is drawn from a Philox generator whose key is
derived from a tuple such as (seed, level) or (master_seed, path_index). A stream is
therefore fully determined by its key, independent of the order in which streams are
created or consumed.
"""

from __future__ import annotations

import numpy as np

__all__ = ["make_generator"]

_MASK_64 = (1 << 64) - 1


def make_generator(*key: int) -> np.random.Generator:
    """Return a Philox generator keyed by the given integers.

    Negative integers are mapped to their two's complement 64-bit value so any signed
    64-bit seed is accepted.
    """
    entropy = [int(k) & _MASK_64 for k in key]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))
