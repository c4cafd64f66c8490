from typing import Any

import numpy as np

__all__ = ["FloatArray", "as_point"]

FloatArray = np.ndarray[Any, np.dtype[np.float64]]


def as_point(value: Any) -> FloatArray:
    """Convert a scalar or a sequence into a 1-D float64 array."""
    return np.atleast_1d(np.asarray(value, dtype=np.float64)).reshape(-1)
