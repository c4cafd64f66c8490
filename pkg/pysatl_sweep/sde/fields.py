from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np

from pysatl_sweep.core.errors import ConfigurationError
from pysatl_sweep.core.random import make_generator
from pysatl_sweep.core.types import FloatArray, as_point
from pysatl_sweep.geometry import Window

__all__ = ["FieldCheck", "FieldPair", "VectorField"]

VectorField = Callable[[float, FloatArray], FloatArray]


@dataclass(frozen=True)
class FieldCheck:
    """Empirical bound and Lipschitz ratio of a field pair on sampled points."""

    max_norm: float
    max_lipschitz_ratio: float
    ok: bool


@dataclass(frozen=True)
class FieldPair:
    """Drift f(t, x) and diffusion sigma(t, x) of dX = f dt + sigma dB - dK, B scalar.

    :param drift: Drift f(t, x) in R^d
    :param diffusion: Diffusion sigma(t, x) in R^d, multiplied by the scalar increment dB
    :param dim: Dimension d
    :param bound: Declared bound L on |f| and |sigma|
    :param lipschitz: Declared Lipschitz constant L in x
    """

    drift: VectorField
    diffusion: VectorField
    dim: int
    bound: float = np.inf
    lipschitz: float = np.inf

    @classmethod
    def constant(cls, drift: Any, diffusion: Any) -> FieldPair:
        f, sigma = as_point(drift), as_point(diffusion)
        if f.shape != sigma.shape:
            raise ConfigurationError("Drift and diffusion must have the same dimension")
        bound = max(float(np.linalg.norm(f)), float(np.linalg.norm(sigma)))
        return cls(lambda t, x: f, lambda t, x: sigma, f.size, bound, 0.0)

    @classmethod
    def linear(cls, offset: Any, matrix: Any, diffusion: Any) -> FieldPair:
        """Return f(t, x) = a + B x with a constant diffusion; unbounded unless B = 0."""
        a, sigma = as_point(offset), as_point(diffusion)
        b = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
        if b.shape != (a.size, a.size) or sigma.size != a.size:
            raise ConfigurationError(f"Linear drift needs a {a.size}x{a.size} matrix and matching diffusion")
        lipschitz = float(np.linalg.norm(b, ord=2))
        bound = np.inf if lipschitz > 0.0 else max(float(np.linalg.norm(a)), float(np.linalg.norm(sigma)))
        return cls(lambda t, x: a + b @ x, lambda t, x: sigma, a.size, bound, lipschitz)

    @classmethod
    def zero(cls, dim: int) -> FieldPair:
        return cls.constant(np.zeros(dim), np.zeros(dim))

    def scaled(self, epsilon: float) -> FieldPair:
        """Return the pair (f, epsilon * sigma)."""
        diffusion = self.diffusion
        return FieldPair(
            self.drift,
            lambda t, x: epsilon * diffusion(t, x),
            self.dim,
            self.bound if abs(epsilon) <= 1.0 else self.bound * abs(epsilon),
            self.lipschitz if abs(epsilon) <= 1.0 else self.lipschitz * abs(epsilon),
        )

    def without_noise(self) -> FieldPair:
        return self.scaled(0.0)

    def spot_check(self, window: Window, n: int, seed: int, t: float = 0.0) -> FieldCheck:
        """Sample |f|, |sigma| and difference quotients on n random pairs of the window."""
        if window.dim != self.dim:
            raise ConfigurationError("Window dimension does not match the fields")
        rng = make_generator(seed)
        first, second = window.sample(rng, n), window.sample(rng, n)
        norms = 0.0
        ratio = 0.0
        for x, y in zip(first, second):
            fx, fy = self.drift(t, x), self.drift(t, y)
            sx, sy = self.diffusion(t, x), self.diffusion(t, y)
            norms = max(norms, float(np.linalg.norm(fx)), float(np.linalg.norm(sx)))
            gap = float(np.linalg.norm(x - y))
            if gap > 0.0:
                ratio = max(ratio, float(np.linalg.norm(fx - fy)) / gap, float(np.linalg.norm(sx - sy)) / gap)
        slack = 1e-9
        return FieldCheck(norms, ratio, norms <= self.bound + slack and ratio <= self.lipschitz + slack)
