"""Smooth cutoff profiles built from exp(-1/t) mollifiers.

All plateaus evaluate to exactly 0.0 or 1.0 in floating point, so
multiplier supports are hard (identically zero outside the stated
radii, not merely small).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _mollifier(t: np.ndarray) -> np.ndarray:
    """exp(-1/t) for t > 0, hard zero for t <= 0."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def smooth_step(t) -> np.ndarray:
    """C-infinity monotone step: 0 for t <= 0, 1 for t >= 1."""
    t = np.asarray(t, dtype=float)
    a = _mollifier(t)
    b = _mollifier(1.0 - t)
    return a / (a + b)


def rising(t, lo: float, hi: float) -> np.ndarray:
    """Smooth 0 -> 1 transition over [lo, hi]."""
    return smooth_step((np.asarray(t, dtype=float) - lo) / (hi - lo))


def falling(t, lo: float, hi: float) -> np.ndarray:
    """Smooth 1 -> 0 transition over [lo, hi]."""
    return 1.0 - rising(t, lo, hi)


@dataclass(frozen=True)
class BumpProfile:
    """Radial profile u: [0, inf) -> [0, 1].

    u(t) = 1 for t <= plateau, u(t) = 0 for t >= support, strictly
    decreasing in between.  Defaults give the standard bump with
    u = 1 on [0, 1/2] and support [0, 1].
    """

    plateau: float = 0.5
    support: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.plateau < self.support):
            raise ValueError("need 0 < plateau < support")

    def __call__(self, t) -> np.ndarray:
        return falling(t, self.plateau, self.support)
