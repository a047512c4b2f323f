from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateInput


@dataclass(frozen=True)
class ScalingFit:
    exponent: float
    prefactor: float
    r_squared: float

    def predict(self, size):
        return self.prefactor * np.asarray(size, dtype=float) ** self.exponent


def scaling_fit(points):
    """Least-squares power law ``time = prefactor * size**exponent`` in log-log space.

    `points` is a sequence of ``(size, time)`` pairs with at least three
    entries, strictly increasing sizes and positive times.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
        raise DegenerateInput("need at least three (size, time) pairs")
    size, time = pts[:, 0], pts[:, 1]
    if np.any(np.diff(size) <= 0) or np.any(size <= 0):
        raise DegenerateInput("sizes must be positive and strictly increasing")
    if np.any(time <= 0):
        raise DegenerateInput("times must be positive")
    x, y = np.log(size), np.log(time)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    ss_res = float(np.sum(resid**2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return ScalingFit(float(slope), float(np.exp(intercept)), float(min(max(r2, 0.0), 1.0)))
