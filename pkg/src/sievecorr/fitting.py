"""Least-squares line fits on log-log data."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import DegenerateFit


def loglog_fit(x: Sequence[float], y: Sequence[float]) -> tuple[float, float, float]:
    """Fit ``log y = slope * log x + intercept``; returns ``(slope, intercept, r2)``."""
    if len(x) != len(y):
        raise ValueError("x and y must have the same length")
    if len(x) < 2:
        raise DegenerateFit("need at least two points")
    lx = np.log(np.asarray(x, dtype=np.float64))
    ly = np.log(np.asarray(y, dtype=np.float64))
    mx, my = lx.mean(), ly.mean()
    sxx = float(np.sum((lx - mx) ** 2))
    if sxx == 0.0:
        raise DegenerateFit("all x values coincide")
    slope = float(np.sum((lx - mx) * (ly - my))) / sxx
    intercept = float(my - slope * mx)
    resid = ly - (slope * lx + intercept)
    syy = float(np.sum((ly - my) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / syy if syy > 0 else 1.0
    return slope, intercept, r2 if math.isfinite(r2) else 1.0
