"""Fixed-step classic Runge-Kutta integration for scalar ODEs."""

from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np


def rk4_step(rhs: Callable[[float, float], float], t: float, y: float, dt: float) -> float:
    k1 = rhs(t, y)
    k2 = rhs(t + 0.5 * dt, y + 0.5 * dt * k1)
    k3 = rhs(t + 0.5 * dt, y + 0.5 * dt * k2)
    k4 = rhs(t + dt, y + dt * k3)
    return y + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


def integrate(
    rhs: Callable[[float, float], float],
    y0: float,
    horizon: float,
    dt: float,
    stop: Optional[Callable[[float], bool]] = None,
) -> tuple[np.ndarray, np.ndarray, bool]:
    """Integrate ``dy/dt = rhs(t, y)`` from ``t=0`` to ``horizon``.

    The number of steps is ``ceil(horizon / dt)`` (rounded to absorb float
    noise), so the final sample can be slightly past ``horizon``. When ``stop``
    returns True for a new state the integration halts after recording it.

    Returns ``(times, values, stopped)``.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    ratio = horizon / dt
    nsteps = int(round(ratio)) if abs(ratio - round(ratio)) < 1e-9 else int(math.ceil(ratio))

    times = np.empty(nsteps + 1)
    values = np.empty(nsteps + 1)
    times[0] = 0.0
    values[0] = y = float(y0)
    for k in range(nsteps):
        t = k * dt
        y = rk4_step(rhs, t, y, dt)
        times[k + 1] = (k + 1) * dt
        values[k + 1] = y
        if stop is not None and stop(y):
            return times[: k + 2].copy(), values[: k + 2].copy(), True
    return times, values, False
