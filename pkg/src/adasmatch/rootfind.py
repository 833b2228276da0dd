"""Bracketed bisection for monotone scalar problems."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import NumericalError


@dataclass(frozen=True)
class BisectResult:
    root: float
    lo: float
    hi: float
    iterations: int
    converged: bool


def bisect(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    rtol: float = 1e-12,
    atol: float = 0.0,
    maxiter: int = 200,
) -> BisectResult:
    """Find a sign change of ``fn`` inside ``[lo, hi]``.

    Stops when the bracket half-width is at most ``rtol * |mid| + atol`` or
    when the midpoint can no longer be separated from an endpoint in floating
    point. Returns the bracket midpoint.

    Raises:
        NumericalError: if ``fn(lo)`` and ``fn(hi)`` share a strict sign, or
            either endpoint evaluates to a non-finite value.
    """
    if lo > hi:
        lo, hi = hi, lo
    flo = fn(lo)
    fhi = fn(hi)
    if not (math.isfinite(flo) and math.isfinite(fhi)):
        raise NumericalError(f"non-finite value at bracket edge: f({lo})={flo}, f({hi})={fhi}")
    if flo == 0.0:
        return BisectResult(lo, lo, lo, 0, True)
    if fhi == 0.0:
        return BisectResult(hi, hi, hi, 0, True)
    if (flo > 0) == (fhi > 0):
        raise NumericalError(f"no sign change on [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}")

    for it in range(1, maxiter + 1):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return BisectResult(mid, lo, hi, it, True)
        fmid = fn(mid)
        if fmid == 0.0:
            return BisectResult(mid, mid, mid, it, True)
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
        mid = 0.5 * (lo + hi)
        if 0.5 * (hi - lo) <= rtol * abs(mid) + atol:
            return BisectResult(mid, lo, hi, it, True)
    return BisectResult(0.5 * (lo + hi), lo, hi, maxiter, False)
