"""Bracketed bisection for cheap monotone functions."""

import logging
import math
from typing import Callable, Tuple

from scipy.optimize import bisect

from src.errors import SolverError

logger = logging.getLogger(__name__)

# scipy.optimize.bisect needs xtol > 0; the relative tolerance governs.
_TINY_XTOL = 1e-300


def expand_bracket(f: Callable[[float], float], lo: float, hi: float,
                   limit: float) -> Tuple[float, float]:
    """
    Double hi until f changes sign between lo and hi.

    Args:
        f: Function to bracket
        lo: Fixed lower end
        hi: Initial upper end (> lo)
        limit: Give up once hi exceeds this value

    Returns:
        (lo, hi) with f(lo) and f(hi) of opposite sign

    Raises:
        SolverError: If no sign change is found below limit
    """
    f_lo = f(lo)
    if f_lo == 0.0:
        return lo, lo
    while hi <= limit:
        f_hi = f(hi)
        if f_hi == 0.0 or math.copysign(1.0, f_hi) != math.copysign(1.0, f_lo):
            logger.debug("bracket found: [%g, %g]", lo, hi)
            return lo, hi
        hi *= 2.0
    raise SolverError(f"no sign change in [{lo:g}, {limit:g}]")


def solve_monotone(f: Callable[[float], float], lo: float, hi: float,
                   rtol: float = 1e-12, maxiter: int = 200) -> float:
    """
    Bisect f on [lo, hi] after verifying a sign change.

    Stops at relative width rtol or after maxiter halvings, whichever first.

    Raises:
        SolverError: If f(lo) and f(hi) have the same sign
    """
    if lo == hi:
        return lo
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise SolverError(f"f has the same sign at {lo:g} and {hi:g}")
    root, info = bisect(f, lo, hi, xtol=_TINY_XTOL, rtol=rtol, maxiter=maxiter,
                        full_output=True, disp=False)
    if not info.converged:
        logger.warning("bisection stopped after %d iterations at %g", info.iterations, root)
    return root
