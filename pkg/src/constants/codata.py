"""
CODATA 2018 constants used by every formula in the toolkit.

All computation is in SI units. Conversions (amu, days, Hz) happen only in
the config loader.
"""

import math
from dataclasses import dataclass


SECONDS_PER_DAY = 86400.0
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PhysicalConstants:
    """Fixed constant set (SI)."""

    hbar: float = 1.054571817e-34      # J·s (exact)
    G: float = 6.67430e-11             # m³·kg⁻¹·s⁻²
    k_B: float = 1.380649e-23          # J/K (exact)
    amu: float = 1.66053906660e-27     # kg


_CONSTANTS = PhysicalConstants()


def constants() -> PhysicalConstants:
    """Return the shared, immutable constant set."""
    return _CONSTANTS
