"""Physical constants in SI units."""

from .codata import PhysicalConstants, constants, SECONDS_PER_DAY, TWO_PI

__all__ = ['PhysicalConstants', 'constants', 'SECONDS_PER_DAY', 'TWO_PI']
