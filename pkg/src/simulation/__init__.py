"""Monte Carlo simulation of release-and-measure series."""

from .streams import RNG_ALGORITHM, validate_seed, substream
from .simulator import (
    SeriesResult,
    PowerResult,
    simulate_series,
    replicate_series,
    detection_power,
)

__all__ = [
    'RNG_ALGORITHM',
    'validate_seed',
    'substream',
    'SeriesResult',
    'PowerResult',
    'simulate_series',
    'replicate_series',
    'detection_power',
]
