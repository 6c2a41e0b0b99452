"""Statistical detectability of Λ for a measurement series."""

from .analysis import (
    MissionProfile,
    DetectabilityReport,
    make_mission,
    max_series_time,
    fractional_variance_uncertainty,
    lambda_min,
    lambda_min_full,
    measurement_crossover_time,
    required_squeezing,
    required_expansion_time,
    detectability_report,
)

__all__ = [
    'MissionProfile',
    'DetectabilityReport',
    'make_mission',
    'max_series_time',
    'fractional_variance_uncertainty',
    'lambda_min',
    'lambda_min_full',
    'measurement_crossover_time',
    'required_squeezing',
    'required_expansion_time',
    'detectability_report',
]
