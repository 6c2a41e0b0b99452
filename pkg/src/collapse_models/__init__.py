"""Decoherence predictions of collapse models for uniform spheres."""

from .diosi_penrose import (
    DpResult,
    OverlapParameter,
    overlap_parameter,
    grav_self_energy,
    decoherence_timescale,
    pairwise_decoherence_rate,
    lambda_dp,
    dp_heating,
    dp_result,
    nongaussian_time,
)
from .csl import CslParams, DEFAULT_CSL, lambda_csl, sphere_form_factor

__all__ = [
    'DpResult',
    'OverlapParameter',
    'overlap_parameter',
    'grav_self_energy',
    'decoherence_timescale',
    'pairwise_decoherence_rate',
    'lambda_dp',
    'dp_heating',
    'dp_result',
    'nongaussian_time',
    'CslParams',
    'DEFAULT_CSL',
    'lambda_csl',
    'sphere_form_factor',
]
