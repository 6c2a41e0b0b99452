"""Radius and density sweeps of the detectability and t_D analyses."""

from .engine import SweepSpec, SweepRow, build_radii, make_sweep_spec, sweep_ratios, sweep_decoherence_time

__all__ = [
    'SweepSpec',
    'SweepRow',
    'build_radii',
    'make_sweep_spec',
    'sweep_ratios',
    'sweep_decoherence_time',
]
