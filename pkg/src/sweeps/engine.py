"""
Sweeps over particle radius and density.

Rows are ordered by (density, radius) in the order the SweepSpec lists them,
whatever the number of worker threads. Quantities for a model that was not
requested are NaN; a row whose t_D search runs past the horizon carries inf.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.collapse_models import CslParams, DEFAULT_CSL, lambda_csl, lambda_dp, nongaussian_time
from src.errors import DomainError, SolverError, require_finite_positive
from src.feasibility import MissionProfile, lambda_min
from src.particle import make_initial_state, make_particle

logger = logging.getLogger(__name__)

MODELS = frozenset({'dp', 'csl'})


@dataclass(frozen=True)
class SweepSpec:
    """Grid and fixed parameters of a sweep."""

    radii: Tuple[float, ...]
    densities: Tuple[float, ...]
    omega: float
    mission: MissionProfile
    nbar: float = 0.0
    squeeze: float = 1.0
    models: FrozenSet[str] = field(default_factory=lambda: MODELS)
    csl_params: Optional[CslParams] = DEFAULT_CSL
    z_multiplier: float = 1.0
    workers: int = 1


@dataclass(frozen=True)
class SweepRow:
    """One (radius, density) grid point."""

    radius: float
    density: float
    lambda_dp: float
    lambda_csl: float
    lambda_min: float
    ratio_dp: float
    ratio_csl: float
    t_d: float


def build_radii(radius_min: float, radius_max: float, points: int, spacing: str = 'log') -> Tuple[float, ...]:
    """
    Strictly increasing radii between radius_min and radius_max inclusive.

    Args:
        radius_min: First radius in m
        radius_max: Last radius in m (> radius_min unless points == 1)
        points: Number of radii (>= 1)
        spacing: 'log' or 'linear'
    """
    lo = require_finite_positive('radius_min', radius_min)
    hi = require_finite_positive('radius_max', radius_max)
    if points < 1:
        raise DomainError('radius_points', f"must be >= 1 (got {points})")
    if points == 1:
        return (lo,)
    if not hi > lo:
        raise DomainError('radius_max', f"must exceed radius_min ({hi:g} <= {lo:g})")
    if spacing == 'log':
        grid = np.geomspace(lo, hi, points)
    elif spacing == 'linear':
        grid = np.linspace(lo, hi, points)
    else:
        raise DomainError('spacing', f"must be 'log' or 'linear' (got {spacing!r})")
    return tuple(float(r) for r in grid)


def make_sweep_spec(radii: Sequence[float], densities: Iterable[float], omega: float,
                    mission: MissionProfile, nbar: float = 0.0, squeeze: float = 1.0,
                    models: Iterable[str] = MODELS, csl_params: Optional[CslParams] = DEFAULT_CSL,
                    z_multiplier: float = 1.0, workers: int = 1) -> SweepSpec:
    """Validate and freeze a sweep specification."""
    radii = tuple(require_finite_positive('radii', r) for r in radii)
    if not radii:
        raise DomainError('radii', "need at least one radius")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise DomainError('radii', "must be strictly increasing")
    densities = tuple(require_finite_positive('densities', d) for d in densities)
    if not densities:
        raise DomainError('densities', "need at least one density")
    models = frozenset(models)
    unknown = models - MODELS
    if unknown:
        raise DomainError('models', f"unknown model(s): {', '.join(sorted(unknown))}")
    if 'csl' in models and csl_params is None:
        raise DomainError('csl_params', "required when the CSL model is swept")
    if workers < 1:
        raise DomainError('workers', f"must be >= 1 (got {workers})")
    return SweepSpec(radii=radii, densities=densities, omega=omega, mission=mission, nbar=nbar,
                     squeeze=squeeze, models=models, csl_params=csl_params,
                     z_multiplier=z_multiplier, workers=workers)


def _evaluate(spec: SweepSpec, radius: float, density: float, with_t_d: bool) -> SweepRow:
    try:
        particle = make_particle(radius, density)
        state = make_initial_state(particle, spec.omega, spec.nbar, spec.squeeze)
        threshold = lambda_min(state, spec.mission, spec.z_multiplier)
        dp_value = lambda_dp(particle) if 'dp' in spec.models else math.nan
        csl_value = lambda_csl(particle, spec.csl_params) if 'csl' in spec.models else math.nan
        t_d = math.nan
        if with_t_d:
            try:
                t_d = nongaussian_time(particle, state)
            except SolverError as e:
                logger.warning("radius=%g m, density=%g: %s", radius, density, e)
                t_d = math.inf
    except DomainError as e:
        raise DomainError(e.field, f"{e.reason} (radius={radius:g} m, density={density:g} kg/m^3)") from e
    return SweepRow(
        radius=radius,
        density=density,
        lambda_dp=dp_value,
        lambda_csl=csl_value,
        lambda_min=threshold,
        ratio_dp=dp_value / threshold,
        ratio_csl=csl_value / threshold,
        t_d=t_d,
    )


def _sweep(spec: SweepSpec, with_t_d: bool) -> List[SweepRow]:
    grid = [(rho, a) for rho in spec.densities for a in spec.radii]

    def run(point: Tuple[float, float]) -> SweepRow:
        rho, a = point
        return _evaluate(spec, a, rho, with_t_d)

    logger.info("sweeping %d grid points with %d worker(s)", len(grid), spec.workers)
    if spec.workers == 1:
        return [run(p) for p in grid]
    with ThreadPoolExecutor(max_workers=spec.workers) as executor:
        return list(executor.map(run, grid))


def sweep_ratios(spec: SweepSpec) -> List[SweepRow]:
    """Λ_DP, Λ_CSL and Λ_min with their ratios at every grid point; t_d is NaN."""
    return _sweep(spec, with_t_d=False)


def sweep_decoherence_time(spec: SweepSpec) -> List[SweepRow]:
    """Same rows as sweep_ratios with the DP non-Gaussianity time t_d filled in."""
    return _sweep(spec, with_t_d=True)
