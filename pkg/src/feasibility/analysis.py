"""
Detectability analysis for the release-and-measure protocol.

A series of duration T gives 𝒩 = floor(T/t) runs of expansion time t. The
variance is then known to a fraction sqrt(2/(𝒩−1)) ≈ sqrt(2t/T), and the
smallest Λ that shifts the variance by one standard error is

    Λ_min = sqrt(1/(2Tt)) · 3<p²(0)>/ħ²

Measurement noise only enters the crossover comparison here; the simulator
adds it to the sampled positions.
"""

import logging
import math
from dataclasses import dataclass, fields
from typing import List, Optional, Tuple

from src.collapse_models import CslParams, lambda_csl, lambda_dp
from src.constants import SECONDS_PER_DAY, constants
from src.dynamics import NO_DECOHERENCE, variance_at
from src.errors import DomainError, SolverError, require_finite_non_negative, require_finite_positive
from src.particle import InitialState, TestParticle
from src.solvers import solve_monotone

logger = logging.getLogger(__name__)

CROSSOVER_T_LOWER = 1e-6
# Measurement series a mission lifetime is shared between.
SERIES_PER_LIFETIME = 10


@dataclass(frozen=True)
class MissionProfile:
    """One measurement series: budget T, per-run time t, readout noise σ."""

    series_time_T: float
    expansion_time_t: float
    n_runs: int
    sigma_meas: float


def make_mission(series_time: float, expansion_time: float, sigma_meas: float = 0.0) -> MissionProfile:
    """
    Build a mission profile with 𝒩 = floor(T/t).

    Raises:
        DomainError: If t >= T, 𝒩 < 2 or σ is negative
    """
    T = require_finite_positive('series_time_T', series_time)
    t = require_finite_positive('expansion_time_t', expansion_time)
    sigma = require_finite_non_negative('sigma_meas', sigma_meas)
    if not t < T:
        raise DomainError('expansion_time_t', f"must be shorter than the series time ({t:g} >= {T:g})")
    n_runs = math.floor(T / t)
    if n_runs < 2:
        raise DomainError('n_runs', f"series allows only {n_runs} run(s); need at least 2")
    return MissionProfile(series_time_T=T, expansion_time_t=t, n_runs=n_runs, sigma_meas=sigma)


def max_series_time(lifetime_days: float) -> float:
    """Longest series, in seconds, a mission of the given lifetime can spend on one (radius, density) point."""
    lifetime = require_finite_positive('lifetime_days', lifetime_days)
    return lifetime * SECONDS_PER_DAY / SERIES_PER_LIFETIME


def fractional_variance_uncertainty(mission: MissionProfile, approximate: bool = False,
                                    finite_series: bool = False) -> float:
    """
    Fractional standard error of the sample variance.

    Args:
        mission: Measurement series
        approximate: Use sqrt(2t/T) (T >> t)
        finite_series: Use sqrt(2t/(T − t)), the continuum form of 𝒩 − 1

    Returns:
        δ(Δx²)/<Δx²>; sqrt(2/(𝒩−1)) when neither flag is set
    """
    if approximate and finite_series:
        raise DomainError('approximate', "cannot combine with finite_series")
    if mission.n_runs < 2:
        raise DomainError('n_runs', f"need at least 2 runs (got {mission.n_runs})")
    T, t = mission.series_time_T, mission.expansion_time_t
    if approximate:
        return math.sqrt(2.0 * t / T)
    if finite_series:
        return math.sqrt(2.0 * t / (T - t))
    return math.sqrt(2.0 / (mission.n_runs - 1))


def lambda_min(state: InitialState, mission: MissionProfile, z_multiplier: float = 1.0) -> float:
    """
    Smallest Λ distinguishable from unitary expansion at z_multiplier·σ.

    Returns:
        Λ_min in m⁻²s⁻¹
    """
    z = require_finite_positive('z_multiplier', z_multiplier)
    hbar = constants().hbar
    T, t = mission.series_time_T, mission.expansion_time_t
    return z * math.sqrt(1.0 / (2.0 * T * t)) * 3.0 * state.p_var0 / (hbar * hbar)


def lambda_min_full(state: InitialState, particle: TestParticle, mission: MissionProfile,
                    z_multiplier: float = 1.0) -> float:
    """
    Threshold without the large-𝒩 and ballistic-dominance approximations.

    Uses the exact run count and the full reference variance, readout noise
    included.
    """
    z = require_finite_positive('z_multiplier', z_multiplier)
    hbar = constants().hbar
    t = mission.expansion_time_t
    m = particle.mass_m
    reference = variance_at(state, particle, NO_DECOHERENCE, t) + mission.sigma_meas ** 2
    delta = z * fractional_variance_uncertainty(mission) * reference
    return delta * 3.0 * m * m / (2.0 * hbar * hbar * t ** 3)


def measurement_crossover_time(state: InitialState, particle: TestParticle,
                               mission: MissionProfile) -> float:
    """
    Expansion time beyond which the statistical uncertainty of the variance
    exceeds the readout variance σ².

    Solves sqrt(2t/T)·<x²(t)>|Λ=0 = σ² on [1e-6 s, T/2].

    Raises:
        DomainError: If σ is zero
        SolverError: If the two sides never cross in the window
    """
    sigma = mission.sigma_meas
    if not sigma > 0:
        raise DomainError('sigma_meas', "crossover needs a positive readout noise")
    T = mission.series_time_T
    noise_var = sigma * sigma

    def excess(t: float) -> float:
        statistical = math.sqrt(2.0 * t / T) * variance_at(state, particle, NO_DECOHERENCE, t)
        return statistical - noise_var

    lo, hi = CROSSOVER_T_LOWER, T / 2.0
    try:
        return solve_monotone(excess, lo, hi)
    except SolverError:
        if excess(lo) > 0:
            side = "statistical uncertainty dominates"
        else:
            side = "measurement noise dominates"
        raise SolverError(f"never crosses in [{lo:g}, {hi:g}] s: {side} throughout") from None


def required_squeezing(state: InitialState, mission: MissionProfile, target_lambda: float,
                       z_multiplier: float = 1.0) -> float:
    """
    Total momentum squeezing factor that brings Λ_min down to target_lambda.

    Λ_min scales as 1/s², so s_req = s·sqrt(Λ_min/target). Returns 1 when no
    squeezing is needed.
    """
    target = require_finite_positive('target_lambda', target_lambda)
    threshold = lambda_min(state, mission, z_multiplier)
    return max(1.0, state.squeeze_s * math.sqrt(threshold / target))


def required_expansion_time(state: InitialState, mission: MissionProfile, target_lambda: float,
                            z_multiplier: float = 1.0) -> float:
    """
    Expansion time at fixed T for which Λ_min equals target_lambda.

    Λ_min scales as t^(-1/2), so t_req = t·(Λ_min/target)².

    Raises:
        SolverError: If t_req leaves fewer than two runs in the series
    """
    target = require_finite_positive('target_lambda', target_lambda)
    threshold = lambda_min(state, mission, z_multiplier)
    t_req = mission.expansion_time_t * (threshold / target) ** 2
    if t_req > mission.series_time_T / 2.0:
        raise SolverError(
            f"required expansion time {t_req:.3e} s exceeds half the series time "
            f"({mission.series_time_T / 2.0:.3e} s)"
        )
    return t_req


@dataclass(frozen=True)
class DetectabilityReport:
    """Λ predictions in units of the detection threshold. ratio > 1 is detectable."""

    lambda_min: float
    lambda_min_full: float
    lambda_dp: Optional[float] = None
    ratio_dp: Optional[float] = None
    squeeze_needed_dp: Optional[float] = None
    expansion_needed_dp: Optional[float] = None
    lambda_csl: Optional[float] = None
    ratio_csl: Optional[float] = None
    squeeze_needed_csl: Optional[float] = None
    expansion_needed_csl: Optional[float] = None

    def as_rows(self) -> List[Tuple[str, float]]:
        """(quantity, value) pairs for the populated fields, in declaration order."""
        return [(f.name, getattr(self, f.name)) for f in fields(self)
                if getattr(self, f.name) is not None]


def _needs(state: InitialState, mission: MissionProfile, target: float,
           z_multiplier: float) -> Tuple[float, float]:
    squeeze = required_squeezing(state, mission, target, z_multiplier)
    try:
        expansion = required_expansion_time(state, mission, target, z_multiplier)
    except SolverError as e:
        logger.info("%s", e)
        expansion = math.inf
    return squeeze, expansion


def detectability_report(particle: TestParticle, state: InitialState, mission: MissionProfile,
                         dp: bool = True, csl: Optional[CslParams] = None,
                         z_multiplier: float = 1.0) -> DetectabilityReport:
    """
    Compare model predictions with the detection threshold.

    Args:
        particle: Test particle
        state: Initial state
        mission: Measurement series
        dp: Include the Diósi–Penrose prediction
        csl: CSL parameters, or None to skip CSL
        z_multiplier: k for a k-σ detection criterion

    Returns:
        DetectabilityReport
    """
    threshold = lambda_min(state, mission, z_multiplier)
    values = {
        'lambda_min': threshold,
        'lambda_min_full': lambda_min_full(state, particle, mission, z_multiplier),
    }
    if dp:
        value = lambda_dp(particle)
        squeeze, expansion = _needs(state, mission, value, z_multiplier)
        values.update(lambda_dp=value, ratio_dp=value / threshold,
                      squeeze_needed_dp=squeeze, expansion_needed_dp=expansion)
    if csl is not None:
        value = lambda_csl(particle, csl)
        squeeze, expansion = _needs(state, mission, value, z_multiplier)
        values.update(lambda_csl=value, ratio_csl=value / threshold,
                      squeeze_needed_csl=squeeze, expansion_needed_csl=expansion)
    return DetectabilityReport(**values)
