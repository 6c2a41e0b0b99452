"""
Monte Carlo version of the four-step protocol: cool, release, expand for t,
measure the position; repeat 𝒩 = floor(T/t) times.

Positions are Gaussian with variance <x²(t)> + σ². The mean is known to be
zero, but the sample variance still uses 𝒩−1 to match the uncertainty law.
Negative Λ estimates are reported as they are.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List

import numpy as np

from src.collapse_models import nongaussian_time
from src.constants import constants
from src.dynamics import NO_DECOHERENCE, DecoherenceSource, DecoherenceSpec, variance_at
from src.errors import DomainError, SolverError, require_finite_non_negative, require_finite_positive
from src.feasibility import MissionProfile
from src.particle import InitialState, TestParticle

from .streams import substream, validate_seed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeriesResult:
    """Outcome of one simulated measurement series."""

    var_hat: float
    lambda_hat: float
    z_score: float
    n_runs: int
    seed: int


@dataclass(frozen=True)
class PowerResult:
    """Aggregate over replicated series."""

    mean_lambda_hat: float
    sd_lambda_hat: float
    mean_z_score: float
    sd_z_score: float
    detection_fraction: float
    replications: int


def _warn_if_beyond_t_d(particle: TestParticle, state: InitialState, mission: MissionProfile,
                        source: DecoherenceSource) -> None:
    if source is not DecoherenceSource.DP:
        return
    try:
        t_d = nongaussian_time(particle, state)
    except SolverError:
        return
    if mission.expansion_time_t > t_d:
        logger.warning(
            "expansion time %.3g s exceeds the DP non-Gaussianity time %.3g s; "
            "Gaussian sampling is no longer self-consistent", mission.expansion_time_t, t_d)


def _run_series(particle: TestParticle, state: InitialState, mission: MissionProfile,
                lambda_true: float, seed: int, index: int) -> SeriesResult:
    n = mission.n_runs
    if n < 2:
        raise DomainError('n_runs', f"need at least 2 runs (got {n})")
    t = mission.expansion_time_t
    noise_var = mission.sigma_meas ** 2
    ballistic = variance_at(state, particle, NO_DECOHERENCE, t)
    true_var = variance_at(state, particle, DecoherenceSpec(lambda_true), t) + noise_var

    rng = substream(seed, index)
    positions = rng.normal(0.0, math.sqrt(true_var), size=n)
    var_hat = float(np.var(positions, ddof=1))

    hbar = constants().hbar
    m = particle.mass_m
    lambda_hat = (var_hat - noise_var - ballistic) * 3.0 * m * m / (2.0 * hbar * hbar * t ** 3)
    expected_null = ballistic + noise_var
    z_score = (var_hat - expected_null) / (math.sqrt(2.0 / (n - 1)) * expected_null)
    return SeriesResult(var_hat=var_hat, lambda_hat=lambda_hat, z_score=z_score,
                        n_runs=n, seed=seed)


def simulate_series(particle: TestParticle, state: InitialState, mission: MissionProfile,
                    lambda_true: float, seed: int,
                    source: DecoherenceSource = DecoherenceSource.CUSTOM,
                    replication: int = 0) -> SeriesResult:
    """
    Simulate one series and estimate the variance, Λ and the null z-score.

    Args:
        particle: Test particle
        state: Initial state at release
        mission: Series budget, expansion time and readout noise
        lambda_true: Λ acting during expansion (m⁻²s⁻¹)
        seed: Unsigned 64-bit seed; fully determines the result
        source: Model the Λ value comes from (DP triggers a t_D check)
        replication: Stream index within the seed

    Returns:
        SeriesResult
    """
    lambda_true = require_finite_non_negative('lambda_true', lambda_true)
    seed = validate_seed(seed)
    _warn_if_beyond_t_d(particle, state, mission, source)
    return _run_series(particle, state, mission, lambda_true, seed, replication)


def replicate_series(particle: TestParticle, state: InitialState, mission: MissionProfile,
                     lambda_true: float, replications: int, seed: int,
                     workers: int = 1) -> List[SeriesResult]:
    """
    Run `replications` independent series on substreams 0..replications-1.

    Results come back in index order whatever the number of workers.
    """
    lambda_true = require_finite_non_negative('lambda_true', lambda_true)
    seed = validate_seed(seed)
    if replications < 1:
        raise DomainError('replications', f"must be >= 1 (got {replications})")
    if workers < 1:
        raise DomainError('workers', f"must be >= 1 (got {workers})")

    def run(index: int) -> SeriesResult:
        return _run_series(particle, state, mission, lambda_true, seed, index)

    if workers == 1:
        return [run(i) for i in range(replications)]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(run, range(replications)))


def detection_power(particle: TestParticle, state: InitialState, mission: MissionProfile,
                    lambda_true: float, z_crit: float = 1.0, replications: int = 200,
                    seed: int = 0, source: DecoherenceSource = DecoherenceSource.CUSTOM,
                    workers: int = 1) -> PowerResult:
    """
    Fraction of replicated series whose z-score reaches z_crit.

    Args:
        particle: Test particle
        state: Initial state
        mission: Measurement series
        lambda_true: Λ acting during expansion
        z_crit: Detection threshold on the z-score (> 0)
        replications: Number of series (>= 2)
        seed: Experiment seed; replication i uses substream (seed, i)
        source: Model tag for lambda_true
        workers: Threads used to run replications

    Returns:
        PowerResult, identical for any number of workers
    """
    z_crit = require_finite_positive('z_crit', z_crit)
    if replications < 2:
        raise DomainError('replications', f"must be >= 2 (got {replications})")
    _warn_if_beyond_t_d(particle, state, mission, source)

    results = replicate_series(particle, state, mission, lambda_true, replications, seed, workers)
    lambda_hats = np.array([r.lambda_hat for r in results])
    z_scores = np.array([r.z_score for r in results])
    detected = int(np.count_nonzero(z_scores >= z_crit))
    logger.info("%d/%d series reached z >= %g", detected, replications, z_crit)
    return PowerResult(
        mean_lambda_hat=float(np.mean(lambda_hats)),
        sd_lambda_hat=float(np.std(lambda_hats, ddof=1)),
        mean_z_score=float(np.mean(z_scores)),
        sd_z_score=float(np.std(z_scores, ddof=1)),
        detection_fraction=detected / replications,
        replications=replications,
    )
