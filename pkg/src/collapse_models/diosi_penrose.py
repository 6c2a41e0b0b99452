"""
Diósi–Penrose model for a uniform sphere of radius a and mass m.

The overlap parameter is λ = b/(2a) for superposition size b. With this
definition the λ >= 1 branch of the self-energy equals the exact
sphere-sphere result (6/5)Gm²/a − Gm²/b, and the two branches meet with
equal value 0.7·Gm²/a and equal slope 0.5·Gm²/a at λ = 1.

Only the closed form for a continuous uniform mass density is implemented.
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

from src.constants import constants
from src.dynamics import coherent_width
from src.errors import SolverError, require_finite_non_negative
from src.particle import InitialState, TestParticle
from src.solvers import expand_bracket, solve_monotone

logger = logging.getLogger(__name__)

# Root search window for the non-Gaussianity time (s).
T_D_LOWER = 1e-6
T_D_FIRST_UPPER = 1.0
T_D_HORIZON = 1e12


@dataclass(frozen=True)
class OverlapParameter:
    """λ = b/(2a); λ < 1 means the two branches overlap."""

    lambda_overlap: float


@dataclass(frozen=True)
class DpResult:
    """DP predictions for one particle at one superposition size."""

    E_G: float
    tau_G: float
    lambda_dp: float
    heat_W: float
    heat_K_per_s: float


def overlap_parameter(particle: TestParticle, b: float) -> OverlapParameter:
    """Return λ = b/(2a)."""
    b = require_finite_non_negative('b', b)
    return OverlapParameter(b / (2.0 * particle.radius_a))


def _self_energy_scale(particle: TestParticle) -> float:
    return particle.mass_m ** 2 * constants().G / particle.radius_a


def grav_self_energy(particle: TestParticle, b: float) -> float:
    """
    Gravitational self-energy of a superposition of size b.

    Args:
        particle: Uniform sphere
        b: Separation of the two branches in m

    Returns:
        E_G in J

    Raises:
        DomainError: If b is negative
    """
    lam = overlap_parameter(particle, b).lambda_overlap
    scale = _self_energy_scale(particle)
    if lam <= 1.0:
        return scale * (2.0 * lam ** 2 - 1.5 * lam ** 3 + 0.2 * lam ** 5)
    return scale * (1.2 - 1.0 / (2.0 * lam))


def decoherence_timescale(E_G: float) -> float:
    """τ_G = ħ/E_G; infinite when E_G is zero."""
    E_G = require_finite_non_negative('E_G', E_G)
    if E_G == 0.0:
        return math.inf
    return constants().hbar / E_G


def pairwise_decoherence_rate(particle: TestParticle, b: float) -> float:
    """
    Off-diagonal decay rate of ρ(x, y) for |x − y| = b (s⁻¹).

    For a uniform sphere [U(x,x) + U(y,y) − 2U(x,y)]/(2ħ) reduces to E_G(b)/ħ.
    """
    return grav_self_energy(particle, b) / constants().hbar


def lambda_dp(particle: TestParticle) -> float:
    """Momentum-diffusion parameter Λ_DP = Gm²/(2a³ħ) in m⁻²s⁻¹."""
    c = constants()
    return c.G * particle.mass_m ** 2 / (2.0 * particle.radius_a ** 3 * c.hbar)


def dp_heating(particle: TestParticle) -> Tuple[float, float]:
    """
    Heating of the 1D centre-of-mass energy, d<H>/dt = mħG/(2a³).

    Returns:
        (power in W, rate in K/s); the K/s figure is power / k_B
    """
    c = constants()
    power = particle.mass_m * c.hbar * c.G / (2.0 * particle.radius_a ** 3)
    return power, power / c.k_B


def dp_result(particle: TestParticle, b: float) -> DpResult:
    """Collect the DP quantities for superposition size b."""
    e_g = grav_self_energy(particle, b)
    heat_w, heat_k = dp_heating(particle)
    return DpResult(
        E_G=e_g,
        tau_G=decoherence_timescale(e_g),
        lambda_dp=lambda_dp(particle),
        heat_W=heat_w,
        heat_K_per_s=heat_k,
    )


def nongaussian_time(particle: TestParticle, state: InitialState) -> float:
    """
    Time t_D at which the DP decay time of the coherently expanded packet
    equals the elapsed time: ħ/E_G(b(t_D)) = t_D with b(t) the Λ=0 width.

    The left side falls and the right side grows with t, so there is one root.

    Raises:
        SolverError: If no root exists below T_D_HORIZON
    """
    hbar = constants().hbar

    def residual(t: float) -> float:
        e_g = grav_self_energy(particle, coherent_width(state, particle, t))
        if e_g == 0.0:
            return math.inf
        return hbar / e_g - t

    if residual(T_D_LOWER) < 0:
        raise SolverError(f"decay time already shorter than {T_D_LOWER:g} s at release")
    try:
        lo, hi = expand_bracket(residual, T_D_LOWER, T_D_FIRST_UPPER, T_D_HORIZON)
    except SolverError:
        raise SolverError(
            f"no decoherence within horizon of {T_D_HORIZON:g} s "
            f"(a={particle.radius_a:g} m, rho={particle.density_rho:g} kg/m^3)"
        ) from None
    t_d = solve_monotone(residual, lo, hi)
    logger.debug("t_D = %.6g s for a=%g m, rho=%g", t_d, particle.radius_a, particle.density_rho)
    return t_d
