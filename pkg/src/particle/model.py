"""Spherical dielectric test particle and its state after trapping and cooling."""

import math
from dataclasses import dataclass

from src.constants import constants
from src.errors import DomainError, require_finite_positive, require_finite_non_negative


@dataclass(frozen=True)
class TestParticle:
    """Uniform sphere. Mass is derived from radius and density."""

    __test__ = False  # not a pytest class

    radius_a: float
    density_rho: float
    mass_m: float


@dataclass(frozen=True)
class InitialState:
    """
    1D centre-of-mass state at release.

    Squeezing acts on momentum: p_var0 is divided by s², x_var0 multiplied
    by s², so the uncertainty product is unchanged.
    """

    omega: float
    occupancy_nbar: float
    squeeze_s: float
    x_var0: float
    p_var0: float


def make_particle(radius: float, density: float) -> TestParticle:
    """
    Build a uniform sphere.

    Args:
        radius: Sphere radius a in m
        density: Mass density ρ in kg/m³

    Returns:
        TestParticle with mass (4/3)πa³ρ

    Raises:
        DomainError: If radius or density is not finite and positive
    """
    radius = require_finite_positive('radius', radius)
    density = require_finite_positive('density', density)
    mass = (4.0 / 3.0) * math.pi * radius ** 3 * density
    return TestParticle(radius_a=radius, density_rho=density, mass_m=mass)


def make_initial_state(particle: TestParticle, omega: float, nbar: float = 0.0,
                       squeeze: float = 1.0) -> InitialState:
    """
    Thermal (optionally momentum-squeezed) state of a harmonic trap.

    Args:
        particle: Trapped particle
        omega: Angular trap frequency in rad/s
        nbar: Mean phonon occupancy after cooling (0 = ground state)
        squeeze: Momentum squeezing factor s >= 1

    Returns:
        InitialState with derived position and momentum variances
    """
    omega = require_finite_positive('omega', omega)
    nbar = require_finite_non_negative('nbar', nbar)
    squeeze = float(squeeze)
    if not (squeeze >= 1.0 and math.isfinite(squeeze)):
        raise DomainError('squeeze', f"must be finite and >= 1 (got {squeeze!r})")

    hbar = constants().hbar
    m = particle.mass_m
    thermal = 2.0 * nbar + 1.0
    s2 = squeeze * squeeze
    x_var0 = (hbar / (2.0 * m * omega)) * thermal * s2
    p_var0 = (hbar * m * omega / 2.0) * thermal / s2
    return InitialState(
        omega=omega,
        occupancy_nbar=nbar,
        squeeze_s=squeeze,
        x_var0=x_var0,
        p_var0=p_var0,
    )
