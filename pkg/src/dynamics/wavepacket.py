"""
Variance of a freely expanding wave packet under position localisation.

    <x²(t)> = <x²(0)> + (t²/m²)<p²(0)> + (2Λħ²/(3m²)) t³

The last term uses m², not m³. With Λ in m⁻²s⁻¹ only m² gives a length²,
and only m² reproduces the detection threshold Λ_min derived from this law.
Reports carry this convention in their metadata.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from src.constants import constants
from src.errors import DomainError, require_finite_non_negative
from src.particle import InitialState, TestParticle


class DecoherenceSource(str, Enum):
    """Model a Λ value comes from."""

    DP = 'dp'
    CSL = 'csl'
    CUSTOM = 'custom'
    NONE = 'none'


@dataclass(frozen=True)
class DecoherenceSpec:
    """Localisation rate density Λ (m⁻²s⁻¹) tagged with its source."""

    lambda_: float
    source: DecoherenceSource = DecoherenceSource.CUSTOM

    def __post_init__(self):
        require_finite_non_negative('lambda', self.lambda_)
        if self.source is DecoherenceSource.NONE and self.lambda_ != 0.0:
            raise DomainError('lambda', "source NONE requires lambda == 0")


NO_DECOHERENCE = DecoherenceSpec(0.0, DecoherenceSource.NONE)


def _check_time(t: float) -> float:
    t = float(t)
    if not (t >= 0 and math.isfinite(t)):
        raise DomainError('t', f"must be finite and >= 0 (got {t!r})")
    return t


def _ballistic(state: InitialState, particle: TestParticle, t: float) -> float:
    m = particle.mass_m
    return state.x_var0 + (t * t / (m * m)) * state.p_var0


def decoherence_excess(state: InitialState, particle: TestParticle,
                       deco: DecoherenceSpec, t: float) -> float:
    """Return the Λ term of the variance law alone (m²)."""
    t = _check_time(t)
    hbar = constants().hbar
    m = particle.mass_m
    return 2.0 * deco.lambda_ * hbar * hbar * t ** 3 / (3.0 * m * m)


def variance_at(state: InitialState, particle: TestParticle,
                deco: DecoherenceSpec, t: float) -> float:
    """
    Position variance after free expansion for time t.

    Args:
        state: Initial state at release
        particle: Expanding particle
        deco: Decoherence parameter acting during the expansion
        t: Expansion time in s

    Returns:
        <x²(t)> in m²

    Raises:
        DomainError: If t is negative
    """
    t = _check_time(t)
    return _ballistic(state, particle, t) + decoherence_excess(state, particle, deco, t)


def coherent_width(state: InitialState, particle: TestParticle, t: float) -> float:
    """Standard deviation of the Λ=0 wave packet after time t (m)."""
    t = _check_time(t)
    return math.sqrt(_ballistic(state, particle, t))


def combine_decoherence(specs: Iterable[DecoherenceSpec]) -> DecoherenceSpec:
    """
    Sum simultaneous mechanisms. Long-wavelength localisation rates add.

    NONE entries are ignored for tagging; differing tags give CUSTOM.
    """
    specs = list(specs)
    if not specs:
        return NO_DECOHERENCE
    total = math.fsum(s.lambda_ for s in specs)
    sources = {s.source for s in specs} - {DecoherenceSource.NONE}
    if not sources:
        return NO_DECOHERENCE
    source = sources.pop() if len(sources) == 1 else DecoherenceSource.CUSTOM
    return DecoherenceSpec(total, source)
