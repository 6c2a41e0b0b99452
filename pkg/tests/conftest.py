"""Shared particles, states and missions for the test suite."""

import pytest

from src.constants import SECONDS_PER_DAY, constants
from src.feasibility import make_mission
from src.particle import TestParticle, make_initial_state, make_particle

SERIES_30_DAYS = 30 * SECONDS_PER_DAY


@pytest.fixture
def silica_200nm():
    """a = 200 nm at the reference-plot density 2000 kg/m³."""
    return make_particle(200e-9, 2000.0)


@pytest.fixture
def ground_state_200nm(silica_200nm):
    return make_initial_state(silica_200nm, 1e5, 0.0, 1.0)


@pytest.fixture
def mission_30d():
    """t = 100 s, T = 30 days, no readout noise."""
    return make_mission(SERIES_30_DAYS, 100.0, 0.0)


@pytest.fixture
def billion_amu():
    """Point-like bookkeeping particle of 10⁹ amu (only the mass matters)."""
    return TestParticle(radius_a=1e-7, density_rho=2200.0, mass_m=1e9 * constants().amu)
