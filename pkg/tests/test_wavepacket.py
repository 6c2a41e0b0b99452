import pytest
from scipy import integrate

from src.constants import constants
from src.dynamics import (
    NO_DECOHERENCE,
    DecoherenceSource,
    DecoherenceSpec,
    coherent_width,
    combine_decoherence,
    decoherence_excess,
    variance_at,
)
from src.errors import DomainError
from src.particle import TestParticle, make_initial_state, make_particle


@pytest.fixture
def light():
    particle = TestParticle(radius_a=1e-7, density_rho=2200.0, mass_m=1.66e-18)
    return particle, make_initial_state(particle, 1e5)


def test_unitary_expansion_is_ballistic(light):
    particle, state = light
    t = 42.0
    expected = state.x_var0 + t ** 2 * state.p_var0 / particle.mass_m ** 2
    assert variance_at(state, particle, NO_DECOHERENCE, t) == pytest.approx(expected, rel=1e-15)


def test_initial_condition(light):
    particle, state = light
    assert variance_at(state, particle, DecoherenceSpec(1e20), 0.0) == state.x_var0


@pytest.mark.parametrize('t, expected', [
    (10.0, 2.69e-20),
    (100.0, 2.69e-17),
])
def test_lambda_term_by_hand(light, t, expected):
    particle, state = light
    assert decoherence_excess(state, particle, DecoherenceSpec(1e10), t) == pytest.approx(expected, rel=2e-3)


def test_lambda_term_matches_double_integral_of_momentum_diffusion(light):
    particle, state = light
    lam, t = 3e11, 7.5
    hbar, m = constants().hbar, particle.mass_m
    # <p²> grows as 2Λħ²s; integrate 2<p²>/m² twice over time, in units of Λħ²/m²
    value, _ = integrate.dblquad(lambda s, u: 4.0 * s, 0.0, t, 0.0, lambda u: u,
                                 epsabs=0.0, epsrel=1e-13)
    oracle = value * lam * hbar ** 2 / m ** 2
    assert decoherence_excess(state, particle, DecoherenceSpec(lam), t) == pytest.approx(oracle, rel=1e-10)


def test_coherent_width_at_release(light):
    particle, state = light
    assert coherent_width(state, particle, 0.0) == pytest.approx(state.x_var0 ** 0.5, rel=1e-15)


def test_coherent_width_of_dense_micron_sphere():
    particle = make_particle(1e-6, 5000)
    state = make_initial_state(particle, 1e5)
    assert coherent_width(state, particle, 3.06) == pytest.approx(4.9e-8, rel=2e-2)


def test_coherent_width_squared_is_unitary_variance(light):
    particle, state = light
    for t in (0.0, 0.3, 17.0, 250.0):
        width = coherent_width(state, particle, t)
        assert width ** 2 == pytest.approx(variance_at(state, particle, NO_DECOHERENCE, t), rel=1e-15)


def test_monotonic_in_time_lambda_and_momentum(light):
    particle, state = light
    deco = DecoherenceSpec(1e12)
    times = [0.5, 1.0, 5.0, 20.0, 100.0]
    values = [variance_at(state, particle, deco, t) for t in times]
    assert values == sorted(values) and len(set(values)) == len(values)
    assert variance_at(state, particle, DecoherenceSpec(2e12), 10.0) > variance_at(state, particle, deco, 10.0)
    hotter = make_initial_state(particle, 1e5, nbar=1.0)
    assert variance_at(hotter, particle, deco, 10.0) > variance_at(state, particle, deco, 10.0)


def test_lambda_term_is_additive(light):
    particle, state = light
    t = 30.0
    base = variance_at(state, particle, NO_DECOHERENCE, t)
    one = variance_at(state, particle, DecoherenceSpec(4e19), t) - base
    two = variance_at(state, particle, DecoherenceSpec(9e19), t) - base
    both = variance_at(state, particle, DecoherenceSpec(13e19), t) - base
    assert both == pytest.approx(one + two, rel=1e-9)


def test_negative_time_rejected(light):
    particle, state = light
    with pytest.raises(DomainError):
        variance_at(state, particle, NO_DECOHERENCE, -1.0)
    with pytest.raises(DomainError):
        coherent_width(state, particle, -1e-9)


def test_decoherence_spec_invariants():
    with pytest.raises(DomainError):
        DecoherenceSpec(-1.0)
    with pytest.raises(DomainError):
        DecoherenceSpec(1.0, DecoherenceSource.NONE)


def test_combine_decoherence():
    dp = DecoherenceSpec(2.0, DecoherenceSource.DP)
    csl = DecoherenceSpec(3.0, DecoherenceSource.CSL)
    assert combine_decoherence([dp, csl]) == DecoherenceSpec(5.0, DecoherenceSource.CUSTOM)
    assert combine_decoherence([dp, NO_DECOHERENCE]) == dp
    assert combine_decoherence([dp, DecoherenceSpec(1.0, DecoherenceSource.DP)]).source is DecoherenceSource.DP
    assert combine_decoherence([]) == NO_DECOHERENCE
    assert combine_decoherence([NO_DECOHERENCE, NO_DECOHERENCE]) == NO_DECOHERENCE
