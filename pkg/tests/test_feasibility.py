import math

import pytest

from src.collapse_models import DEFAULT_CSL, lambda_csl, lambda_dp
from src.constants import TWO_PI, constants
from src.dynamics import NO_DECOHERENCE, DecoherenceSpec, decoherence_excess, variance_at
from src.errors import DomainError, SolverError
from src.feasibility import (
    detectability_report,
    fractional_variance_uncertainty,
    lambda_min,
    lambda_min_full,
    make_mission,
    max_series_time,
    measurement_crossover_time,
    required_expansion_time,
    required_squeezing,
)
from src.particle import make_initial_state

from .conftest import SERIES_30_DAYS


def test_mission_run_count():
    mission = make_mission(1000.0, 30.0)
    assert mission.n_runs == 33
    assert mission.sigma_meas == 0.0


@pytest.mark.parametrize('T, t, field', [
    (100.0, 100.0, 'expansion_time_t'),
    (100.0, 150.0, 'expansion_time_t'),
    (100.0, 60.0, 'n_runs'),
    (-1.0, 1.0, 'series_time_T'),
    (100.0, 0.0, 'expansion_time_t'),
])
def test_invalid_mission(T, t, field):
    with pytest.raises(DomainError) as excinfo:
        make_mission(T, t)
    assert excinfo.value.field == field


def test_max_series_time():
    # a 300-day mission affords ten 30-day series
    assert max_series_time(300.0) == SERIES_30_DAYS
    with pytest.raises(DomainError, match="lifetime_days"):
        max_series_time(0.0)


def test_negative_readout_noise_rejected():
    with pytest.raises(DomainError):
        make_mission(100.0, 1.0, -1e-9)


def test_fractional_uncertainty_three_runs():
    assert fractional_variance_uncertainty(make_mission(3.0, 1.0)) == pytest.approx(1.0)


def test_fractional_uncertainty_approximate(mission_30d):
    assert fractional_variance_uncertainty(mission_30d, approximate=True) == pytest.approx(8.784e-3, rel=1e-3)


def test_fractional_uncertainty_forms_agree_for_long_series():
    mission = make_mission(1e6, 100.0)
    exact = fractional_variance_uncertainty(mission)
    assert fractional_variance_uncertainty(mission, approximate=True) == pytest.approx(exact, rel=1e-4)
    assert fractional_variance_uncertainty(mission, finite_series=True) == pytest.approx(exact, rel=1e-4)


def test_fractional_uncertainty_finite_series_form():
    mission = make_mission(10.0, 1.0)
    assert fractional_variance_uncertainty(mission, finite_series=True) == pytest.approx(math.sqrt(2.0 / 9.0))
    with pytest.raises(DomainError):
        fractional_variance_uncertainty(mission, approximate=True, finite_series=True)


def test_lambda_min(ground_state_200nm, mission_30d):
    assert lambda_min(ground_state_200nm, mission_30d) == pytest.approx(4.187e18, rel=1e-3)


def test_lambda_min_scaling(silica_200nm, ground_state_200nm, mission_30d):
    base = lambda_min(ground_state_200nm, mission_30d)
    longer = make_mission(SERIES_30_DAYS, 400.0)
    assert lambda_min(ground_state_200nm, longer) == pytest.approx(base / 2.0, rel=1e-12)
    squeezed = make_initial_state(silica_200nm, 1e5, squeeze=2.0)
    assert lambda_min(squeezed, mission_30d) == pytest.approx(base / 4.0, rel=1e-12)
    assert lambda_min(ground_state_200nm, mission_30d, z_multiplier=3.0) == pytest.approx(3.0 * base, rel=1e-12)


@pytest.mark.parametrize('omega', [2e4, 1e5, 6e5])
def test_dp_ratio_inverse_in_trap_frequency(silica_200nm, mission_30d, omega):
    def ratio(w):
        return lambda_dp(silica_200nm) / lambda_min(make_initial_state(silica_200nm, w), mission_30d)

    assert ratio(omega / 2.0) == pytest.approx(2.0 * ratio(omega), rel=1e-12)


def test_lambda_min_shifts_variance_by_one_standard_error(billion_amu):
    # neglect x_var0: the ballistic term dominates at these times
    state = make_initial_state(billion_amu, 1e5)
    mission = make_mission(SERIES_30_DAYS, 1000.0)
    threshold = lambda_min(state, mission)
    t = mission.expansion_time_t
    ballistic = t ** 2 * state.p_var0 / billion_amu.mass_m ** 2
    shift = fractional_variance_uncertainty(mission, approximate=True) * ballistic
    excess = decoherence_excess(state, billion_amu, DecoherenceSpec(threshold), t)
    assert excess == pytest.approx(shift, rel=1e-12)


def test_lambda_min_full_close_to_approximation(ground_state_200nm, silica_200nm, mission_30d):
    approx = lambda_min(ground_state_200nm, mission_30d)
    full = lambda_min_full(ground_state_200nm, silica_200nm, mission_30d)
    assert full == pytest.approx(approx, rel=1e-3)
    assert full > approx


def test_lambda_min_full_includes_readout_noise(ground_state_200nm, silica_200nm):
    quiet = make_mission(SERIES_30_DAYS, 100.0, 0.0)
    noisy = make_mission(SERIES_30_DAYS, 100.0, 1e-3)
    assert lambda_min_full(ground_state_200nm, silica_200nm, noisy) > \
        lambda_min_full(ground_state_200nm, silica_200nm, quiet)


@pytest.mark.parametrize('omega, expected', [
    (1e5, 1.666),
    (TWO_PI * 1e5, 0.799),
])
def test_crossover_time(billion_amu, omega, expected):
    state = make_initial_state(billion_amu, omega)
    mission = make_mission(SERIES_30_DAYS, 100.0, 100e-9)
    t_star = measurement_crossover_time(state, billion_amu, mission)
    assert t_star == pytest.approx(expected, rel=2e-3)
    assert 0.5 <= t_star <= 5.0


def test_crossover_balances_both_sides(billion_amu):
    state = make_initial_state(billion_amu, 1e5)
    mission = make_mission(SERIES_30_DAYS, 100.0, 100e-9)
    t_star = measurement_crossover_time(state, billion_amu, mission)
    statistical = math.sqrt(2 * t_star / SERIES_30_DAYS) * variance_at(state, billion_amu, NO_DECOHERENCE, t_star)
    assert statistical == pytest.approx(100e-9 ** 2, rel=1e-9)


def test_crossover_monotone(billion_amu):
    state = make_initial_state(billion_amu, 1e5)
    hot = make_initial_state(billion_amu, 1e5, nbar=3.0)
    times = [measurement_crossover_time(state, billion_amu, make_mission(SERIES_30_DAYS, 100.0, sigma))
             for sigma in (10e-9, 100e-9, 1e-6)]
    assert times == sorted(times)
    mission = make_mission(SERIES_30_DAYS, 100.0, 100e-9)
    assert measurement_crossover_time(hot, billion_amu, mission) < measurement_crossover_time(state, billion_amu, mission)


def test_crossover_requires_noise(billion_amu):
    state = make_initial_state(billion_amu, 1e5)
    with pytest.raises(DomainError):
        measurement_crossover_time(state, billion_amu, make_mission(SERIES_30_DAYS, 100.0, 0.0))


@pytest.mark.parametrize('sigma, side', [
    (10.0, 'measurement noise dominates'),
    (1e-20, 'statistical uncertainty dominates'),
])
def test_crossover_never_crosses(billion_amu, sigma, side):
    state = make_initial_state(billion_amu, 1e5)
    with pytest.raises(SolverError, match=side):
        measurement_crossover_time(state, billion_amu, make_mission(SERIES_30_DAYS, 100.0, sigma))


def test_required_squeezing(ground_state_200nm, mission_30d):
    threshold = lambda_min(ground_state_200nm, mission_30d)
    assert required_squeezing(ground_state_200nm, mission_30d, threshold / 16.0) == pytest.approx(4.0)
    assert required_squeezing(ground_state_200nm, mission_30d, threshold * 10.0) == 1.0


def test_required_squeezing_reaches_target(silica_200nm, ground_state_200nm, mission_30d):
    target = lambda_csl(silica_200nm)
    s = required_squeezing(ground_state_200nm, mission_30d, target)
    squeezed = make_initial_state(silica_200nm, 1e5, squeeze=s)
    assert lambda_min(squeezed, mission_30d) == pytest.approx(target, rel=1e-12)


def test_required_expansion_time(ground_state_200nm, mission_30d):
    threshold = lambda_min(ground_state_200nm, mission_30d)
    assert required_expansion_time(ground_state_200nm, mission_30d, threshold / 2.0) == pytest.approx(400.0)
    with pytest.raises(SolverError, match="half the series"):
        required_expansion_time(ground_state_200nm, mission_30d, threshold / 1e3)


def test_report_for_silica(silica_200nm, ground_state_200nm, mission_30d):
    report = detectability_report(silica_200nm, ground_state_200nm, mission_30d, dp=True, csl=DEFAULT_CSL)
    assert report.lambda_min == pytest.approx(4.187e18, rel=1e-3)
    assert report.lambda_dp == lambda_dp(silica_200nm)
    assert report.ratio_dp == pytest.approx(4.244e-8, rel=1e-3)
    assert report.ratio_csl == pytest.approx(0.0847, rel=2e-3)
    assert 1e-3 <= report.ratio_csl <= 10.0
    assert report.ratio_dp < 1e-5
    # DP is far out of reach: no expansion time inside the series suffices
    assert report.expansion_needed_dp == math.inf
    assert report.squeeze_needed_dp == pytest.approx(math.sqrt(1.0 / report.ratio_dp), rel=1e-12)


def test_report_rows_skip_unrequested_models(silica_200nm, ground_state_200nm, mission_30d):
    report = detectability_report(silica_200nm, ground_state_200nm, mission_30d, dp=False)
    names = [name for name, _ in report.as_rows()]
    assert names == ['lambda_min', 'lambda_min_full']
    assert report.ratio_dp is None and report.ratio_csl is None
