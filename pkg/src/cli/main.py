"""Main CLI application for the free-fall feasibility toolkit."""

import functools
import logging
import math
import sys
from pathlib import Path
from typing import Any, List, Optional, Sequence, Tuple

import click
from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler

from src.collapse_models import (
    dp_result,
    lambda_csl,
    lambda_dp,
    nongaussian_time,
    overlap_parameter,
    pairwise_decoherence_rate,
    sphere_form_factor,
)
from src.config import RunConfig, load_config
from src.dynamics import DecoherenceSource, coherent_width
from src.errors import FeasibilityError, SolverError
from src.feasibility import (
    detectability_report,
    fractional_variance_uncertainty,
    lambda_min,
    measurement_crossover_time,
)
from src.reporting import FeasibilityReporter, metadata_lines, write_csv
from src.simulation import detection_power, simulate_series
from src.sweeps import sweep_decoherence_time, sweep_ratios

# Load environment variables (FREEFALL_CONFIG, FREEFALL_SEED)
load_dotenv()

console = Console()
logger = logging.getLogger(__name__)

SWEEP_RATIO_HEADER = ['radius_m', 'density_kg_m3', 'lambda_dp', 'lambda_csl', 'lambda_min',
                      'ratio_dp', 'ratio_csl']
SWEEP_TD_HEADER = ['radius_m', 'density_kg_m3', 't_d_s']
QUANTITY_HEADER = ['quantity', 'value']


def _configure_logging(verbosity: int):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def run_options(func):
    """Options shared by every analysis command."""
    @click.option('--config', 'config_path', envvar='FREEFALL_CONFIG', default=None,
                  type=click.Path(dir_okay=False), help='Config file (key = value lines)')
    @click.option('--out', 'out_path', default=None, type=click.Path(dir_okay=False),
                  help='Write results to this CSV file')
    @click.option('--seed', envvar='FREEFALL_SEED', default=None, type=int,
                  help='Override sim.seed (unsigned 64-bit)')
    @click.option('--set', 'assignments', multiple=True, metavar='KEY=VALUE',
                  help='Override a config key (repeatable)')
    @functools.wraps(func)
    def wrapper(config_path, out_path, seed, assignments, **kwargs):
        overrides = list(assignments)
        if seed is not None:
            overrides.append(f"sim.seed={seed}")
        return func(config_path=config_path, out_path=out_path, overrides=overrides, **kwargs)
    return wrapper


def reports_errors(func):
    """Turn toolkit errors into a red message and the matching exit code."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except FeasibilityError as e:
            console.print(f"\n[bold red]Error ({type(e).__name__}): {e}[/bold red]")
            sys.exit(e.exit_code)
        except OSError as e:
            console.print(f"\n[bold red]Error: {e}[/bold red]")
            sys.exit(1)
    return wrapper


def _emit_quantities(command: str, title: str, config: RunConfig, rows: List[Tuple[str, Any]],
                     out_path: Optional[str]):
    metadata = metadata_lines(command, config)
    if out_path:
        path = write_csv(Path(out_path), QUANTITY_HEADER, rows, metadata)
        console.print(f"[green]✓ Results written to: {path}[/green]")
        return
    reporter = FeasibilityReporter(console)
    reporter.print_metadata(metadata)
    reporter.print_quantities(title, rows)


def _emit_sweep(command: str, config: RunConfig, header: Sequence[str], rows: List[Sequence[Any]],
                out_path: Optional[str], default_name: str):
    path = write_csv(Path(out_path or default_name), header, rows, metadata_lines(command, config))
    console.print(f"[green]✓ {len(rows)} rows written to: {path}[/green]")


def _resolve_lambda(config: RunConfig, particle, state, mission) -> Tuple[float, DecoherenceSource]:
    """Λ for simulate/power from sim.lambda_source, sim.lambda_true or sim.lambda_over_min."""
    source = config['sim.lambda_source']
    if source == 'none':
        return 0.0, DecoherenceSource.NONE
    if source == 'dp':
        return lambda_dp(particle), DecoherenceSource.DP
    if source == 'csl':
        return lambda_csl(particle, config.csl_params()), DecoherenceSource.CSL
    if config['sim.lambda_over_min'] is not None:
        return config['sim.lambda_over_min'] * lambda_min(state, mission), DecoherenceSource.CUSTOM
    return config['sim.lambda_true'], DecoherenceSource.CUSTOM


@click.group()
@click.option('-v', '--verbose', count=True, help='-v for progress, -vv for solver details')
def cli(verbose):
    """Free-fall feasibility toolkit - can wave-packet expansion detect DP or CSL decoherence?"""
    _configure_logging(verbose)


@cli.command()
@run_options
@reports_errors
def feasibility(config_path, out_path, overrides):
    """
    Compare Λ_DP and Λ_CSL with the detection threshold Λ_min.

    Also reports the variance uncertainty of the series, the expansion time
    at which statistics start to dominate the readout noise, and the
    squeezing or expansion time each model would need to become detectable.
    """
    config = load_config(config_path, overrides)
    particle = config.particle()
    state = config.initial_state(particle)
    mission = config.mission()

    report = detectability_report(particle, state, mission, dp=True, csl=config.csl_params(),
                                  z_multiplier=config['stats.z_multiplier'])
    rows: List[Tuple[str, Any]] = [
        ('n_runs', mission.n_runs),
        ('fractional_uncertainty', fractional_variance_uncertainty(mission)),
        ('fractional_uncertainty_approx', fractional_variance_uncertainty(mission, approximate=True)),
        ('fractional_uncertainty_finite', fractional_variance_uncertainty(mission, finite_series=True)),
    ]
    rows.extend(report.as_rows())
    if mission.sigma_meas > 0:
        try:
            rows.append(('crossover_time_s', measurement_crossover_time(state, particle, mission)))
        except SolverError as e:
            logger.warning("crossover: %s", e)
            rows.append(('crossover_time_s', math.nan))
    _emit_quantities('feasibility', 'Detectability', config, rows, out_path)


@cli.command()
@run_options
@reports_errors
def dp(config_path, out_path, overrides):
    """
    Diósi–Penrose predictions for the configured particle.

    The superposition size is dp.superposition_m, or the coherent width after
    mission.expansion_s when unset.
    """
    config = load_config(config_path, overrides)
    particle = config.particle()
    state = config.initial_state(particle)
    b = config['dp.superposition_m']
    if b is None:
        b = coherent_width(state, particle, config['mission.expansion_s'])

    result = dp_result(particle, b)
    try:
        t_d = nongaussian_time(particle, state)
    except SolverError as e:
        logger.warning("%s", e)
        t_d = math.inf
    rows = [
        ('superposition_m', b),
        ('overlap_lambda', overlap_parameter(particle, b).lambda_overlap),
        ('E_G', result.E_G),
        ('tau_G', result.tau_G),
        ('decoherence_rate', pairwise_decoherence_rate(particle, b)),
        ('lambda_dp', result.lambda_dp),
        ('heat_W', result.heat_W),
        ('heat_K_per_s', result.heat_K_per_s),
        ('t_d_s', t_d),
    ]
    _emit_quantities('dp', 'Diósi–Penrose model', config, rows, out_path)


@cli.command()
@run_options
@reports_errors
def csl(config_path, out_path, overrides):
    """CSL decoherence parameter for the configured particle."""
    config = load_config(config_path, overrides)
    particle = config.particle()
    state = config.initial_state(particle)
    params = config.csl_params()
    value = lambda_csl(particle, params)
    threshold = lambda_min(state, config.mission(), config['stats.z_multiplier'])
    rows = [
        ('form_factor', sphere_form_factor(particle.radius_a / params.r_c)),
        ('lambda_csl', value),
        ('lambda_min', threshold),
        ('ratio_csl', value / threshold),
    ]
    _emit_quantities('csl', 'CSL model', config, rows, out_path)


@cli.command()
@run_options
@reports_errors
def simulate(config_path, out_path, overrides):
    """Simulate one measurement series and estimate Λ."""
    config = load_config(config_path, overrides)
    particle = config.particle()
    state = config.initial_state(particle)
    mission = config.mission()
    lambda_true, source = _resolve_lambda(config, particle, state, mission)

    console.print(f"[yellow]Simulating {mission.n_runs} runs of {mission.expansion_time_t:g} s...[/yellow]")
    result = simulate_series(particle, state, mission, lambda_true, config['sim.seed'], source)
    rows = [
        ('lambda_true', lambda_true),
        ('var_hat', result.var_hat),
        ('lambda_hat', result.lambda_hat),
        ('z_score', result.z_score),
        ('n_runs', result.n_runs),
        ('seed', result.seed),
    ]
    _emit_quantities('simulate', 'Simulated series', config, rows, out_path)


@cli.command()
@run_options
@reports_errors
def power(config_path, out_path, overrides):
    """Detection power over replicated simulated series."""
    config = load_config(config_path, overrides)
    particle = config.particle()
    state = config.initial_state(particle)
    mission = config.mission()
    lambda_true, source = _resolve_lambda(config, particle, state, mission)

    replications = config['sim.replications']
    console.print(f"[yellow]Running {replications} series of {mission.n_runs} runs "
                  f"on {config['sim.workers']} worker(s)...[/yellow]")
    result = detection_power(particle, state, mission, lambda_true, z_crit=config['sim.z_crit'],
                             replications=replications, seed=config['sim.seed'], source=source,
                             workers=config['sim.workers'])
    rows = [
        ('lambda_true', lambda_true),
        ('z_crit', config['sim.z_crit']),
        ('mean_lambda_hat', result.mean_lambda_hat),
        ('sd_lambda_hat', result.sd_lambda_hat),
        ('mean_z_score', result.mean_z_score),
        ('sd_z_score', result.sd_z_score),
        ('detection_fraction', result.detection_fraction),
        ('replications', result.replications),
        ('seed', config['sim.seed']),
    ]
    _emit_quantities('power', 'Detection power', config, rows, out_path)


@cli.command('sweep-ratio')
@run_options
@reports_errors
def sweep_ratio(config_path, out_path, overrides):
    """Λ/Λ_min for DP and CSL over the radius × density grid (CSV)."""
    config = load_config(config_path, overrides)
    rows = sweep_ratios(config.sweep_spec())
    FeasibilityReporter(console).print_sweep_summary(rows, with_t_d=False)
    table = [(r.radius, r.density, r.lambda_dp, r.lambda_csl, r.lambda_min, r.ratio_dp, r.ratio_csl)
             for r in rows]
    _emit_sweep('sweep-ratio', config, SWEEP_RATIO_HEADER, table, out_path, 'sweep_ratio.csv')


@cli.command('sweep-td')
@run_options
@reports_errors
def sweep_td(config_path, out_path, overrides):
    """DP non-Gaussianity time t_D over the radius × density grid (CSV)."""
    config = load_config(config_path, overrides)
    rows = sweep_decoherence_time(config.sweep_spec())
    FeasibilityReporter(console).print_sweep_summary(rows, with_t_d=True)
    table = [(r.radius, r.density, r.t_d) for r in rows]
    _emit_sweep('sweep-td', config, SWEEP_TD_HEADER, table, out_path, 'sweep_td.csv')
