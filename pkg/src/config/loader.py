"""
Config file loader.

One `key = value` per line, `#` comments and blank lines allowed. Lines are
tokenised by python-dotenv's stream parser; this module adds the key
whitelist, duplicate detection, typed parsing, defaults and validation.
Units are converted here (days → s, Hz → rad/s) and nowhere else.
"""

import hashlib
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from dotenv.parser import parse_stream

from src.collapse_models import CslParams
from src.constants import SECONDS_PER_DAY, TWO_PI, constants
from src.errors import ConfigError, DomainError
from src.feasibility import MissionProfile, make_mission, max_series_time
from src.particle import InitialState, TestParticle, make_initial_state, make_particle
from src.simulation import validate_seed
from src.sweeps import SweepSpec, build_radii, make_sweep_spec


def _float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"not a finite number: {text!r}")
    return value


def _int(text: str) -> int:
    text = text.strip()
    if not text.lstrip('+-').isdigit():
        raise ValueError(f"not an integer: {text!r}")
    return int(text)


def _float_list(text: str) -> Tuple[float, ...]:
    items = [item.strip() for item in text.split(',') if item.strip()]
    if not items:
        raise ValueError("empty list")
    return tuple(_float(item) for item in items)


def _choice(*options: str) -> Callable[[str], str]:
    def parse(text: str) -> str:
        value = text.strip().lower()
        if value not in options:
            raise ValueError(f"must be one of {', '.join(options)} (got {text!r})")
        return value
    return parse


def _positive(value) -> bool:
    values = value if isinstance(value, tuple) else (value,)
    return all(v > 0 for v in values)


def _non_negative(value) -> bool:
    return value >= 0


def _at_least_one(value) -> bool:
    return value >= 1


class _Key(NamedTuple):
    parse: Callable[[str], Any]
    default: Any
    check: Optional[Callable[[Any], bool]] = None
    rule: str = ''


_POSITIVE = (_positive, 'must be > 0')
_NON_NEGATIVE = (_non_negative, 'must be >= 0')
_AT_LEAST_ONE = (_at_least_one, 'must be >= 1')

# Keys accepted in files and --set overrides. A default of None means the
# key is optional and resolved from an alternative key.
KNOWN_KEYS: Dict[str, _Key] = {
    'particle.radius_m': _Key(_float, 200e-9, *_POSITIVE),
    'particle.density_kg_m3': _Key(_float, 2200.0, *_POSITIVE),
    'trap.omega_rad_s': _Key(_float, None, *_POSITIVE),
    'trap.freq_hz': _Key(_float, None, *_POSITIVE),
    'trap.nbar': _Key(_float, 0.0, *_NON_NEGATIVE),
    'trap.squeeze': _Key(_float, 1.0, *_AT_LEAST_ONE),
    'mission.series_days': _Key(_float, None, *_POSITIVE),
    'mission.series_s': _Key(_float, None, *_POSITIVE),
    'mission.expansion_s': _Key(_float, 100.0, *_POSITIVE),
    'mission.sigma_meas_m': _Key(_float, 100e-9, *_NON_NEGATIVE),
    'mission.lifetime_days': _Key(_float, None, *_POSITIVE),
    'models.csl.rate_hz': _Key(_float, 2.2e-17, *_POSITIVE),
    'models.csl.rc_m': _Key(_float, 1e-7, *_POSITIVE),
    'models.csl.reference_mass_kg': _Key(_float, constants().amu, *_POSITIVE),
    'sim.seed': _Key(_int, 0, *_NON_NEGATIVE),
    'sim.replications': _Key(_int, 200, lambda v: v >= 2, 'must be >= 2'),
    'sim.z_crit': _Key(_float, 1.0, *_POSITIVE),
    'sim.lambda_true': _Key(_float, None, *_NON_NEGATIVE),
    'sim.lambda_over_min': _Key(_float, None, *_NON_NEGATIVE),
    'sim.lambda_source': _Key(_choice('none', 'dp', 'csl', 'custom'), 'custom'),
    'sim.workers': _Key(_int, 1, *_AT_LEAST_ONE),
    'stats.z_multiplier': _Key(_float, 1.0, *_POSITIVE),
    'sweep.radius_min_m': _Key(_float, 50e-9, *_POSITIVE),
    'sweep.radius_max_m': _Key(_float, 2e-6, *_POSITIVE),
    'sweep.radius_points': _Key(_int, 50, *_AT_LEAST_ONE),
    'sweep.densities': _Key(_float_list, (2000.0, 5000.0), *_POSITIVE),
    'sweep.spacing': _Key(_choice('log', 'linear'), 'log'),
    'sweep.workers': _Key(_int, 1, *_AT_LEAST_ONE),
    'dp.superposition_m': _Key(_float, None, *_NON_NEGATIVE),
}

# Execution settings, excluded from the config hash.
EXECUTION_KEYS = frozenset({'sim.workers', 'sweep.workers'})

DEFAULT_OMEGA = 1e5
DEFAULT_SERIES_DAYS = 30.0

# Which config key feeds each domain-object field, for error messages.
_FIELD_KEYS = {
    'radius': 'particle.radius_m',
    'density': 'particle.density_kg_m3',
    'omega': 'trap.omega_rad_s',
    'nbar': 'trap.nbar',
    'squeeze': 'trap.squeeze',
    'series_time_T': 'mission.series_s',
    'expansion_time_t': 'mission.expansion_s',
    'n_runs': 'mission.expansion_s',
    'sigma_meas': 'mission.sigma_meas_m',
    'rate_lambda0': 'models.csl.rate_hz',
    'r_c': 'models.csl.rc_m',
    'reference_mass': 'models.csl.reference_mass_kg',
    'seed': 'sim.seed',
    'radius_min': 'sweep.radius_min_m',
    'radius_max': 'sweep.radius_max_m',
    'radius_points': 'sweep.radius_points',
}


@dataclass(frozen=True)
class RunConfig:
    """
    Resolved configuration.

    `values` holds every canonical key with defaults filled in; frequencies
    are in rad/s and durations in s. `lines` maps keys to the config-file
    line they came from (0 for --set overrides).
    """

    values: Mapping[str, Any]
    lines: Mapping[str, int]

    def __getitem__(self, key: str) -> Any:
        return self.values[key]

    def _located(self, error: DomainError) -> ConfigError:
        key = _FIELD_KEYS.get(error.field, error.field)
        line = self.lines.get(key) or None
        return ConfigError(error.reason, key=key, line=line)

    def particle(self) -> TestParticle:
        """Test particle from particle.*."""
        try:
            return make_particle(self['particle.radius_m'], self['particle.density_kg_m3'])
        except DomainError as e:
            raise self._located(e) from e

    def initial_state(self, particle: Optional[TestParticle] = None) -> InitialState:
        """Initial state from trap.* for the configured (or given) particle."""
        particle = particle or self.particle()
        try:
            return make_initial_state(particle, self['trap.omega_rad_s'], self['trap.nbar'],
                                      self['trap.squeeze'])
        except DomainError as e:
            raise self._located(e) from e

    def mission(self) -> MissionProfile:
        """Mission profile from mission.*."""
        try:
            return make_mission(self['mission.series_s'], self['mission.expansion_s'],
                                self['mission.sigma_meas_m'])
        except DomainError as e:
            raise self._located(e) from e

    def csl_params(self) -> CslParams:
        """CSL parameters from models.csl.*."""
        try:
            return CslParams(rate_lambda0=self['models.csl.rate_hz'], r_c=self['models.csl.rc_m'],
                             reference_mass=self['models.csl.reference_mass_kg'])
        except DomainError as e:
            raise self._located(e) from e

    def sweep_spec(self) -> SweepSpec:
        """Sweep grid from sweep.* with the configured trap, mission and CSL settings."""
        try:
            radii = build_radii(self['sweep.radius_min_m'], self['sweep.radius_max_m'],
                                self['sweep.radius_points'], self['sweep.spacing'])
            return make_sweep_spec(
                radii=radii,
                densities=self['sweep.densities'],
                omega=self['trap.omega_rad_s'],
                mission=self.mission(),
                nbar=self['trap.nbar'],
                squeeze=self['trap.squeeze'],
                csl_params=self.csl_params(),
                z_multiplier=self['stats.z_multiplier'],
                workers=self['sweep.workers'],
            )
        except DomainError as e:
            raise self._located(e) from e


def _binding_line(binding) -> int:
    # The dotenv mark starts before any blank lines it swallowed.
    text = binding.original.string
    leading = text[:len(text) - len(text.lstrip())]
    return binding.original.line + leading.count('\n')


def _read_entries(text: str) -> Dict[str, Tuple[str, int]]:
    entries: Dict[str, Tuple[str, int]] = {}
    for binding in parse_stream(io.StringIO(text)):
        line = _binding_line(binding)
        if binding.error:
            raise ConfigError(f"malformed line {binding.original.string.strip()!r}", line=line)
        if binding.key is None:
            continue
        if binding.value is None:
            raise ConfigError("expected 'key = value'", key=binding.key, line=line)
        if binding.key in entries:
            raise ConfigError(f"duplicate key (first set on line {entries[binding.key][1]})",
                              key=binding.key, line=line)
        entries[binding.key] = (binding.value, line)
    return entries


def parse_overrides(assignments: Sequence[str]) -> Dict[str, str]:
    """
    Parse --set style `key=value` strings.

    Later assignments of the same key win.
    """
    overrides: Dict[str, str] = {}
    for assignment in assignments:
        key, sep, value = assignment.partition('=')
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"--set expects key=value (got {assignment!r})")
        overrides[key] = value.strip()
    return overrides


def _typed(key: str, text: str, line: Optional[int]) -> Any:
    spec = KNOWN_KEYS.get(key)
    if spec is None:
        raise ConfigError("unknown key", key=key, line=line)
    try:
        value = spec.parse(text)
    except ValueError as e:
        raise ConfigError(f"malformed value: {e}", key=key, line=line) from None
    if spec.check is not None and not spec.check(value):
        raise ConfigError(f"{spec.rule} (got {text.strip()})", key=key, line=line)
    return value


def _exclusive(raw: Dict[str, Any], lines: Dict[str, int], first: str, second: str) -> None:
    if raw.get(first) is not None and raw.get(second) is not None:
        raise ConfigError(f"conflicts with {first}; set only one", key=second,
                          line=lines.get(second) or None)


def parse_config(text: str, overrides: Optional[Mapping[str, str]] = None) -> RunConfig:
    """
    Parse and validate config text.

    Args:
        text: Config file contents
        overrides: Already split --set assignments; they replace file values

    Returns:
        RunConfig with defaults filled in

    Raises:
        ConfigError: Unknown or duplicate key, malformed number, or violated
            invariant; the message names the key and line
    """
    entries = _read_entries(text)
    raw: Dict[str, Any] = {}
    lines: Dict[str, int] = {}
    for key, (value, line) in entries.items():
        raw[key] = _typed(key, value, line)
        lines[key] = line
    for key, value in (overrides or {}).items():
        try:
            raw[key] = _typed(key, value, None)
        except ConfigError as e:
            raise ConfigError(f"{e.reason} (from --set)", key=e.key) from None
        lines[key] = 0

    _exclusive(raw, lines, 'trap.omega_rad_s', 'trap.freq_hz')
    _exclusive(raw, lines, 'mission.series_days', 'mission.series_s')
    _exclusive(raw, lines, 'sim.lambda_true', 'sim.lambda_over_min')

    values: Dict[str, Any] = {key: spec.default for key, spec in KNOWN_KEYS.items()}
    values.update(raw)

    if raw.get('trap.freq_hz') is not None:
        values['trap.omega_rad_s'] = TWO_PI * raw['trap.freq_hz']
        lines['trap.omega_rad_s'] = lines['trap.freq_hz']
    elif values['trap.omega_rad_s'] is None:
        values['trap.omega_rad_s'] = DEFAULT_OMEGA
    del values['trap.freq_hz']

    if raw.get('mission.series_days') is not None:
        values['mission.series_s'] = raw['mission.series_days'] * SECONDS_PER_DAY
        lines['mission.series_s'] = lines['mission.series_days']
    elif values['mission.series_s'] is None:
        values['mission.series_s'] = DEFAULT_SERIES_DAYS * SECONDS_PER_DAY
    del values['mission.series_days']

    lifetime = values['mission.lifetime_days']
    if lifetime is not None and values['mission.series_s'] > max_series_time(lifetime):
        raise ConfigError(f"series of {values['mission.series_s']:g} s exceeds a tenth of the "
                          f"{lifetime:g}-day mission lifetime", key='mission.series_s',
                          line=lines.get('mission.series_s') or None)

    if values['sim.lambda_true'] is None and values['sim.lambda_over_min'] is None:
        values['sim.lambda_true'] = 0.0
    if values['sim.lambda_source'] == 'none' and (values['sim.lambda_true'] or values['sim.lambda_over_min']):
        raise ConfigError("lambda_source none requires a zero Λ", key='sim.lambda_source',
                          line=lines.get('sim.lambda_source') or None)

    try:
        validate_seed(values['sim.seed'])
    except DomainError as e:
        raise ConfigError(e.reason, key='sim.seed', line=lines.get('sim.seed') or None) from None

    config = RunConfig(values=values, lines=lines)
    # Build every domain object once so invariants fail here, not mid-command.
    config.initial_state()
    config.mission()
    config.csl_params()
    config.sweep_spec()
    return config


def load_config(path: Optional[str], overrides: Optional[Sequence[str]] = None) -> RunConfig:
    """
    Read a UTF-8 config file (or use pure defaults when path is None).

    Args:
        path: Config file path, or None
        overrides: Raw --set `key=value` strings
    """
    text = ''
    if path is not None:
        try:
            text = Path(path).read_text(encoding='utf-8')
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except UnicodeDecodeError as e:
            raise ConfigError(f"config file is not valid UTF-8: {e}") from None
    return parse_config(text, parse_overrides(overrides or []))


def _canonical(value: Any) -> str:
    if isinstance(value, tuple):
        return ','.join(repr(v) for v in value)
    return repr(value)


def config_hash(config: RunConfig) -> str:
    """
    sha256 over the sorted `key = repr(value)` lines of the resolved config.

    Worker counts are left out: they change how a run executes, never what
    it writes.
    """
    lines: List[str] = [f"{key} = {_canonical(config.values[key])}"
                        for key in sorted(config.values) if key not in EXECUTION_KEYS]
    return hashlib.sha256('\n'.join(lines).encode('utf-8')).hexdigest()
