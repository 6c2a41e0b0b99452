"""Run configuration: `key = value` files with dotted keys."""

from .loader import RunConfig, KNOWN_KEYS, parse_config, load_config, parse_overrides, config_hash

__all__ = ['RunConfig', 'KNOWN_KEYS', 'parse_config', 'load_config', 'parse_overrides', 'config_hash']
