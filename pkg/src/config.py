"""
Configuration loading for cubik.

Settings come from configs/config.yaml, with environment overrides read
through python-dotenv (CUBIK_BUDGET, CUBIK_LOG_LEVEL).
"""

import copy
import logging
import os
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "configs/config.yaml"
DEFAULT_BUDGET = 10 ** 6

_FALLBACK_CONFIG: Dict[str, Any] = {
    'logging': {
        'log_level': 'INFO',
        'log_file': './logs/cubik.log',
        'environment': 'development',
        'service_name': 'cubik',
        'structured_events': True,
    },
    'enumeration': {
        'budget': DEFAULT_BUDGET,
    },
    'product': {
        'verify_nondegenerate_pairs': True,
    },
    'cone': {
        'cross_check_is_cone': True,
    },
    'suites': {
        'seed': 20240521,
        'random_trials': 25,
        'mono_trials': 100,
        'nerve_bound': 3,
        'theta_bound': 4,
    },
    'tau1': {
        'rewrite_budget': 2000,
    },
}

_config_cache: Dict[str, Dict[str, Any]] = {}


def load_config(config_path: str = DEFAULT_CONFIG_PATH) -> Dict[str, Any]:
    """
    Load configuration from a YAML file, falling back to built-in defaults.

    Missing sections or keys in the file are filled from the defaults, and
    environment overrides are applied last.

    Args:
        config_path: Path to the YAML configuration file

    Returns:
        Configuration dictionary with every known section present
    """
    if config_path in _config_cache:
        return _config_cache[config_path]

    config = copy.deepcopy(_FALLBACK_CONFIG)
    try:
        with open(config_path, 'r') as file:
            loaded = yaml.safe_load(file) or {}
        for section, values in loaded.items():
            if isinstance(values, dict):
                config.setdefault(section, {}).update(values)
            else:
                config[section] = values
    except FileNotFoundError:
        logger.debug(f"Config file {config_path} not found, using defaults")

    _apply_environment(config)
    _config_cache[config_path] = config
    return config


def _apply_environment(config: Dict[str, Any]) -> None:
    """Apply CUBIK_* environment overrides in place."""
    budget = os.getenv('CUBIK_BUDGET')
    if budget:
        try:
            value = int(budget)
            if value <= 0:
                raise ValueError(budget)
            config['enumeration']['budget'] = value
        except ValueError:
            logger.warning(f"Ignoring invalid CUBIK_BUDGET value: {budget!r}")

    level = os.getenv('CUBIK_LOG_LEVEL')
    if level:
        config['logging']['log_level'] = level.upper()


def reset_config_cache() -> None:
    """Forget cached configurations (used when the environment changes)."""
    _config_cache.clear()


def get_setting(section: str, key: str, default: Optional[Any] = None,
                config_path: str = DEFAULT_CONFIG_PATH) -> Any:
    """Look up a single setting."""
    return load_config(config_path).get(section, {}).get(key, default)


def get_budget(override: Optional[int] = None) -> int:
    """
    Resolve the enumeration budget.

    Args:
        override: Explicit budget taking precedence over configuration

    Returns:
        Maximum number of candidates an enumeration may examine
    """
    if override is not None:
        return override
    return int(get_setting('enumeration', 'budget', DEFAULT_BUDGET))
