"""
ftxl_lab.config
~~~~~~~~~~~~~~~

Default configuration for ftxl-lab.
"""

import os
import logging
from typing import Any, Dict, Optional

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = {
    # Learner settings
    'FTXL_ETA': 0.01,
    'FTXL_FRICTION': 0.0,
    'FTXL_INIT_MARGIN': 0.1,  # scores trail by M + margin when starting near equilibrium

    # Numerics
    'FTXL_BISECTION_TOL': 1e-12,
    'FTXL_BISECTION_MAX_ITER': 200,

    # Harness
    'FTXL_SEED': 0,
    'FTXL_WORKERS': 1,
    'FTXL_DIVERGENCE_GUARD': 1e12,
    'FTXL_CONVERGENCE_TOL': 1e-2,
    'FTXL_FIT_FLOOR': 1e-14,
    'FTXL_OUTPUT_DIR': 'results',

    # Continuous-time integration
    'FTXL_DT': 1e-3,
    'FTXL_SAMPLE_EVERY': 10,
    'FTXL_T_START_VANISHING': 1e-3,

    # Logging
    'FTXL_LOG_LEVEL': 'INFO',

    # HTTP API
    'FTXL_URL_PREFIX': '/api/ftxl',
    'FTXL_API_MAX_TRIALS': 20,
    'FTXL_CORS_ORIGINS': ['*'],
}


def _coerce(value: str, default: Any) -> Any:
    """Convert an environment string to the type of its default."""
    if isinstance(default, bool):
        return value.strip().lower() in ('1', 'true', 'yes', 'on')
    if isinstance(default, int):
        return int(value)
    if isinstance(default, float):
        return float(value)
    if isinstance(default, list):
        return [part.strip() for part in value.split(',') if part.strip()]
    return value


def load_config(overrides: Optional[Dict[str, Any]] = None, dotenv_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Build the effective configuration.

    Precedence (lowest first): DEFAULT_CONFIG, environment / .env, overrides.

    Args:
        overrides: Explicit values (e.g. from CLI flags)
        dotenv_path: Optional path to a .env file

    Returns:
        dict: Effective configuration
    """
    load_dotenv(dotenv_path=dotenv_path, override=False)

    config = dict(DEFAULT_CONFIG)
    for key, default in DEFAULT_CONFIG.items():
        raw = os.environ.get(key)
        if raw is None or raw == '':
            continue
        try:
            config[key] = _coerce(raw, default)
        except ValueError:
            logger.warning(f"Ignoring malformed environment value {key}={raw!r}")

    if overrides:
        config.update({k: v for k, v in overrides.items() if v is not None})

    return config
