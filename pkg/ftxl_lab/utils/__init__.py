"""
ftxl_lab.utils
~~~~~~~~~~~~~~

Utility functions and helpers.
"""

from .validation import (
    validate_request, GameSpecSchema, OverridesSchema, ExperimentRequestSchema, EquilibriumRequestSchema,
)
from .monitoring import track_operation, HealthCheck

__all__ = [
    'validate_request',
    'GameSpecSchema',
    'OverridesSchema',
    'ExperimentRequestSchema',
    'EquilibriumRequestSchema',
    'track_operation',
    'HealthCheck',
]
