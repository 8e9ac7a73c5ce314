"""Utility functions for Quantum Double Verifier"""

from .paths import get_app_data_dir, default_report_name
from .validators import (
    validate_group_spec,
    validate_window,
    validate_suites,
    validate_mode,
    validate_format,
    validate_cap
)

__all__ = [
    'get_app_data_dir',
    'default_report_name',
    'validate_group_spec',
    'validate_window',
    'validate_suites',
    'validate_mode',
    'validate_format',
    'validate_cap'
]
