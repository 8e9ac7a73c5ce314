"""
Configuration Manager for Quantum Double Verifier
Persistent settings, environment overrides and the default instance matrix
"""

import json
import logging
import os
from typing import List, Optional, Tuple

from pydantic import BaseModel, ValidationError

from app.core.errors import ConfigError
from app.utils.paths import get_app_data_dir
from app.utils.validators import validate_cap

logger = logging.getLogger(__name__)

CONFIG_VERSION = "1.0.0"


class Settings(BaseModel):
    """Resource caps and verification defaults."""

    max_group_order: int = 48
    max_basis: int = 100_000
    max_carrier: int = 4096
    exhaustive_limit: int = 1_000_000
    sample_count: int = 500
    seed: int = 20240101
    default_format: str = "json"


class Instance(BaseModel):
    """One (G, H, window) row of an instance matrix."""

    group: str
    subgroup: str
    window: Tuple[int, int] = (0, 1)
    negative: bool = False


DEFAULT_INSTANCES: List[Instance] = [
    Instance(group="Z2", subgroup="all"),
    Instance(group="Z4", subgroup="2"),
    Instance(group="S3", subgroup="(123)"),
    Instance(group="D4", subgroup="center"),
    Instance(group="Q8", subgroup="-1"),
    Instance(group="S3", subgroup="all"),
    Instance(group="S3", subgroup="trivial"),
    Instance(group="S3", subgroup="(12)", negative=True),
]


class Config:
    """Handles loading and saving user configuration."""

    def __init__(self):
        self.config_dir = get_app_data_dir()
        self.config_file = self.config_dir / "config.json"
        self._ensure_config_dir()

    def _ensure_config_dir(self):
        """Create config directory if it doesn't exist."""
        self.config_dir.mkdir(parents=True, exist_ok=True)

    def is_first_run(self):
        """Check whether a settings file has been written yet."""
        return not self.config_file.exists()

    def save_config(self, settings: Settings, instances: Optional[List[Instance]] = None):
        """
        Save settings and the instance matrix to file.

        Args:
            settings: Settings to persist
            instances: Instance matrix (defaults to DEFAULT_INSTANCES)
        """
        config_data = {
            'version': CONFIG_VERSION,  # Config version for future migrations
            'settings': settings.model_dump(),
            'instances': [i.model_dump(mode="json") for i in (instances or DEFAULT_INSTANCES)],
        }

        with open(self.config_file, 'w') as f:
            json.dump(config_data, f, indent=4)
        logger.debug("Saved configuration to %s", self.config_file)

    def load_config(self):
        """
        Load configuration from file with migration for old formats.

        Returns:
            dict: Configuration data or None if not found or unreadable
        """
        if not self.config_file.exists():
            return None

        try:
            with open(self.config_file, 'r') as f:
                config = json.load(f)
        except (json.JSONDecodeError, IOError) as e:
            logger.warning("Ignoring unreadable config file %s: %s", self.config_file, e)
            return None

        # MIGRATION: Add default values for missing fields
        if 'version' not in config:
            config['version'] = '0.9.0'  # Assume pre-release file

        # flat pre-release files kept caps at top level
        settings = config.get('settings', {})
        for key in Settings.model_fields:
            if key not in settings and key in config:
                settings[key] = config.pop(key)
        config['settings'] = {**Settings().model_dump(), **settings}

        if 'instances' not in config:
            config['instances'] = [i.model_dump(mode="json") for i in DEFAULT_INSTANCES]

        return config

    def settings(self) -> Settings:
        """
        Effective settings: file values, then environment overrides.

        Raises:
            ConfigError: If a stored or overriding value is invalid
        """
        config = self.load_config() or {}
        values = dict(config.get('settings', {}))

        override = os.getenv('QDV_MAX_BASIS')
        if override is not None:
            is_valid, error = validate_cap(override, "QDV_MAX_BASIS")
            if not is_valid:
                raise ConfigError(error)
            values['max_basis'] = int(override)

        try:
            return Settings(**values)
        except ValidationError as e:
            raise ConfigError(f"Invalid settings in {self.config_file}: {e}") from e

    def instances(self) -> List[Instance]:
        """Instance matrix from file, or the shipped default."""
        config = self.load_config()
        if not config:
            return list(DEFAULT_INSTANCES)
        try:
            return [Instance(**row) for row in config['instances']]
        except (ValidationError, TypeError) as e:
            raise ConfigError(f"Invalid instance matrix in {self.config_file}: {e}") from e

    def reset_config(self):
        """Delete all configuration data."""
        if self.config_file.exists():
            self.config_file.unlink()
