"""Configuration manager for the ecoand application.

This module handles loading and accessing the named presets from YAML files,
providing a centralized interface for grid and limit presets.
"""

import logging
import os

import yaml

from ecoand.config.config_models import GridSpec, PresetRegistry
from ecoand.models.scenario import Limits


class ConfigManager:
    """
    Manages presets for the ecoand application.

    Loads oracle grids and vehicle limits from a YAML file and provides
    an interface to access them.
    """

    def __init__(self, config_path: str | None = None):
        """
        Initialize the configuration manager.

        Args:
            config_path: Optional path to a custom presets file.
                         If not provided, the bundled presets are used.
        """
        self.logger = logging.getLogger(__name__)
        self._registry = self._load_registry(config_path)

    def _load_registry(self, config_path: str | None = None) -> PresetRegistry:
        """
        Load the preset registry from YAML.

        Raises:
            FileNotFoundError: If the presets file doesn't exist
            yaml.YAMLError: If the YAML is invalid
            ValueError: If a preset is invalid
        """
        if not config_path:
            config_dir = os.path.dirname(os.path.abspath(__file__))
            config_path = os.path.join(config_dir, "presets.yaml")

        try:
            with open(config_path, encoding="utf-8") as file:
                config_data = yaml.safe_load(file)
                return PresetRegistry(**config_data)
        except FileNotFoundError:
            self.logger.error(f"Presets file not found: {config_path}")
            raise
        except yaml.YAMLError as e:
            self.logger.error(f"Invalid YAML in presets file: {e}")
            raise
        except (TypeError, ValueError) as e:
            self.logger.error(f"Invalid presets: {e}")
            raise ValueError(f"Invalid presets in {config_path}: {e}") from e

    def get_grid(self, name: str) -> GridSpec:
        """
        Get an oracle grid by name.

        Raises:
            ValueError: If the grid doesn't exist
        """
        if name not in self._registry.grids:
            raise ValueError(f"Grid '{name}' not found in configuration")
        return self._registry.grids[name]

    def list_grids(self) -> list[str]:
        return list(self._registry.grids.keys())

    def get_grid_descriptions(self) -> dict[str, str]:
        """
        Get descriptions for all grids.

        Returns:
            Dictionary mapping grid names to their descriptions
        """
        return {
            name: grid.description or f"dt={grid.dt}, dv={grid.dv}, dx={grid.dx}"
            for name, grid in self._registry.grids.items()
        }

    def get_limits(self, name: str) -> Limits:
        """
        Get vehicle limits by preset name.

        Raises:
            ValueError: If the preset doesn't exist
        """
        if name not in self._registry.limits:
            raise ValueError(f"Limits preset '{name}' not found in configuration")
        return self._registry.limits[name].to_limits()

    def list_limits(self) -> list[str]:
        return list(self._registry.limits.keys())

    @classmethod
    def from_file(cls, config_path: str) -> "ConfigManager":
        """Create a ConfigManager from a specific presets file."""
        return cls(config_path=config_path)
