"""Configuration module for ecoand.

This module provides preset models and management utilities
for the ecoand application.
"""

from ecoand.config.config_manager import ConfigManager
from ecoand.config.config_models import (
    GridSpec,
    LimitsPreset,
    PresetRegistry,
)

__all__ = [
    "ConfigManager",
    "GridSpec",
    "LimitsPreset",
    "PresetRegistry",
]
