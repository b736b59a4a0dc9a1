"""Configuration loading and management"""

import os
from pathlib import Path
from typing import Any, Dict, Union

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

ENV_PREFIX = "RADIAL_EMBED_"


class Settings(BaseModel):
    """Process-level defaults, overridable through RADIAL_EMBED_* environment variables"""

    model_config = ConfigDict(
        frozen=True,
        extra="ignore",
        alias_generator=lambda name: ENV_PREFIX + name.upper(),
        populate_by_name=True,
    )

    log_level: str = "INFO"
    log_file: str = ""
    seed: int = Field(default=0, ge=0, lt=2**64)
    nodes_per_decade: int = Field(default=512, ge=16)
    output_dir: str = "results"


def load_config(config_path: Union[str, Path] = "config/embedding_config.yaml") -> Dict[str, Any]:
    """
    Load a YAML (or JSON) configuration file.

    Args:
        config_path: Path to the configuration file

    Returns:
        Dictionary containing configuration
    """
    if not os.path.exists(config_path):
        raise FileNotFoundError(f"Configuration file not found: {config_path}")

    with open(config_path, "r") as f:
        config = yaml.safe_load(f)

    return config if config is not None else {}


def get_settings() -> Settings:
    """Get application settings from environment variables (and .env if present)"""
    load_dotenv(override=False)
    return Settings.model_validate(dict(os.environ))
