#!/usr/bin/env python3
"""
Run the analysis selected by analysis.mode in a configuration file
"""

import sys

from src.cli.app import main as cli_main
from src.cli.app import load_run_config
from src.utils.config import get_settings
from src.utils.logger import get_logger, setup_logger

setup_logger("radial-embed", log_level=get_settings().log_level)
logger = get_logger("RunAnalysis")

MODE_TO_COMMAND = {
    "verdict": "analyze",
    "region": "region",
    "witness": "witness",
    "verify": "verify",
}


def main() -> int:
    """Translate the configured mode into the matching subcommand"""
    args = sys.argv[1:]
    config_path = args[0] if args else "config/embedding_config.yaml"
    try:
        mode = load_run_config(config_path).analysis.mode
    except Exception as e:
        logger.error(f"Could not read {config_path}: {e}")
        return 2

    command = MODE_TO_COMMAND[mode]
    logger.info(f"mode '{mode}' -> radial-embed {command}")
    return cli_main([command, "--config", config_path, *args[1:]])


if __name__ == "__main__":
    sys.exit(main())
