from __future__ import annotations

import configparser
import dataclasses
import os
import pathlib
import sys
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any, Optional

from .errors import BadParameterError

CONFIG_SECTION = 'nilrep'
CONFIG_FILE_NAME = 'nilrep.ini'

# name -> smallest accepted value
_LIMITS = {'max_dim': 1, 'samples': 1, 'seed': 0, 'height': 1, 'jobs': 1}


@dataclass(frozen=True)
class Settings:
    max_dim: int = 8
    samples: int = 100
    seed: int = 0
    height: int = 3
    jobs: int = 1

    def with_overrides(self, source: str, values: Mapping[str, Any]) -> Settings:
        """Returns a copy with the given fields replaced; None values are ignored."""
        changes: dict[str, int] = {}
        for key, raw in values.items():
            if raw is None:
                continue
            if key not in _LIMITS:
                raise BadParameterError(f"Unknown setting '{key}' in {source}", source=source, key=key)
            try:
                value = int(raw)
            except (TypeError, ValueError):
                raise BadParameterError(f"Setting '{key}' in {source} must be an integer, got '{raw}'", source=source, key=key) from None
            if value < _LIMITS[key]:
                raise BadParameterError(f"Setting '{key}' in {source} must be >= {_LIMITS[key]}, got {value}", source=source, key=key)
            changes[key] = value
        return dataclasses.replace(self, **changes)


def get_config_file_path() -> str:
    """Config file location: NILREP_CONFIG, else the platform config directory."""
    override = os.environ.get('NILREP_CONFIG')
    if override:
        return override
    if sys.platform == "win32":
        config_dir = os.path.join(os.environ.get('APPDATA') or os.path.join(str(pathlib.Path.home()), 'AppData', 'Roaming'), 'nilrep')
    else:
        xdg_config = os.environ.get("XDG_CONFIG_HOME")
        if xdg_config:
            config_dir = os.path.join(xdg_config, "nilrep")
        else:
            config_dir = os.path.join(str(pathlib.Path.home()), ".config", "nilrep")
    return os.path.join(config_dir, CONFIG_FILE_NAME)


def read_config_file(path: str) -> dict[str, str]:
    config = configparser.ConfigParser()
    if not os.path.exists(path):
        return {}
    try:
        config.read(path, encoding='utf-8')
    except configparser.Error as e:
        raise BadParameterError(f"Cannot parse config file '{path}': {e}", source=path) from None
    if not config.has_section(CONFIG_SECTION):
        return {}
    return dict(config.items(CONFIG_SECTION))


def load_settings(cli_values: Optional[Mapping[str, Any]] = None, environ: Optional[Mapping[str, str]] = None) -> Settings:
    """Defaults, then the INI file, then NILREP_MAX_DIM, then command-line values."""
    env = os.environ if environ is None else environ
    path = get_config_file_path()
    settings = Settings().with_overrides(path, read_config_file(path))
    settings = settings.with_overrides('NILREP_MAX_DIM', {'max_dim': env.get('NILREP_MAX_DIM') or None})
    return settings.with_overrides('command line', cli_values or {})
