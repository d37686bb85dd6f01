"""
Settings
Resolves runtime configuration: explicit value, then environment, then an optional
bizon.toml file, then defaults.
"""

import logging
import os
import sys

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

CONFIG_ENV = "BIZON_CONFIG"
DEFAULT_CONFIG_FILE = "bizon.toml"


@dataclass(frozen=True)
class Settings:
    threads: int = 1
    seed: int = 20240701
    max_basis: int = 10**9
    max_oracle_edges: int = 14
    max_canonical_vertices: int = 12
    max_forest_edges: int = 25
    max_polytope_vertices: int = 8
    max_box: int = 10**7
    # below this box bound the process pool costs more than it saves
    parallel_threshold: int = 200_000
    memo_max_vertices: int = 7
    max_subset_vertices: int = 24
    max_delcon_edges: int = 24
    max_crosscheck_oracle_edges: int = 8


def _load_file_values() -> Dict[str, Any]:
    """Read the [bizon] table of the config file, if one exists."""
    path = Path(os.environ.get(CONFIG_ENV, DEFAULT_CONFIG_FILE))
    if not path.is_file():
        return {}
    try:
        with path.open("rb") as fh:
            data = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as e:
        logger.warning(f"Ignoring unreadable config file {path}: {e}")
        return {}
    return data.get("bizon", data)


def _env_int(name: str) -> Optional[int]:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}")
        return None


def load_settings(threads: Optional[int] = None, seed: Optional[int] = None) -> Settings:
    """
    Build the effective settings.

    Args:
        threads: value from --threads, if given
        seed: value from --seed, if given

    Returns:
        Settings: resolved configuration
    """
    file_values = _load_file_values()
    known = set(Settings.__dataclass_fields__)
    settings = Settings(**{k: int(v) for k, v in file_values.items() if k in known})

    if "threads" not in file_values:
        settings = replace(settings, threads=os.cpu_count() or 1)
    env_threads = _env_int("BIZON_THREADS")
    if env_threads is not None:
        settings = replace(settings, threads=env_threads)
    env_seed = _env_int("BIZON_SEED")
    if env_seed is not None:
        settings = replace(settings, seed=env_seed)

    if threads is not None:
        settings = replace(settings, threads=threads)
    if seed is not None:
        settings = replace(settings, seed=seed)
    if settings.threads < 1:
        settings = replace(settings, threads=1)
    return settings


_current = Settings()


def get_settings() -> Settings:
    """Settings in effect for library calls that were not given explicit budgets."""
    return _current


def configure(settings: Settings) -> None:
    global _current
    _current = settings
    logger.debug(f"Settings configured: {settings}")
