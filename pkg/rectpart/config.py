"""
Configuration for rectpart.

Settings come from the environment (a .env file is honoured through
python-dotenv) and named sample polygons come from shapes.yaml.
"""

import logging
import os
from dataclasses import dataclass
from pathlib import Path

import yaml
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

#############################
# CONFIGURATION
#############################

DEFAULT_ORACLE_CELLS = 36
DEFAULT_AT_MAX_VERTICES = 40
DEFAULT_LOG_LEVEL = "WARNING"
SHAPES_FILE = Path(__file__).resolve().parent.parent / "shapes.yaml"

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"


@dataclass(frozen=True)
class Settings:
    assertions: bool = False
    oracle_cells: int = DEFAULT_ORACLE_CELLS
    at_max_vertices: int = DEFAULT_AT_MAX_VERTICES
    log_level: str = DEFAULT_LOG_LEVEL


def _env_flag(name):
    return os.getenv(name, "").strip().lower() in ("1", "true", "yes", "on")


def _env_int(name, default):
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        print(f"Warning: {name}={raw!r} is not an integer, using {default}.")
        return default
    return value if value > 0 else default


def load_settings():
    """Read the current environment into a Settings record."""
    return Settings(
        assertions=_env_flag("RECTPART_ASSERT"),
        oracle_cells=_env_int("RECTPART_ORACLE_CELLS", DEFAULT_ORACLE_CELLS),
        at_max_vertices=_env_int("RECTPART_AT_MAX_VERTICES", DEFAULT_AT_MAX_VERTICES),
        log_level=os.getenv("RECTPART_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper(),
    )


def assertions_enabled():
    return _env_flag("RECTPART_ASSERT")


#############################
# LOGGING
#############################

def get_logger(name, level=None):
    """Return a module logger, attaching the package handler on first use."""
    root = logging.getLogger("rectpart")
    if not root.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
        root.setLevel(load_settings().log_level)
    if level is not None:
        root.setLevel(level)
    return logging.getLogger(name)


#############################
# SAMPLE SHAPES
#############################

def load_shapes(path=None):
    """Load the named polygons of shapes.yaml as a dict id -> record."""
    path = Path(path) if path else SHAPES_FILE
    with open(path, "r") as file:
        data = yaml.safe_load(file) or {}
    shapes = {}
    for record in data.get("shapes", []):
        if "id" not in record or "outer" not in record:
            print(f"Warning: skipping shape record without id/outer: {record}")
            continue
        shapes[record["id"]] = record
    return shapes
