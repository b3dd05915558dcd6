from functools import lru_cache
from os import environ as env
from pathlib import Path

from dotenv import load_dotenv
from jinja2 import Environment, FileSystemLoader
from pydantic import BaseModel, Field

from sparsecut.core.constants import (DEFAULT_DENSITY_LIST_CAP,
                                      DEFAULT_NODE_CAP, DEFAULT_PLANES_CAP,
                                      DEFAULT_POINT_CAP,
                                      DEFAULT_STABLE_SET_CAP)

_env_path = Path(env.get("SPARSECUT_ENV_FILE", Path.home() / ".env"))
_templates_dir = Path(__file__).parent / "templates"

load_dotenv(dotenv_path=_env_path, override=False)

DOT_ENV_PATH = _env_path
TEMPLATES_DIR = _templates_dir
_loader = FileSystemLoader(str(TEMPLATES_DIR.resolve().as_posix()))
JINJA_ENVIRONMENT = Environment(
    loader=_loader, autoescape=False, keep_trailing_newline=True
)


class Settings(BaseModel):
    """Caps and paths read from the environment."""

    point_cap: int = Field(
        DEFAULT_POINT_CAP, ge=1, description="Lattice size cap for point enumeration"
    )
    node_cap: int = Field(
        DEFAULT_NODE_CAP, ge=1, description="Node cap for mixed stable set enumeration"
    )
    stable_set_cap: int = Field(
        DEFAULT_STABLE_SET_CAP,
        ge=1,
        description="Cap on the number of enumerated mixed stable sets",
    )
    density_list_cap: int = Field(
        DEFAULT_DENSITY_LIST_CAP,
        ge=1,
        description="Support list size cap for corrected average density",
    )
    planes_cap: int = Field(
        DEFAULT_PLANES_CAP, ge=1, description="Cap on n^n for planes partitions"
    )
    log_level: str = Field("WARNING", description="Default logging level")
    data_dir: Path = Field(
        Path.home() / ".sparsecut", description="Directory of the results database"
    )


def _from_env() -> dict:
    mapping = {
        "point_cap": "SPARSECUT_POINT_CAP",
        "node_cap": "SPARSECUT_NODE_CAP",
        "stable_set_cap": "SPARSECUT_STABLE_SET_CAP",
        "density_list_cap": "SPARSECUT_DENSITY_LIST_CAP",
        "planes_cap": "SPARSECUT_PLANES_CAP",
        "log_level": "SPARSECUT_LOG_LEVEL",
        "data_dir": "SPARSECUT_DATA_DIR",
    }
    return {field: env[var] for field, var in mapping.items() if var in env}


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Return the process-wide settings, read once from the environment."""
    return Settings(**_from_env())
