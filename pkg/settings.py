"""
Settings
Environment-driven configuration for homsplit
"""

import os
from functools import lru_cache
from typing import Literal

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()

Profile = Literal["small", "standard"]
LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class Settings(BaseModel):
    """Defaults for seeds, search bounds and logging"""
    seed: int = Field(default=0, ge=0, description="Seed for every randomized suite")
    log_level: LogLevel = Field(default="WARNING", description="Level for the stderr log handler")
    search_radius: int = Field(default=6, ge=0, description="Conjugator radius for standard forms")
    inner_bound: int = Field(default=8, ge=0, description="Exponent bound for the inner search")
    profile: Profile = Field(default="small", description="Scale of the acceptance suite")
    data_dir: str = Field(default="test_data", description="Directory holding example inputs")


def load_settings() -> Settings:
    """
    Build settings from HOMSPLIT_* environment variables

    Raises:
        pydantic.ValidationError: If a variable holds an invalid value
    """
    values = {
        "seed": os.environ.get("HOMSPLIT_SEED"),
        "log_level": os.environ.get("HOMSPLIT_LOG_LEVEL", "").upper() or None,
        "search_radius": os.environ.get("HOMSPLIT_SEARCH_RADIUS"),
        "inner_bound": os.environ.get("HOMSPLIT_INNER_BOUND"),
        "profile": os.environ.get("HOMSPLIT_PROFILE"),
        "data_dir": os.environ.get("HOMSPLIT_DATA_DIR"),
    }
    return Settings(**{key: value for key, value in values.items() if value is not None})


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()
