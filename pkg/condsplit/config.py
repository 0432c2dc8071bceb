"""
Runtime settings and logging bootstrap.
Values come from the environment (optionally a .env file in the project root).
"""

import os
from functools import cache

import logfire
from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()


class Settings(BaseModel):
    """Tunable limits shared by the library, the CLI and the service."""

    max_atoms: int = Field(default=20, ge=1)
    formula_cap: int = Field(default=3, ge=0)
    cinf_max_candidates: int = Field(default=2_000_000, ge=1)
    violation_limit: int = Field(default=20, ge=1)


_ENVIRONMENT = {
    "max_atoms": "CONDSPLIT_MAX_ATOMS",
    "formula_cap": "CONDSPLIT_FORMULA_CAP",
    "cinf_max_candidates": "CONDSPLIT_CINF_MAX_CANDIDATES",
    "violation_limit": "CONDSPLIT_VIOLATION_LIMIT",
}


def _read_int(variable: str) -> int | None:
    raw = os.getenv(variable)
    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(
            f"The {variable} environment variable must be an integer, got {raw!r}. "
            "Please fix it in your environment or in the .env file in the project root."
        ) from None
    if value < 0:
        raise ValueError(f"The {variable} environment variable must not be negative.")
    return value


@cache
def get_settings() -> Settings:
    """Load settings once per process; call get_settings.cache_clear() to reload."""
    values = {}
    for field, variable in _ENVIRONMENT.items():
        value = _read_int(variable)
        if value is not None:
            values[field] = value
    return Settings(**values)


def override_max_atoms(max_atoms: int) -> None:
    """Replace the signature cap for the rest of the process (CLI --max-atoms)."""
    os.environ["CONDSPLIT_MAX_ATOMS"] = str(max_atoms)
    get_settings.cache_clear()


def configure_logging() -> None:
    # Skip logfire configuration in testing/eval environments
    if not os.getenv("TESTING") and not os.getenv("LOGFIRE_IGNORE_NO_CONFIG"):
        logfire.configure(service_name="condsplit", send_to_logfire="if-token-present")
