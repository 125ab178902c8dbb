import logging
import os
from typing import Any, Dict, List, Mapping, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..core.config import settings
from ..core.errors import ConfigError

logger = logging.getLogger(__name__)

FORMATS = ("json", "text")

# Windows pinned by a named profile, per identity id; flags still win
PROFILES: Dict[str, Dict[str, Dict[str, int]]] = {
    "desk": {
        "qtno": {"K": 3, "degree": 8, "u_window": 3},
        "fnm-forms": {"n": 3, "m": 3, "degree": 4, "def_nm": 4},
        "fnm-symmetry": {"n": 3, "m": 3, "degree": 4},
        "fnm-polynomiality": {"n": 3, "m": 3, "degree": 4},
        "dp": {"K": 6, "p_max": 3, "degree": 8},
        "cp": {"K": 6, "p_max": 3, "degree": 8},
        "elliptic-no": {"K": 2, "p_max": 1, "degree": 6},
    },
}

# config-file keys mirror the long flags
FILE_KEYS = {
    "id": "ids",
    "all": "all",
    "tmax": "K",
    "qt-deg": "degree",
    "u-window": "u_window",
    "p-max": "p_max",
    "profile": "profile",
    "jobs": "jobs",
    "out": "out",
    "format": "format",
    "cache-dir": "cache_dir",
}


class RunConfig(BaseModel):
    """Validated configuration of one ``verify`` run"""

    ids: List[str] = Field(default_factory=list)
    all: bool = False
    K: Optional[int] = None
    degree: Optional[int] = None
    u_window: Optional[int] = None
    p_max: Optional[int] = None
    profile: Optional[str] = None
    jobs: int = settings.DEFAULT_JOBS
    out: Optional[str] = None
    format: str = settings.DEFAULT_FORMAT
    cache_dir: Optional[str] = None

    @field_validator("K", "degree", "u_window", "p_max")
    @classmethod
    def nonnegative(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 0:
            raise ValueError("windows must be nonnegative")
        return v

    @field_validator("jobs")
    @classmethod
    def positive_jobs(cls, v: int) -> int:
        if v < 1:
            raise ValueError("jobs must be at least 1")
        return v

    @field_validator("format")
    @classmethod
    def known_format(cls, v: str) -> str:
        if v not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        return v

    @field_validator("profile")
    @classmethod
    def known_profile(cls, v: Optional[str]) -> Optional[str]:
        if v is not None and v not in PROFILES:
            raise ValueError(f"unknown profile {v}; expected one of {sorted(PROFILES)}")
        return v

    @property
    def overrides(self) -> Dict[str, Optional[int]]:
        """Window overrides given on the command line or in the config file"""
        return {"K": self.K, "degree": self.degree, "u_window": self.u_window, "p_max": self.p_max}

    def overrides_for(self, identity_id: str) -> Dict[str, Optional[int]]:
        """Profile windows for ``identity_id`` with the explicit overrides on top"""
        merged: Dict[str, Optional[int]] = {}
        if self.profile:
            merged.update(PROFILES[self.profile].get(identity_id, {}))
        merged.update({k: v for k, v in self.overrides.items() if v is not None})
        return merged


def read_config_file(path: str) -> Dict[str, Any]:
    """``key=value`` lines keyed like the long flags; unknown keys are an error"""
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    values: Dict[str, Any] = {}
    for key, raw in dotenv_values(path).items():
        name = key.strip().lstrip("-")
        if name not in FILE_KEYS:
            raise ConfigError(f"unknown config key {key} in {path}")
        field = FILE_KEYS[name]
        if field == "ids":
            values[field] = [x.strip() for x in (raw or "").split(",") if x.strip()]
        elif field == "all":
            values[field] = (raw or "").lower() in ("1", "true", "yes")
        else:
            values[field] = raw
    logger.debug("Read %d settings from %s", len(values), path)
    return values


def build_run_config(flags: Mapping[str, Any], config_file: Optional[str] = None) -> RunConfig:
    """Flags over config file over environment defaults"""
    values = read_config_file(config_file) if config_file else {}
    values.update({k: v for k, v in flags.items() if v is not None and v != [] and v is not False})
    try:
        return RunConfig(**values)
    except ValidationError as e:
        raise ConfigError(str(e)) from e


class Report(BaseModel):
    """Outcome of verifying one identity"""

    model_config = ConfigDict(populate_by_name=True)

    id: str
    status: str
    passed: bool = Field(alias="pass")
    windows: Dict[str, int]
    checks: int = 0
    first_diff: Optional[Dict[str, str]] = None
    elapsed_ms: int = 0
    engine_version: str = settings.ENGINE_VERSION
    notes: Optional[str] = None
    error: Optional[str] = None

    def as_json(self) -> Dict[str, Any]:
        return self.model_dump(by_alias=True, exclude_none=True)

    def to_text(self) -> str:
        verdict = "ERROR" if self.error else ("PASS" if self.passed else "FAIL")
        windows = " ".join(f"{k}={v}" for k, v in self.windows.items())
        line = f"{verdict:5} {self.id} [{self.status}] {windows} ({self.checks} checks, {self.elapsed_ms} ms)"
        if self.first_diff:
            d = self.first_diff
            line += f"\n      {d['label']}: [{d['monomial']}] lhs={d['lhs']} rhs={d['rhs']}"
        if self.error:
            line += f"\n      {self.error}"
        return line
