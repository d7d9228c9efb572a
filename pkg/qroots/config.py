"""
Process settings and the per-run key-value configuration file.
"""

from functools import lru_cache
from math import gcd
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .errors import ConfigError

# index d = |Λ/Q| per Cartan type
LATTICE_INDEX: Dict[str, int] = {"A1": 2, "A2": 3, "B2": 2, "G2": 1}

CONFIG_KEYS = ("type", "w0_word", "ell", "ht_bound", "depth", "chart_level", "seed", "output")


class QrootsSettings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="QROOTS_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    log_level: str = Field(default="INFO")
    enable_b2: bool = Field(default=False)

    default_ht_bound: int = Field(default=6)
    default_depth: int = Field(default=4)
    default_chart_level: int = Field(default=2)
    default_seed: int = Field(default=0)


@lru_cache()
def get_settings() -> QrootsSettings:
    return QrootsSettings()


def check_ell(cartan_type: str, ell: int) -> None:
    """Reject ell violating the root-of-unity conditions, naming the condition."""
    if ell <= 1:
        raise ConfigError(f"ell must be > 1, got {ell}")
    if ell % 2 == 0:
        raise ConfigError(f"condition (a) violated: ell must be odd, got {ell}")
    if cartan_type == "G2" and gcd(ell, 3) != 1:
        raise ConfigError(f"condition (b) violated: gcd(ell, 3) must be 1 for G2, got {ell}")
    d = LATTICE_INDEX.get(cartan_type, 1)
    if gcd(ell, d) != 1:
        raise ConfigError(
            f"condition (c) violated: gcd(ell, d) must be 1, got ell={ell}, d={d}"
        )


class RunConfig(BaseModel):
    """Parsed contents of a CLI config file."""

    type: str = "A1"
    w0_word: Optional[List[int]] = None
    ell: int = 3
    ht_bound: int = Field(default_factory=lambda: get_settings().default_ht_bound)
    depth: int = Field(default_factory=lambda: get_settings().default_depth)
    chart_level: int = Field(default_factory=lambda: get_settings().default_chart_level)
    seed: int = Field(default_factory=lambda: get_settings().default_seed)
    output: Optional[str] = None

    @field_validator("type")
    @classmethod
    def _known_type(cls, value: str) -> str:
        value = value.strip().upper()
        if value not in ("A1", "A2", "B2"):
            raise ValueError(f"unsupported type {value!r}")
        if value == "B2" and not get_settings().enable_b2:
            raise ValueError("type B2 requires QROOTS_ENABLE_B2=1")
        return value

    @field_validator("w0_word", mode="before")
    @classmethod
    def _split_word(cls, value: object) -> object:
        if isinstance(value, str):
            parts = value.replace(",", " ").split()
            return [int(p) for p in parts]
        return value

    @field_validator("ht_bound", "depth", "chart_level")
    @classmethod
    def _non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError("must be non-negative")
        return value

    @model_validator(mode="after")
    def _check_root_of_unity(self) -> "RunConfig":
        check_ell(self.type, self.ell)
        return self

    @property
    def word0(self) -> Optional[tuple]:
        """The w0 word as 0-based indices, if one was given."""
        if self.w0_word is None:
            return None
        return tuple(i - 1 for i in self.w0_word)


def parse_config_text(text: str) -> RunConfig:
    """Parse plain `key = value` text into a RunConfig."""
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        sep = "=" if "=" in line else ":"
        if sep not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split(sep, 1))
        key = key.lower()
        if key not in CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value
    try:
        return RunConfig(**values)
    except ValidationError as e:
        raise ConfigError(_summarize(e)) from e


def load_config(path: str | Path) -> RunConfig:
    """Read and validate a config file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    return parse_config_text(text)


def _summarize(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        loc = ".".join(str(x) for x in item.get("loc", ())) or "config"
        parts.append(f"{loc}: {item.get('msg')}")
    return "; ".join(parts)
