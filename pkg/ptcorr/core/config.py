import math
import re
from pathlib import Path
from typing import Any

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from .errors import ConfigError

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

_ANGLE_RE = re.compile(
    r"^(?P<sign>[+-]?)(?P<num>\d*\.?\d*)\*?pi(?:/(?P<den>\d*\.?\d+))?$"
)


def parse_angle(value: Any) -> float:
    """Parse a float or a `pi/6`-style fraction of pi (radians)."""
    if isinstance(value, (int, float)):
        return float(value)
    text = str(value).strip().lower().replace(" ", "")
    m = _ANGLE_RE.match(text)
    if m:
        num = float(m.group("num")) if m.group("num") not in ("", ".") else 1.0
        den = float(m.group("den")) if m.group("den") else 1.0
        if den == 0:
            raise ValueError(f"zero denominator in angle '{value}'")
        sign = -1.0 if m.group("sign") == "-" else 1.0
        return sign * num * math.pi / den
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"cannot parse angle '{value}'") from None


class Tolerances(BaseModel):
    """Every numerical tolerance of the library, in one record.

    Tests and the validation suite import the same instance (`TOL`).
    """

    model_config = ConfigDict(frozen=True)

    # state validation
    hermitian: float = 1e-10
    trace: float = 1e-10
    min_eigenvalue: float = 1e-10

    # linear algebra
    hermitian_eig_input: float = 1e-8
    symmetric_input: float = 1e-10
    psd_reject: float = 1e-8
    sqrt_floor: float = 1e-14
    concurrence_clamp: float = 1e-14

    # measures
    x_zero: float = 1e-9
    oracle_forced: float = 1e-12
    oracle_search: float = 1e-5
    oracle_angle: float = 1e-8
    fidelity_routes: float = 1e-8

    # cross-checks
    dual_route: float = 1e-10
    closed_form: float = 1e-12
    closed_form_entry: float = 1e-10
    periodicity: float = 1e-9
    monotone_slack: float = 1e-9
    local_invariance: float = 1e-9

    # dynamics
    normalization_floor: float = 1e-14


TOL = Tolerances()


# Keys accepted in a `--config` file that differ from the field names.
_FILE_KEY_ALIASES = {
    "min": "vmin",
    "max": "vmax",
    "out-csv": "out_csv",
    "out-svg": "out_svg",
    "t-min": "t_min",
    "t-max": "t_max",
    "input-state": "input_state",
    "no-timestamp": "no_timestamp",
}


class Settings(BaseSettings):
    # model parameters (defaults of the fig recipes)
    J: float = 4.5
    gamma: float = 0.05
    B: float = 1.5
    T: float = 1.0

    # PT-symmetric operation
    f: float = 1.0
    phi: float = math.pi / 6
    t: float = 0.0
    t_min: float | None = None
    t_max: float | None = None

    # sweep
    var: str | None = None
    vmin: float | None = None
    vmax: float | None = None
    steps: int | None = None
    measures: str | None = None
    input_state: str | None = None

    # output
    out_csv: str | None = None
    out_svg: str | None = None
    no_timestamp: bool = False

    # runtime
    workers: int = 0  # 0 -> os.cpu_count()
    log_level: str = "INFO"
    oracle_grid: int = 10_000
    pt_points_per_period: int = 500

    model_config = SettingsConfigDict(
        case_sensitive=True,
        extra="forbid",
    )

    @field_validator("phi", "t", "t_min", "t_max", mode="before")
    @classmethod
    def _angle(cls, v):
        if v is None:
            return v
        return parse_angle(v)

    @field_validator("log_level", mode="before")
    @classmethod
    def _level(cls, v):
        level = str(v).strip().upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of {', '.join(LOG_LEVELS)}")
        return level

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # No environment variables: runs are reproducible from flags + config file.
        return (init_settings,)


def read_config_file(path: str | Path) -> dict[str, str]:
    """Read `key = value` lines (`#` comments) into Settings field names."""
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")

    values: dict[str, str] = {}
    for key, value in dotenv_values(p).items():
        if value is None:
            raise ConfigError(f"config line without value: '{key}'")
        name = _FILE_KEY_ALIASES.get(key.strip(), key.strip().replace("-", "_"))
        values[name] = value
    return values


def load_settings(config_path: str | Path | None = None, **overrides: Any) -> Settings:
    """Build Settings with precedence: explicit overrides > config file > defaults.

    Overrides whose value is None are treated as "not given".
    """
    merged: dict[str, Any] = {}
    if config_path:
        merged.update(read_config_file(config_path))
    merged.update({k: v for k, v in overrides.items() if v is not None})

    try:
        return Settings(**merged)
    except ValidationError as e:
        raise ConfigError(str(e)) from e

