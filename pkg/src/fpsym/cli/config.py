import copy
import logging
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import yaml

from ..errors import ConfigError, FpsymError
from ..expr.const import EQUALITY_SAMPLES, EQUALITY_TOLERANCE
from ..model.params import FpeParams
from ..numeric.grid import GridSpec
from ..numeric.residual import DEFAULT_TOLERANCE

logger = logging.getLogger(__name__)

CONFIG_PATH_ENV = "FPSYM_CONFIG_PATH"
DEFAULT_CONFIG_DIR = Path.home() / ".config" / "fpsym"
DEFAULT_CONFIG_PATH = DEFAULT_CONFIG_DIR / "config.yaml"

TEXT = "text"
STRUCTURED = "structured"
FORMATS = (TEXT, STRUCTURED)

DEFAULT_CONFIG: Dict[str, Any] = {
    "a1": "symbolic",
    "a2": "symbolic",
    "grid": GridSpec().to_dict(),
    "tolerances": {
        "numeric": DEFAULT_TOLERANCE,
        "equality": EQUALITY_TOLERANCE,
    },
    "seed": 0,
    "format": TEXT,
    "samples": EQUALITY_SAMPLES,
}

# Environment variable -> (section, key); section None means top level.
ENV_OVERRIDES = {
    "FPSYM_A1": (None, "a1"),
    "FPSYM_A2": (None, "a2"),
    "FPSYM_TOL": ("tolerances", "numeric"),
    "FPSYM_SEED": (None, "seed"),
    "FPSYM_FORMAT": (None, "format"),
}


@dataclass(frozen=True)
class RunConfig:
    """Parameter bindings, grid, tolerances and output settings for one run."""

    params: FpeParams = field(default_factory=FpeParams)
    grid: GridSpec = field(default_factory=GridSpec)
    tolerance: float = DEFAULT_TOLERANCE
    equality_tolerance: float = EQUALITY_TOLERANCE
    seed: int = 0
    format: str = TEXT
    samples: int = EQUALITY_SAMPLES
    strict: bool = False

    @property
    def structured(self) -> bool:
        return self.format == STRUCTURED

    def numeric_params(self, **fixed) -> FpeParams:
        """Parameters for a numeric check: fixed values win, symbolic ones default to 1."""
        values = {"a1": self.params.a1, "a2": self.params.a2, **fixed}
        for name in ("a1", "a2"):
            if not getattr(values[name], "is_number", True):
                logger.info(f"{name} is symbolic; using {name}=1 for numeric checks")
                values[name] = 1
        return FpeParams(values["a1"], values["a2"])

    def echo(self) -> Dict[str, object]:
        return {
            **self.params.describe(),
            "grid": self.grid.to_dict(),
            "tolerances": {"numeric": self.tolerance, "equality": self.equality_tolerance},
            "seed": self.seed,
            "samples": self.samples,
            "strict": self.strict,
        }


def get_default_config_path() -> Path:
    return Path(os.environ.get(CONFIG_PATH_ENV, str(DEFAULT_CONFIG_PATH))).expanduser()


def deep_merge(source, destination):
    for key, value in source.items():
        if isinstance(value, dict):
            node = destination.setdefault(key, {})
            deep_merge(value, node)
        else:
            destination[key] = value
    return destination


def _read_file(config_path: Path) -> Dict[str, Any]:
    try:
        with open(config_path, "r") as f:
            data = yaml.safe_load(f)
    except FileNotFoundError:
        logger.info(f"Config file not found at {config_path}, using default values.")
        return {}
    except yaml.YAMLError as e:
        logger.error(f"Error loading configuration from {config_path}: {e}")
        raise ConfigError(f"Malformed config file {config_path}: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {config_path} must hold a mapping")
    logger.info(f"Loaded configuration from {config_path}")
    return data


def _apply_env(config_data: Dict[str, Any], environ: Mapping[str, str]) -> Dict[str, Any]:
    for env_key, (section, key) in ENV_OVERRIDES.items():
        if env_key not in environ:
            continue
        target = config_data.setdefault(section, {}) if section else config_data
        target[key] = environ[env_key]
    return config_data


def _build(config_data: Mapping[str, Any]) -> RunConfig:
    try:
        params = FpeParams(str(config_data["a1"]), str(config_data["a2"]))
        grid_data = config_data.get("grid") or {}
        grid = GridSpec(
            **{k: float(v) for k, v in grid_data.items() if k != "levels"},
            levels=int(grid_data.get("levels", GridSpec().levels)),
        )
        tolerances = config_data.get("tolerances") or {}
        run_config = RunConfig(
            params=params,
            grid=grid,
            tolerance=float(tolerances.get("numeric", DEFAULT_TOLERANCE)),
            equality_tolerance=float(tolerances.get("equality", EQUALITY_TOLERANCE)),
            seed=int(config_data.get("seed", 0)),
            format=str(config_data.get("format", TEXT)),
            samples=int(config_data.get("samples", EQUALITY_SAMPLES)),
        )
    except ConfigError:
        raise
    except (FpsymError, TypeError, ValueError) as e:
        raise ConfigError(f"Invalid configuration: {e}") from e
    if run_config.format not in FORMATS:
        raise ConfigError(f"Unknown output format '{run_config.format}', expected one of {FORMATS}")
    if not run_config.tolerance > 0:
        raise ConfigError(f"Numeric tolerance must be positive, got {run_config.tolerance}")
    return run_config


def load_config(
    config_path: Optional[Path] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> RunConfig:
    """
    Defaults, then the YAML file, then ``FPSYM_*`` environment variables, then
    ``overrides`` (CLI flags, ``None`` values ignored).

    Raises:
        ConfigError: On a malformed file, a2 = 0, a bad grid or an unknown format.
    """
    config_data = copy.deepcopy(DEFAULT_CONFIG)
    path = config_path if config_path else get_default_config_path()
    user_config = _read_file(path)
    if user_config:
        config_data = deep_merge(user_config, config_data)
    config_data = _apply_env(config_data, os.environ if environ is None else environ)

    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    grid_text = overrides.pop("grid", None)
    strict = bool(overrides.pop("strict", False))
    if "tolerance" in overrides:
        config_data.setdefault("tolerances", {})["numeric"] = overrides.pop("tolerance")
    config_data.update(overrides)

    run_config = _build(config_data)
    if grid_text:
        try:
            run_config = replace(run_config, grid=GridSpec.parse(grid_text))
        except FpsymError as e:
            raise ConfigError(str(e)) from e
    return replace(run_config, strict=strict)
