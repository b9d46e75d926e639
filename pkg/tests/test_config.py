import os
from pathlib import Path
from unittest.mock import mock_open, patch

import pytest
import sympy as sp
import yaml

from fpsym.cli.config import (
    DEFAULT_CONFIG_PATH,
    STRUCTURED,
    TEXT,
    RunConfig,
    get_default_config_path,
    load_config,
)
from fpsym.errors import ConfigError
from fpsym.model.params import FpeParams
from fpsym.numeric.grid import GridSpec
from fpsym.numeric.residual import DEFAULT_TOLERANCE
from tests.helpers import A1, A2


def test_config_defaults_when_no_file():
    """Verify config uses defaults when the config file is not found."""
    with patch.dict(os.environ, {}, clear=True):
        with patch("builtins.open", side_effect=FileNotFoundError) as mock_file:
            config = load_config()
            assert config.params.a1 == A1
            assert config.params.a2 == A2
            assert config.grid == GridSpec()
            assert config.tolerance == DEFAULT_TOLERANCE
            assert config.seed == 0
            assert config.format == TEXT
            assert config.strict is False
            mock_file.assert_called_once_with(DEFAULT_CONFIG_PATH, "r")


def test_config_loads_from_file():
    """Verify config correctly loads from a YAML file."""
    config_data = {
        "a1": 1,
        "a2": "1/2",
        "grid": {"h": 0.05, "levels": 4},
        "tolerances": {"numeric": 1e-5},
        "seed": 11,
        "format": "structured",
    }
    mock_content = yaml.dump(config_data)

    with patch.dict(os.environ, {}, clear=True):
        with patch("builtins.open", mock_open(read_data=mock_content)):
            config = load_config()
            assert config.params == FpeParams(1, sp.Rational(1, 2))
            assert config.grid.h == 0.05
            assert config.grid.levels == 4
            assert config.grid.x0 == GridSpec().x0
            assert config.tolerance == 1e-5
            assert config.seed == 11
            assert config.structured


def test_config_loads_from_env_var_path():
    """Verify config respects FPSYM_CONFIG_PATH env var."""
    mock_content = yaml.dump({"a2": 2})
    custom_path = "/tmp/custom_fpsym.yaml"

    with patch.dict(os.environ, {"FPSYM_CONFIG_PATH": custom_path}, clear=True):
        assert get_default_config_path() == Path(custom_path)
        with patch("builtins.open", mock_open(read_data=mock_content)) as mock_file:
            config = load_config()
            assert config.params.a2 == 2
            mock_file.assert_called_once_with(Path(custom_path), "r")


def test_config_explicit_path_wins(tmp_path):
    """An explicit --config path is read instead of the environment's."""
    path = tmp_path / "explicit.yaml"
    path.write_text(yaml.dump({"a1": 3}))
    with patch.dict(os.environ, {"FPSYM_CONFIG_PATH": str(tmp_path / "other.yaml")}, clear=True):
        assert load_config(path).params.a1 == 3


def test_config_env_var_overrides():
    """Verify environment variables override config file values."""
    mock_content = yaml.dump({"a1": 1, "a2": 1, "seed": 5, "tolerances": {"numeric": 1e-5}})

    with patch.dict(
        os.environ,
        {
            "FPSYM_A2": "3",
            "FPSYM_TOL": "1e-4",
            "FPSYM_SEED": "7",
            "FPSYM_FORMAT": "structured",
        },
        clear=True,
    ):
        with patch("builtins.open", mock_open(read_data=mock_content)):
            config = load_config()
            assert config.params == FpeParams(1, 3)
            assert config.tolerance == 1e-4
            assert config.seed == 7
            assert config.format == STRUCTURED


def test_config_flags_override_env():
    """Verify flags override environment values, and unset flags are ignored."""
    environ = {"FPSYM_A2": "3", "FPSYM_SEED": "7"}
    with patch("builtins.open", side_effect=FileNotFoundError):
        config = load_config(
            overrides={"a2": "5", "tolerance": 1e-3, "seed": None, "strict": True},
            environ=environ,
        )
    assert config.params.a2 == 5
    assert config.tolerance == 1e-3
    assert config.seed == 7
    assert config.strict is True


def test_config_grid_flag():
    with patch("builtins.open", side_effect=FileNotFoundError):
        config = load_config(overrides={"grid": "-1,1,0.5,1.5,0.05,2"}, environ={})
    assert config.grid == GridSpec(-1, 1, 0.5, 1.5, 0.05, 2)


def test_config_falls_back_with_empty_file():
    """Verify config uses defaults when the config file is empty."""
    with patch.dict(os.environ, {}, clear=True):
        with patch("builtins.open", mock_open(read_data="")):
            assert load_config() == RunConfig()


@pytest.mark.parametrize(
    "overrides",
    [
        {"a2": "0"},
        {"a1": "one"},
        {"grid": "1,2,3"},
        {"grid": "-2,2,0.1,1.1,0,3"},
        {"tolerance": 0},
        {"format": "xml"},
    ],
)
def test_config_invalid_values(overrides):
    """Invalid parameters, grids, tolerances and formats are configuration errors."""
    with patch("builtins.open", side_effect=FileNotFoundError):
        with pytest.raises(ConfigError):
            load_config(overrides=overrides, environ={})


@pytest.mark.parametrize("content", ["a1: [", "- 1\n- 2\n"])
def test_config_malformed_file(content):
    with patch("builtins.open", mock_open(read_data=content)):
        with pytest.raises(ConfigError):
            load_config(environ={})


def test_numeric_params():
    """Symbolic parameters default to 1 for numeric checks; fixed values win."""
    assert RunConfig().numeric_params() == FpeParams(1, 1)
    assert RunConfig().numeric_params(a2=2) == FpeParams(1, 2)
    assert RunConfig(params=FpeParams(3, "symbolic")).numeric_params() == FpeParams(3, 1)


def test_echo():
    echoed = RunConfig(params=FpeParams(0, 2)).echo()
    assert echoed["a1"] == "0"
    assert echoed["a2"] == "2"
    assert echoed["grid"]["h"] == GridSpec().h
    assert echoed["strict"] is False
