"""
This file contains shared fixtures for all tests.
"""
from pathlib import Path
from typing import Any, Dict

import pytest
from click.testing import CliRunner

from fpsym.catalog.generators import by_id, load_point_generators, load_potential_generators
from fpsym.catalog.table import commutator_table
from fpsym.model.params import SYMBOLIC, FpeParams

FPSYM_ENV = (
    "FPSYM_CONFIG_PATH",
    "FPSYM_A1",
    "FPSYM_A2",
    "FPSYM_TOL",
    "FPSYM_SEED",
    "FPSYM_FORMAT",
)


@pytest.fixture(autouse=True)
def isolated_config(monkeypatch: Any, tmp_path: Path) -> Path:
    """
    Points the default config path at an empty temporary directory and clears
    FPSYM_* variables, so no test reads the user's configuration.
    """
    for name in FPSYM_ENV:
        monkeypatch.delenv(name, raising=False)
    config_path = tmp_path / "fpsym" / "config.yaml"
    monkeypatch.setenv("FPSYM_CONFIG_PATH", str(config_path))
    return config_path


@pytest.fixture
def symbolic() -> FpeParams:
    return SYMBOLIC


@pytest.fixture
def unit_params() -> FpeParams:
    """(a1, a2) = (1, 1)."""
    return FpeParams(1, 1)


@pytest.fixture(scope="session")
def point_generators() -> Dict[str, Any]:
    """V1..V6 and Valpha, verified once per session."""
    return by_id(load_point_generators(SYMBOLIC))


@pytest.fixture(scope="session")
def potential_generators() -> Dict[str, Any]:
    """W1..W6 and Wbeta, verified once per session."""
    return by_id(load_potential_generators(SYMBOLIC))


@pytest.fixture(scope="session")
def table(point_generators: Dict[str, Any]):
    return commutator_table(point_generators.values())


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()
