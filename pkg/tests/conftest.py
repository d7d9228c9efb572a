"""
Pytest configuration and fixtures.
"""

import pytest

from qroots.config import RunConfig, get_settings
from qroots.qscalars import RootOfUnity
from qroots.rootdata import build_root_datum
from qroots.uqalg import QuantumGroup


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Settings are cached per process; tests that set QROOTS_* see their own values."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(scope="session")
def a1():
    return build_root_datum("A1")


@pytest.fixture(scope="session")
def a2():
    return build_root_datum("A2")


@pytest.fixture(scope="session")
def qg1(a1):
    return QuantumGroup(a1, 6)


@pytest.fixture(scope="session")
def qg2(a2):
    return QuantumGroup(a2, 4)


@pytest.fixture(scope="session")
def rou3(a1):
    """ℓ = 3 for A1 (d = 2)."""
    return RootOfUnity(3, a1.index, "A1")


@pytest.fixture(scope="session")
def rou5_a2(a2):
    """ℓ = 5 for A2 (d = 3)."""
    return RootOfUnity(5, a2.index, "A2")


@pytest.fixture
def cfg3():
    return RunConfig(type="A1", ell=3)


@pytest.fixture
def config_file(tmp_path):
    """Write a key = value config and return its path."""

    def write(text: str = "type = A1\nell = 3\n"):
        path = tmp_path / "run.cfg"
        path.write_text(text, encoding="utf-8")
        return path

    return write
