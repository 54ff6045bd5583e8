import pytest

from pgroup_verify.config.config import TestingConfig
from pgroup_verify.services.family_service import (
    family_a,
    family_b,
    family_c,
    heisenberg,
)
from pgroup_verify.services.structure_service import StructureAnalyzer


@pytest.fixture(autouse=True)
def testing_env(monkeypatch):
    """Keep a developer's .env or shell settings out of the tests."""
    for name in (
        "PGV_SEED",
        "PGV_BUDGET_NODES",
        "PGV_BUDGET_SECONDS",
        "PGV_WORKERS",
        "PGV_ENUMERATION_CAP",
        "PGV_CENTER_CAP",
        "PGV_HOM_CAP",
        "PGV_ORACLE_CAP",
        "PGV_SANITY_TRIALS",
        "PGV_LOG_FILE",
    ):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("PGV_ENV", "testing")


@pytest.fixture
def config():
    return TestingConfig()


@pytest.fixture(scope="session")
def group_a():
    return family_a(3, 4)


@pytest.fixture(scope="session")
def group_b():
    return family_b(3)


@pytest.fixture(scope="session")
def group_c():
    return family_c(3)


@pytest.fixture(scope="session")
def heis():
    return heisenberg(3)


@pytest.fixture(scope="session")
def analyzer_a(group_a):
    return StructureAnalyzer(group_a)


@pytest.fixture(scope="session")
def analyzer_b(group_b):
    return StructureAnalyzer(group_b)


@pytest.fixture(scope="session")
def analyzer_c(group_c):
    return StructureAnalyzer(group_c)
