import pytest

from pgroup_verify.config.config import (
    Config,
    DevelopmentConfig,
    ProductionConfig,
    TestingConfig,
    get_config,
)


def test_get_config_reads_environment():
    assert isinstance(get_config(), TestingConfig)


@pytest.mark.parametrize(
    "name,expected",
    [
        ("development", DevelopmentConfig),
        ("testing", TestingConfig),
        ("PRODUCTION", ProductionConfig),
        ("staging", DevelopmentConfig),
    ],
)
def test_get_config_by_name(name, expected):
    assert type(get_config(name)) is expected


def test_defaults():
    assert Config.get_seed() == 0
    assert Config.get_budget_nodes() == 10**9
    assert Config.get_budget_seconds() == 600.0
    assert Config.get_log_file() is None
    assert TestingConfig.get_sanity_trials() == 5


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("PGV_SEED", "17")
    monkeypatch.setenv("PGV_BUDGET_SECONDS", "2.5")
    monkeypatch.setenv("PGV_WORKERS", "")
    monkeypatch.setenv("PGV_LOG_FILE", "/tmp/pgv.log")
    assert Config.get_seed() == 17
    assert Config.get_budget_seconds() == 2.5
    assert Config.get_workers() == 1
    assert Config.get_log_file() == "/tmp/pgv.log"


def test_production_rejects_non_positive_budget(monkeypatch):
    monkeypatch.setenv("PGV_BUDGET_NODES", "0")
    with pytest.raises(ValueError, match="PGV_BUDGET_NODES"):
        get_config("production")


def test_production_accepts_defaults():
    assert isinstance(get_config("production"), ProductionConfig)
