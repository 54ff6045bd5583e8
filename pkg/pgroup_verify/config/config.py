"""
Configuration module for pgroup_verify.

Budgets, enumeration caps, seeds, worker counts and the log file are read
from PGV_* environment variables (a .env file is loaded first); command
line flags override them.
"""

import os
from typing import Optional
from dotenv import load_dotenv

load_dotenv()


def _int_env(name: str, default: int) -> int:
    value = os.environ.get(name)
    return int(value) if value not in (None, "") else default


def _float_env(name: str, default: float) -> float:
    value = os.environ.get(name)
    return float(value) if value not in (None, "") else default


class Config:
    """Base configuration class with common settings."""

    DEBUG: bool = False
    TESTING: bool = False

    SEED: int = 0
    # search nodes for a whole verification, shared by every pattern
    BUDGET_NODES: int = 10**9
    BUDGET_SECONDS: float = 600.0
    WORKERS: int = 1
    ENUMERATION_CAP: int = 5_000_000
    CENTER_CAP: int = 1_000_000
    HOM_CAP: int = 2**26
    ORACLE_CAP: int = 10_000
    SANITY_TRIALS: int = 20

    @classmethod
    def get_seed(cls) -> int:
        return _int_env("PGV_SEED", cls.SEED)

    @classmethod
    def get_budget_nodes(cls) -> int:
        return _int_env("PGV_BUDGET_NODES", cls.BUDGET_NODES)

    @classmethod
    def get_budget_seconds(cls) -> float:
        return _float_env("PGV_BUDGET_SECONDS", cls.BUDGET_SECONDS)

    @classmethod
    def get_workers(cls) -> int:
        return _int_env("PGV_WORKERS", cls.WORKERS)

    @classmethod
    def get_enumeration_cap(cls) -> int:
        return _int_env("PGV_ENUMERATION_CAP", cls.ENUMERATION_CAP)

    @classmethod
    def get_center_cap(cls) -> int:
        return _int_env("PGV_CENTER_CAP", cls.CENTER_CAP)

    @classmethod
    def get_hom_cap(cls) -> int:
        return _int_env("PGV_HOM_CAP", cls.HOM_CAP)

    @classmethod
    def get_oracle_cap(cls) -> int:
        return _int_env("PGV_ORACLE_CAP", cls.ORACLE_CAP)

    @classmethod
    def get_sanity_trials(cls) -> int:
        return _int_env("PGV_SANITY_TRIALS", cls.SANITY_TRIALS)

    @classmethod
    def get_log_file(cls) -> Optional[str]:
        """Path of the rotating log file, if file logging is wanted."""
        return os.environ.get("PGV_LOG_FILE") or None


class DevelopmentConfig(Config):
    """Development configuration."""

    DEBUG: bool = True


class ProductionConfig(Config):
    """Production configuration."""

    @classmethod
    def validate(cls) -> None:
        """
        Reject non-positive budgets and caps.

        Raises:
            ValueError: On the first invalid setting
        """
        checks = {
            "PGV_BUDGET_NODES": cls.get_budget_nodes(),
            "PGV_BUDGET_SECONDS": cls.get_budget_seconds(),
            "PGV_WORKERS": cls.get_workers(),
            "PGV_ENUMERATION_CAP": cls.get_enumeration_cap(),
            "PGV_CENTER_CAP": cls.get_center_cap(),
            "PGV_HOM_CAP": cls.get_hom_cap(),
            "PGV_ORACLE_CAP": cls.get_oracle_cap(),
        }
        for name, value in checks.items():
            if value <= 0:
                raise ValueError(f"{name} must be positive in production, got {value}")


class TestingConfig(Config):
    """Testing configuration."""

    DEBUG: bool = True
    TESTING: bool = True

    BUDGET_NODES: int = 2_000_000
    BUDGET_SECONDS: float = 60.0
    SANITY_TRIALS: int = 5


def get_config(environment: Optional[str] = None) -> Config:
    """
    Get configuration based on environment.

    Args:
        environment: Environment name (development, production, testing)

    Returns:
        Config: Configuration instance
    """
    if environment is None:
        environment = os.environ.get("PGV_ENV", "development")

    config_map = {
        "development": DevelopmentConfig,
        "production": ProductionConfig,
        "testing": TestingConfig,
    }

    config_class = config_map.get(environment.lower(), DevelopmentConfig)

    if environment.lower() == "production":
        config_class.validate()

    return config_class()
