"""
Service container for dependency injection.

Holds the repositories and services shared by the command line entry
points; tests swap registrations to point at temporary data directories.
"""

from typing import Any, Callable, Dict, Optional, TypeVar
import logging

from ..config.config import Config, get_config

logger = logging.getLogger(__name__)

T = TypeVar("T")


class ServiceContainer:
    """Registry of singletons and lazily built factories."""

    def __init__(self):
        self._services: Dict[str, Any] = {}
        self._factories: Dict[str, Callable[[], Any]] = {}

    def register_singleton(self, name: str, instance: Any) -> None:
        self._services[name] = instance
        logger.debug(f"Registered singleton: {name}")

    def register_factory(self, name: str, factory: Callable[[], Any]) -> None:
        """The factory runs on first `get`; its result is cached."""
        self._factories[name] = factory
        logger.debug(f"Registered factory: {name}")

    def get(self, name: str) -> Any:
        """
        Raises:
            KeyError: If nothing is registered under the name
        """
        if name in self._services:
            return self._services[name]
        if name in self._factories:
            instance = self._factories[name]()
            self._services[name] = instance
            return instance
        raise KeyError(f"Service '{name}' not registered")

    def get_or_none(self, name: str) -> Optional[Any]:
        try:
            return self.get(name)
        except KeyError:
            return None

    def has(self, name: str) -> bool:
        return name in self._services or name in self._factories

    def clear(self) -> None:
        self._services.clear()
        self._factories.clear()


_container: Optional[ServiceContainer] = None


def get_container() -> ServiceContainer:
    global _container
    if _container is None:
        _container = ServiceContainer()
    return _container


def init_services(
    config: Optional[Config] = None, data_dir: Optional[str] = None
) -> ServiceContainer:
    """
    Register configuration, repositories and services.

    Args:
        config: Configuration; defaults to the PGV_ENV environment
        data_dir: Override for the bundled data directory
    """
    from ..repositories.factory import create_repository_container
    from ..services.family_service import FamilyFactory
    from ..services.verification_service import VerificationService

    container = get_container()
    container.clear()
    config = config or get_config()
    container.register_singleton("config", config)
    for name, repository in create_repository_container(data_dir).items():
        container.register_singleton(name, repository)
    container.register_singleton("family_factory", FamilyFactory)
    container.register_factory(
        "verification_service",
        lambda: VerificationService(
            container.get("config"),
            container.get("presentation_repository"),
            container.get("fixture_repository"),
            container.get("family_factory"),
        ),
    )
    logger.info("Services initialized")
    return container
