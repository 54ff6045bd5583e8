"""
Application factory for pgroup_verify.

Loads the configuration, sets up logging and registers the services the
command line uses.
"""

from typing import Optional
import logging
import logging.handlers

from .config.config import Config, get_config
from .utils.service_container import ServiceContainer, init_services

LOG_FORMAT = "%(asctime)s %(levelname)s [%(name)s] %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"


def create_app(
    environment: Optional[str] = None,
    log_level: Optional[str] = None,
    data_dir: Optional[str] = None,
) -> ServiceContainer:
    """
    Build the service container.

    Args:
        environment: Environment name (development, production, testing)
        log_level: Overrides the level implied by the configuration
        data_dir: Override for the bundled data directory

    Returns:
        ServiceContainer: Container with config, repositories and services
    """
    config = get_config(environment)
    _configure_logging(config, log_level)
    return init_services(config, data_dir)


def _configure_logging(config: Config, log_level: Optional[str] = None) -> None:
    """
    Log to stderr, and to a rotating file when PGV_LOG_FILE is set.

    Reports go to stdout, so log lines never mix with them.
    """
    if log_level:
        level = getattr(logging, log_level.upper(), logging.INFO)
    else:
        level = logging.DEBUG if config.DEBUG and not config.TESTING else logging.INFO

    root = logging.getLogger()
    root.setLevel(level)
    # rebind to the current stderr on every call
    for handler in [h for h in root.handlers if getattr(h, "_pgv", False)]:
        root.removeHandler(handler)
    stream = logging.StreamHandler()
    stream.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=LOG_DATEFMT))
    stream._pgv = True
    root.addHandler(stream)

    log_file = config.get_log_file()
    if log_file and not any(
        isinstance(h, logging.handlers.RotatingFileHandler) for h in root.handlers
    ):
        file_handler = logging.handlers.RotatingFileHandler(
            log_file, maxBytes=10240000, backupCount=10
        )
        file_handler.setFormatter(
            logging.Formatter(
                "%(asctime)s %(levelname)s: %(message)s [in %(pathname)s:%(lineno)d]"
            )
        )
        file_handler.setLevel(logging.INFO)
        root.addHandler(file_handler)
