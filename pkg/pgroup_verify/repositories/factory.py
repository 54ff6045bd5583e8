"""
Repository factory utilities.

Maps repository names to classes so the service container and the CLI
create repositories in one place.
"""

from typing import Dict, Optional, Type

from .base import BaseRepository, PathLike
from .fixture_repository import FixtureRepository
from .presentation_repository import PresentationRepository


class RepositoryFactory:
    """Creates file repositories by name."""

    _repository_mapping: Dict[str, Type[BaseRepository]] = {
        "presentations": PresentationRepository,
        "fixtures": FixtureRepository,
    }

    @classmethod
    def create_repository(
        cls, name: str, data_dir: Optional[PathLike] = None
    ) -> BaseRepository:
        """
        Create a repository instance.

        Raises:
            ValueError: If no repository is registered under name
        """
        if name not in cls._repository_mapping:
            raise ValueError(
                f"No repository named {name!r}; known: {sorted(cls._repository_mapping)}"
            )
        return cls._repository_mapping[name](data_dir)

    @classmethod
    def create_presentation_repository(
        cls, data_dir: Optional[PathLike] = None
    ) -> PresentationRepository:
        return PresentationRepository(data_dir)

    @classmethod
    def create_fixture_repository(
        cls, data_dir: Optional[PathLike] = None
    ) -> FixtureRepository:
        return FixtureRepository(data_dir)


def create_repository_container(
    data_dir: Optional[PathLike] = None,
) -> Dict[str, BaseRepository]:
    """All repositories keyed by container name."""
    presentations = None if data_dir is None else f"{data_dir}/presentations"
    fixtures = None if data_dir is None else f"{data_dir}/fixtures"
    return {
        "presentation_repository": RepositoryFactory.create_presentation_repository(
            presentations
        ),
        "fixture_repository": RepositoryFactory.create_fixture_repository(fixtures),
    }
