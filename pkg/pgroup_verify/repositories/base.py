"""
Base repository interface for file-backed data.

Repositories turn text into models and back; `load` and `save` add the
file handling on top of the abstract `parse` and `serialize`.
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Generic, List, Optional, TypeVar, Union
import logging

logger = logging.getLogger(__name__)

ModelType = TypeVar("ModelType")
PathLike = Union[str, Path]

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


class BaseRepository(Generic[ModelType], ABC):
    """
    Abstract base repository.

    Attributes:
        data_dir: Directory that relative names are resolved against
    """

    suffix = ""
    subdirectory = ""

    def __init__(self, data_dir: Optional[PathLike] = None):
        self.data_dir = Path(data_dir) if data_dir is not None else DATA_DIR / self.subdirectory

    @abstractmethod
    def parse(self, text: str) -> ModelType:
        """Build a model from file text."""
        pass

    @abstractmethod
    def serialize(self, entity: ModelType) -> str:
        """Render a model as file text."""
        pass

    def resolve(self, name: PathLike) -> Path:
        """
        A path as given if it exists, else the named file in data_dir.

        Args:
            name: File path, or a bare name with or without suffix
        """
        path = Path(name)
        if path.exists():
            return path
        candidate = self.data_dir / path
        if not candidate.suffix and self.suffix:
            candidate = candidate.with_suffix(self.suffix)
        return candidate

    def load(self, name: PathLike) -> ModelType:
        path = self.resolve(name)
        logger.debug(f"Loading {path}")
        return self.parse(path.read_text(encoding="utf-8"))

    def save(self, entity: ModelType, path: PathLike) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(self.serialize(entity), encoding="utf-8")
        logger.info(f"Wrote {target}")
        return target

    def available(self) -> List[str]:
        """Names of the data files shipped in data_dir."""
        if not self.data_dir.is_dir():
            return []
        return sorted(p.stem for p in self.data_dir.glob(f"*{self.suffix}"))
