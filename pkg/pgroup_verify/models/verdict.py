"""
Solver result models.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from .presentation import Element


class VerdictKind(str, Enum):
    ALL_CENTRAL = "AllCentral"
    COUNTEREXAMPLE = "CounterexampleFound"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class Assignment:
    """
    Partially fixed values of the unknowns.

    Digits of every variable below `level` (and below its depth) are
    fixed; higher digits are zero until the descent reaches them.
    """

    values: List[int]
    level: int


@dataclass
class SolverStats:
    nodes: int = 0
    equation_prunes: int = 0
    invertibility_prunes: int = 0
    central_prunes: int = 0
    level0_patterns: int = 0
    wall_seconds: float = 0.0

    def merge(self, other: "SolverStats") -> None:
        self.nodes += other.nodes
        self.equation_prunes += other.equation_prunes
        self.invertibility_prunes += other.invertibility_prunes
        self.central_prunes += other.central_prunes

    def counts(self) -> Tuple[int, int, int, int, int]:
        """The schedule-independent part of the statistics."""
        return (
            self.nodes,
            self.equation_prunes,
            self.invertibility_prunes,
            self.central_prunes,
            self.level0_patterns,
        )


@dataclass
class Witness:
    """A non-central automorphism: unknown values and generator images."""

    values: List[int]
    images: List[Element]
    central_parts: List[Element]


@dataclass
class Verdict:
    kind: VerdictKind
    stats: SolverStats = field(default_factory=SolverStats)
    witness: Optional[Witness] = None
    surviving_patterns: int = 0
    reason: str = ""

    @property
    def all_central(self) -> bool:
        return self.kind == VerdictKind.ALL_CENTRAL


@dataclass
class OracleResult:
    """Exhaustive automorphism count of a small group."""

    automorphisms: int
    central: int
    images: List[List[Element]] = field(default_factory=list)

    @property
    def all_central(self) -> bool:
        return self.automorphisms == self.central
