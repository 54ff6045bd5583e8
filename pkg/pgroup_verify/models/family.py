"""
Family selection model.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple


class FamilyKind(str, Enum):
    A = "A"
    B = "B"
    C = "C"
    HEISENBERG = "heisenberg"
    HEISENBERG_TIMES_CYCLIC = "heisenberg-x-cyclic"
    ABELIAN = "abelian"
    CUSTOM = "custom"


@dataclass(frozen=True)
class FamilySpec:
    """
    Which presentation to build.

    Attributes:
        family: The family
        p: The prime
        n: Order exponent of x_1 (family A only, n >= 4)
        orders: Generator order exponents (abelian family only)
    """

    family: FamilyKind
    p: int
    n: Optional[int] = None
    orders: Tuple[int, ...] = ()

    @property
    def label(self) -> str:
        if self.family == FamilyKind.A:
            return f"A(p={self.p}, n={self.n})"
        if self.family == FamilyKind.ABELIAN:
            return f"abelian(p={self.p}, orders={list(self.orders)})"
        return f"{self.family.value}(p={self.p})"
