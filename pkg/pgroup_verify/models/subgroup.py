"""
Subgroup and abelian-section models.

Subgroup data is expressed over Z/p^E, E the largest order exponent, with
coordinate m scaled by p^{E - e_m} so that the mixed-modulus exponent
module sits inside (Z/p^E)^d.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

from ..utils.modular import plog
from .presentation import Element

Rows = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class AbelianSectionType:
    """Invariant-factor type of a finite abelian p-group, largest first."""

    p: int
    orders: Tuple[int, ...]

    @classmethod
    def from_exponents(cls, p: int, exponents: Sequence[int]) -> "AbelianSectionType":
        return cls(p, tuple(p**k for k in sorted((k for k in exponents if k > 0), reverse=True)))

    @property
    def exponents(self) -> List[int]:
        return [plog(order, self.p) for order in self.orders]

    @property
    def size_exponent(self) -> int:
        return sum(self.exponents)

    @property
    def exponent(self) -> int:
        """The group exponent (1 for the trivial group)."""
        return self.orders[0] if self.orders else 1

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def is_trivial(self) -> bool:
        return not self.orders

    @property
    def is_elementary(self) -> bool:
        return all(order == self.p for order in self.orders)

    @property
    def is_cyclic(self) -> bool:
        return len(self.orders) <= 1

    def __str__(self) -> str:
        return "(" + ",".join(str(order) for order in self.orders) + ")"


@dataclass(frozen=True)
class CentralSubgroup:
    """
    A subgroup of the center, with an independent basis.

    Attributes:
        basis: Independent central elements
        orders: Matching orders (powers of p)
        form: Howell rows of the subgroup in central log coordinates
        E: Ring exponent of `form`
    """

    p: int
    basis: Tuple[Element, ...]
    orders: Tuple[int, ...]
    form: Rows
    E: int

    @property
    def size_exponent(self) -> int:
        return sum(plog(order, self.p) for order in self.orders)

    @property
    def section_type(self) -> AbelianSectionType:
        return AbelianSectionType(self.p, tuple(sorted(self.orders, reverse=True)))

    @property
    def exponent(self) -> int:
        return max(self.orders, default=1)

    @property
    def is_trivial(self) -> bool:
        return not self.basis

    @property
    def is_elementary(self) -> bool:
        return all(order == self.p for order in self.orders)


@dataclass(frozen=True)
class SubgroupAboveDerived:
    """
    A subgroup containing the derived subgroup.

    Attributes:
        form: Howell rows (scaled exponent vectors) of the full preimage
        E: Ring exponent of `form`
        size_exponent: log_p of the subgroup order
        ambient: Type of G/gamma_2 the subgroup lives over
    """

    p: int
    form: Rows
    E: int
    size_exponent: int
    ambient: AbelianSectionType


class SubgroupRelation(str, Enum):
    EQUAL = "equal"
    PROPER_SUBGROUP = "A<B"
    PROPER_SUPERGROUP = "B<A"
    INCOMPARABLE = "incomparable"
