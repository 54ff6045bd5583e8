"""
Result models for the Autcent criteria and sanity sampling.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .presentation import Element
from .subgroup import AbelianSectionType, CentralSubgroup, SubgroupAboveDerived


@dataclass
class AdneyYenData:
    """
    Inputs and outcome of the R = K criterion for abelian Autcent.

    a, b, c are log_p of exp Z, exp gamma_2 and exp G/gamma_2; d = min(a, c);
    R = Omega_d(Z) and K = G^{p^b} gamma_2.
    """

    a: int
    b: int
    c: int
    d: int
    R: CentralSubgroup
    K: SubgroupAboveDerived
    r_equals_k: bool
    cyclic_condition: bool
    cyclic_witness: Optional[Element] = None

    @property
    def abelian(self) -> bool:
        return self.r_equals_k and (self.d == self.b or self.cyclic_condition)


@dataclass(frozen=True)
class CeData:
    """Whether an abelian section is cyclic-of-order-p^n (n > 1) times elementary."""

    is_ce: bool
    cyclic_part_order: int
    elementary_rank: int

    @classmethod
    def of(cls, section: AbelianSectionType) -> "CeData":
        big = [order for order in section.orders if order > section.p]
        if len(big) != 1:
            return cls(False, max(big, default=1), section.rank - len(big))
        return cls(True, big[0], section.rank - 1)


@dataclass
class JafariTwoResult:
    """Which of the three p = 2 conditions hold; `condition` is the least one."""

    satisfied: List[int] = field(default_factory=list)
    witness: Optional[Element] = None

    @property
    def condition(self) -> Optional[int]:
        return min(self.satisfied) if self.satisfied else None


@dataclass(frozen=True)
class EarnleyGuard:
    applicable: bool
    exponent: int
    nonabelian: bool


@dataclass(frozen=True)
class DichotomyResult:
    branch1: bool
    branch2: bool
    exponent: int
    exponent_is_p_squared: bool
    exponent_balance: Tuple[int, int]

    @property
    def violated(self) -> bool:
        """Neither branch holds, or the exponent is not p^2."""
        return not (self.branch1 or self.branch2) or not self.exponent_is_p_squared


@dataclass
class SanityReport:
    trials: int
    non_commuting: int = 0
    not_order_p: int = 0
    skipped: int = 0

    @property
    def all_commute(self) -> bool:
        return self.non_commuting == 0

    @property
    def all_order_p(self) -> bool:
        return self.not_order_p == 0


@dataclass(frozen=True)
class CentralAutomorphismCount:
    maps: int
    automorphisms: int

    @property
    def all_automorphisms(self) -> bool:
        return self.maps == self.automorphisms
