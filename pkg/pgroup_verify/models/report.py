"""
Verification report model.

A report collects the structure summary, the criteria outcomes, the
solver verdict and one CheckResult per claim that was tested. Group
orders are kept as exponents of p throughout.
"""

from dataclasses import dataclass, field
from datetime import datetime
from typing import Dict, List, Optional

from .criteria import (
    AdneyYenData,
    CentralAutomorphismCount,
    DichotomyResult,
    EarnleyGuard,
    JafariTwoResult,
    SanityReport,
)
from .presentation import PcPresentation
from .subgroup import AbelianSectionType, SubgroupRelation
from .verdict import OracleResult, Verdict, VerdictKind

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CLAIM_FAILED = 2
EXIT_INCONCLUSIVE = 3


@dataclass
class CheckResult:
    """
    One tested claim.

    Attributes:
        claim: What is asserted, e.g. "gamma2 = Z"
        check: The machine check that decided it, e.g. "structure.compare_subgroups"
        passed: Outcome; None when the check could not be completed
        detail: Observed values
    """

    claim: str
    check: str
    passed: Optional[bool]
    detail: str = ""


@dataclass
class StructureSummary:
    p: int
    order_exponent: int
    exponent: Optional[int]
    sections: Dict[str, AbelianSectionType] = field(default_factory=dict)
    relations: Dict[str, SubgroupRelation] = field(default_factory=dict)
    purely_nonabelian: Optional[bool] = None


@dataclass
class CriteriaSummary:
    autcent_order: Optional[int] = None
    adney_yen: Optional[AdneyYenData] = None
    jafari_odd: Optional[bool] = None
    jafari_two: Optional[JafariTwoResult] = None
    earnley: Optional[EarnleyGuard] = None
    dichotomy: Optional[DichotomyResult] = None
    sanity: Optional[SanityReport] = None
    central_count: Optional[CentralAutomorphismCount] = None


@dataclass
class Report:
    command: str
    label: str
    presentation: PcPresentation
    structure: Optional[StructureSummary] = None
    criteria: CriteriaSummary = field(default_factory=CriteriaSummary)
    verdict: Optional[Verdict] = None
    oracle: Optional[OracleResult] = None
    aut_order: Optional[int] = None
    aut_abelian: Optional[bool] = None
    checks: List[CheckResult] = field(default_factory=list)
    generated_at: Optional[datetime] = None

    def add(self, claim: str, check: str, passed: Optional[bool], detail: str = "") -> None:
        self.checks.append(CheckResult(claim, check, passed, detail))

    @property
    def failed(self) -> List[CheckResult]:
        return [c for c in self.checks if c.passed is False]

    @property
    def inconclusive(self) -> bool:
        if self.verdict is not None and self.verdict.kind == VerdictKind.INCONCLUSIVE:
            return True
        return any(c.passed is None for c in self.checks)

    @property
    def exit_code(self) -> int:
        """0 all checks pass, 2 a claim failed or a counterexample exists, 3 inconclusive."""
        if self.failed:
            return EXIT_CLAIM_FAILED
        if self.verdict is not None and self.verdict.kind == VerdictKind.COUNTEREXAMPLE:
            return EXIT_CLAIM_FAILED
        if self.inconclusive:
            return EXIT_INCONCLUSIVE
        return EXIT_OK
