from .presentation import ConsistencyFailure, ConsistencyReport, Element, PcPresentation
from .subgroup import (
    AbelianSectionType,
    CentralSubgroup,
    SubgroupAboveDerived,
    SubgroupRelation,
)
from .symbolic import (
    CongruenceSystem,
    Equation,
    FixtureSet,
    FixtureSweep,
    InvertibilityPattern,
    Variable,
)
from .verdict import Assignment, OracleResult, SolverStats, Verdict, VerdictKind, Witness
from .criteria import (
    AdneyYenData,
    CeData,
    CentralAutomorphismCount,
    DichotomyResult,
    EarnleyGuard,
    JafariTwoResult,
    SanityReport,
)
from .family import FamilyKind, FamilySpec
from .report import CheckResult, CriteriaSummary, Report, StructureSummary
