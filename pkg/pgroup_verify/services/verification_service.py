"""
Verification pipeline behind the command line.

Each entry point builds a Report: structure summary, criteria outcomes,
solver verdict, and one CheckResult per claim tested for the family the
presentation came from. Presentations read from files carry no claims.
"""

from typing import Callable, Optional, Type, TypeVar
import logging
import time

from ..config.config import Config
from ..models.family import FamilyKind, FamilySpec
from ..models.presentation import PcPresentation
from ..models.report import CriteriaSummary, Report, StructureSummary
from ..models.subgroup import SubgroupRelation
from ..models.verdict import VerdictKind
from ..repositories.fixture_repository import FixtureRepository
from ..repositories.presentation_repository import PresentationRepository
from ..utils.validation import CapExceededError, PreconditionError, StructureError
from .criteria_service import adney_yen, dichotomy, earnley_guard, jafari_odd, jafari_two
from .family_service import FamilyFactory
from .fixture_service import fixture_sweep
from .hom_service import (
    autcent_order,
    central_sanity_suite,
    count_central_automorphisms,
)
from .oracle_service import bruteforce_aut
from .solver_service import SolverOptions, verify_all_central
from .structure_service import SECTIONS, StructureAnalyzer

logger = logging.getLogger(__name__)

T = TypeVar("T")

RELATIONS = {
    "gamma2 vs Z": ("derived", "center"),
    "Z vs Phi": ("center", "frattini"),
    "gamma2 vs Phi": ("derived", "frattini"),
}

FIXTURE_FILES = {
    FamilyKind.A: "family_a",
    FamilyKind.B: "family_b",
    FamilyKind.C: "family_c",
}


def _attempt(what: str, compute: Callable[[], T]) -> Optional[T]:
    """Run a computation whose preconditions may not hold; None if they do not."""
    try:
        return compute()
    except (StructureError, CapExceededError, PreconditionError) as e:
        logger.warning(f"Skipped {what}: {e}")
        return None


def gl_order(p: int, r: int) -> int:
    """|GL_r(F_p)|."""
    order = 1
    for k in range(r):
        order *= p**r - p**k
    return order


class VerificationService:
    """
    Runs analyses and verifications for presentations and families.

    Args:
        config: Caps, budgets and sampling settings
        presentations: Repository for presentation files
        fixtures: Repository for equation fixtures
        families: Builder for family presentations
    """

    def __init__(
        self,
        config: Config,
        presentations: Optional[PresentationRepository] = None,
        fixtures: Optional[FixtureRepository] = None,
        families: Type[FamilyFactory] = FamilyFactory,
    ):
        self.config = config
        self.presentations = presentations or PresentationRepository()
        self.fixtures = fixtures or FixtureRepository()
        self.families = families

    def analyzer(self, presentation: PcPresentation) -> StructureAnalyzer:
        return StructureAnalyzer(
            presentation,
            enumeration_cap=self.config.get_enumeration_cap(),
            center_cap=self.config.get_center_cap(),
        )

    def build(self, spec: FamilySpec) -> PcPresentation:
        return self.families.build(spec)

    # summaries

    def summarize_structure(self, analyzer: StructureAnalyzer) -> StructureSummary:
        presentation = analyzer.presentation
        summary = StructureSummary(
            presentation.p,
            presentation.order_exponent,
            _attempt("exponent", analyzer.exponent),
        )
        for which in SECTIONS:
            section = _attempt(which, lambda: analyzer.section_type(which))
            if section is not None:
                summary.sections[which] = section
        subgroups = {
            "derived": lambda: analyzer.derived,
            "center": analyzer.center,
            "frattini": analyzer.frattini,
        }
        for name, (left, right) in RELATIONS.items():
            relation = _attempt(
                name,
                lambda: analyzer.compare_subgroups(subgroups[left](), subgroups[right]()),
            )
            if relation is not None:
                summary.relations[name] = relation
        summary.purely_nonabelian = _attempt(
            "purely non-abelian test", analyzer.is_purely_nonabelian
        )
        return summary

    def evaluate_criteria(
        self, analyzer: StructureAnalyzer, seed: int
    ) -> CriteriaSummary:
        criteria = CriteriaSummary()
        criteria.autcent_order = _attempt("Autcent order", lambda: autcent_order(analyzer))
        if analyzer.p == 2:
            criteria.jafari_two = _attempt("p = 2 criterion", lambda: jafari_two(analyzer))
        else:
            criteria.adney_yen = _attempt("R = K criterion", lambda: adney_yen(analyzer))
            criteria.jafari_odd = _attempt("odd-p criterion", lambda: jafari_odd(analyzer))
            criteria.earnley = _attempt("exponent-p guard", lambda: earnley_guard(analyzer))
            criteria.dichotomy = _attempt("dichotomy", lambda: dichotomy(analyzer))
        trials = self.config.get_sanity_trials()
        criteria.sanity = _attempt(
            "central sanity suite", lambda: central_sanity_suite(analyzer, trials, seed)
        )
        return criteria

    # entry points

    def analyze(
        self,
        presentation: PcPresentation,
        spec: Optional[FamilySpec] = None,
        label: str = "",
        seed: Optional[int] = None,
        command: str = "analyze",
        count_central: bool = False,
        workers: Optional[int] = None,
    ) -> Report:
        label = label or (spec.label if spec else repr(presentation))
        seed = self.config.get_seed() if seed is None else seed
        logger.info(f"Analyzing {label}")
        analyzer = self.analyzer(presentation)
        report = Report(command, label, presentation)
        report.structure = self.summarize_structure(analyzer)
        report.criteria = self.evaluate_criteria(analyzer, seed)
        if count_central:
            self.sweep_central(report, analyzer, workers)
        if spec is not None:
            self._family_claims(report, analyzer, spec)
        return report

    def sweep_central(
        self, report: Report, analyzer: StructureAnalyzer, workers: Optional[int] = None
    ) -> None:
        """Count automorphisms among all x -> x f(x) and compare with |Autcent|."""
        workers = workers or self.config.get_workers()
        count = _attempt(
            "central hom sweep",
            lambda: count_central_automorphisms(
                analyzer, workers, self.config.get_hom_cap()
            ),
        )
        report.criteria.central_count = count
        expected = report.criteria.autcent_order
        report.add(
            "every x -> x f(x) is an automorphism and their number is |Autcent(G)|",
            "homs.count_central_automorphisms",
            None
            if count is None or expected is None
            else count.all_automorphisms and count.automorphisms == analyzer.p**expected,
            f"{count.automorphisms} of {count.maps} maps" if count else "unavailable",
        )

    def verify(
        self,
        presentation: PcPresentation,
        spec: Optional[FamilySpec] = None,
        label: str = "",
        options: Optional[SolverOptions] = None,
        seed: Optional[int] = None,
    ) -> Report:
        options = options or self.solver_options()
        report = self.analyze(presentation, spec, label, seed, command="verify")
        report.verdict = verify_all_central(presentation, options)
        all_central = report.verdict.kind == VerdictKind.ALL_CENTRAL
        criteria = report.criteria
        if all_central and report.structure.purely_nonabelian:
            report.aut_order = criteria.autcent_order
        report.aut_abelian = self._aut_abelian(report)
        if criteria.earnley is not None and criteria.earnley.applicable and report.aut_abelian:
            report.add(
                "Aut(G) abelian is consistent with the exponent-p theorem",
                "criteria.earnley_guard",
                False,
                "non-abelian group of exponent p cannot have abelian Aut(G)",
            )
        if spec is not None:
            self._verify_claims(report, spec)
        return report

    def oracle(
        self,
        presentation: PcPresentation,
        spec: Optional[FamilySpec] = None,
        label: str = "",
        options: Optional[SolverOptions] = None,
    ) -> Report:
        label = label or (spec.label if spec else repr(presentation))
        report = Report("oracle", label, presentation)
        report.oracle = bruteforce_aut(presentation, self.config.get_oracle_cap())
        oracle = report.oracle
        verdict = verify_all_central(presentation, options or self.solver_options())
        if verdict.kind == VerdictKind.INCONCLUSIVE:
            agrees = None
        else:
            agrees = oracle.all_central == (verdict.kind == VerdictKind.ALL_CENTRAL)
        report.add(
            "solver verdict matches the oracle",
            "solver.verify_all_central vs oracle.bruteforce_aut",
            agrees,
            f"|Aut| = {oracle.automorphisms}, central {oracle.central}, "
            f"verdict {verdict.kind.value}",
        )
        if presentation.is_abelian and all(e == 1 for e in presentation.exponents):
            expected = gl_order(presentation.p, presentation.d)
            report.add(
                f"|Aut| = |GL_{presentation.d}(F_{presentation.p})|",
                "oracle.bruteforce_aut",
                oracle.automorphisms == expected,
                f"{oracle.automorphisms} vs {expected}",
            )
        if spec is not None and spec.family == FamilyKind.HEISENBERG:
            report.add(
                "|Aut| exceeds |Autcent|",
                "oracle.bruteforce_aut",
                oracle.automorphisms > oracle.central,
                f"{oracle.automorphisms} > {oracle.central}",
            )
        return report

    def check_fixtures(
        self,
        spec: FamilySpec,
        options: Optional[SolverOptions] = None,
        invertible_only: bool = True,
    ) -> Report:
        if spec.family not in FIXTURE_FILES:
            raise PreconditionError(
                f"no equation fixtures for family {spec.family.value!r}; "
                f"available: {sorted(k.value for k in FIXTURE_FILES)}"
            )
        options = options or self.solver_options()
        presentation = self.build(spec)
        fixtures = self.fixtures.with_n(spec.n).load(FIXTURE_FILES[spec.family])
        report = Report("fixtures", spec.label, presentation)
        deadline = time.time() + options.max_seconds if options.max_seconds else None
        sweep = fixture_sweep(
            presentation,
            fixtures,
            options.max_nodes,
            deadline,
            options.ordering,
            invertible_only,
        )
        detail = f"{sweep.solutions} {sweep.scope} solutions mod {presentation.p}"
        if sweep.violations:
            values, failed = sweep.violations[0]
            detail += f"; first violation breaks {', '.join(failed)}"
        report.add(
            f"{fixtures.name} equations hold on every solution mod p",
            "fixtures.fixture_sweep",
            sweep.ok if sweep.complete else None,
            detail,
        )
        return report

    def solver_options(self) -> SolverOptions:
        return SolverOptions(
            max_nodes=self.config.get_budget_nodes(),
            max_seconds=self.config.get_budget_seconds(),
            workers=self.config.get_workers(),
        )

    # claims

    @staticmethod
    def _aut_abelian(report: Report) -> Optional[bool]:
        """Aut(G) abelian only when the solver and a criterion agree."""
        if report.verdict is None or report.verdict.kind != VerdictKind.ALL_CENTRAL:
            return None
        criteria = report.criteria
        if criteria.adney_yen is not None:
            return criteria.adney_yen.abelian
        if criteria.jafari_two is not None and criteria.jafari_two.satisfied:
            return True
        return None

    def _family_claims(
        self, report: Report, analyzer: StructureAnalyzer, spec: FamilySpec
    ) -> None:
        handlers = {
            FamilyKind.A: self._claims_a,
            FamilyKind.B: self._claims_b,
            FamilyKind.C: self._claims_c,
            FamilyKind.HEISENBERG: self._claims_heisenberg,
        }
        handler = handlers.get(spec.family)
        if handler is not None:
            handler(report, analyzer, spec)

    @staticmethod
    def _relation_claim(
        report: Report, name: str, expected: SubgroupRelation, claim: str
    ) -> None:
        observed = report.structure.relations.get(name)
        report.add(
            claim,
            "structure.compare_subgroups",
            None if observed is None else observed == expected,
            f"{name}: {observed.value if observed else 'unavailable'}",
        )

    @staticmethod
    def _order_claim(report: Report, expected: int) -> None:
        observed = report.presentation.order_exponent
        report.add(
            f"|G| = p^{expected}",
            "presentation.order_exponent",
            observed == expected,
            f"p^{observed}",
        )

    @staticmethod
    def _autcent_claim(report: Report, expected: int) -> None:
        observed = report.criteria.autcent_order
        report.add(
            f"|Autcent(G)| = p^{expected}",
            "homs.autcent_order",
            None if observed is None else observed == expected,
            f"p^{observed}" if observed is not None else "unavailable",
        )

    @staticmethod
    def _elementary_criterion_claim(report: Report, expected: Optional[int]) -> None:
        """Odd p: jafari_odd is True; p = 2: exactly condition `expected` holds."""
        criteria = report.criteria
        if report.presentation.p == 2:
            result = criteria.jafari_two
            report.add(
                f"only condition {expected} of the p = 2 criterion holds",
                "criteria.jafari_two",
                None if result is None else result.satisfied == [expected],
                f"satisfied {result.satisfied}" if result else "unavailable",
            )
            return
        center = report.structure.sections.get("Z")
        report.add(
            "Autcent(G) elementary abelian",
            "criteria.jafari_odd",
            criteria.jafari_odd,
            f"exp Z = {center.exponent}" if center else "",
        )

    @staticmethod
    def _dichotomy_claim(report: Report, branch1: bool, branch2: bool) -> None:
        result = report.criteria.dichotomy
        if result is None:
            return
        report.add(
            f"dichotomy branches (Z = Phi: {branch1}, gamma2 = Phi: {branch2})",
            "criteria.dichotomy",
            result.branch1 == branch1 and result.branch2 == branch2,
            f"observed ({result.branch1}, {result.branch2})",
        )
        report.add(
            "exp G = p^2",
            "criteria.dichotomy",
            result.exponent_is_p_squared,
            f"exp G = {result.exponent}",
        )

    def _claims_a(
        self, report: Report, analyzer: StructureAnalyzer, spec: FamilySpec
    ) -> None:
        p, n = spec.p, spec.n if spec.n is not None else 4
        structure = report.structure
        self._order_claim(report, n + 10)
        report.add(
            f"exp G = p^{n}",
            "structure.exponent",
            None if structure.exponent is None else structure.exponent == p**n,
            str(structure.exponent),
        )
        if n == 4:
            self._relation_claim(report, "gamma2 vs Z", SubgroupRelation.EQUAL, "gamma2 = Z")
        else:
            self._relation_claim(
                report, "gamma2 vs Z", SubgroupRelation.PROPER_SUBGROUP, "gamma2 < Z"
            )
        self._relation_claim(report, "Z vs Phi", SubgroupRelation.PROPER_SUBGROUP, "Z < Phi")
        self._autcent_claim(report, n + 20)
        if p == 2:
            return
        ay = report.criteria.adney_yen
        report.add(
            "Autcent(G) abelian",
            "criteria.adney_yen",
            None if ay is None else ay.abelian,
            f"a={ay.a} b={ay.b} c={ay.c} d={ay.d}" if ay else "unavailable",
        )
        if n >= 5 and ay is not None:
            x1_power = analyzer.collector.power(analyzer.collector.generator(0), p**2)
            generated = analyzer.above_derived([x1_power])
            report.add(
                "R/gamma2 is generated by the image of x1^(p^2)",
                "criteria.adney_yen",
                ay.cyclic_condition
                and analyzer.compare_subgroups(ay.R, generated) == SubgroupRelation.EQUAL,
                f"witness {ay.cyclic_witness}",
            )
        report.add(
            "Autcent(G) not elementary abelian",
            "criteria.jafari_odd",
            None if report.criteria.jafari_odd is None else not report.criteria.jafari_odd,
            "",
        )

    def _claims_b(
        self, report: Report, analyzer: StructureAnalyzer, spec: FamilySpec
    ) -> None:
        p = spec.p
        sections = report.structure.sections
        self._order_claim(report, 9)
        self._relation_claim(report, "Z vs Phi", SubgroupRelation.PROPER_SUPERGROUP, "Phi < Z")
        self._relation_claim(report, "gamma2 vs Phi", SubgroupRelation.EQUAL, "gamma2 = Phi")
        gamma = sections.get("gamma2")
        report.add(
            "gamma2 elementary abelian",
            "structure.section_type",
            None if gamma is None else gamma.is_elementary,
            str(gamma),
        )
        center = sections.get("Z")
        report.add(
            "exp Z = p^2",
            "structure.section_type",
            None if center is None else center.exponent == p**2,
            str(center),
        )
        self._autcent_claim(report, 20)
        self._elementary_criterion_claim(report, 1)
        if p != 2:
            self._dichotomy_claim(report, False, True)
            self._sanity_claims(report)

    def _claims_c(
        self, report: Report, analyzer: StructureAnalyzer, spec: FamilySpec
    ) -> None:
        sections = report.structure.sections
        self._order_claim(report, 8)
        self._relation_claim(
            report, "gamma2 vs Phi", SubgroupRelation.PROPER_SUBGROUP, "gamma2 < Phi"
        )
        self._relation_claim(report, "Z vs Phi", SubgroupRelation.EQUAL, "Z = Phi")
        center = sections.get("Z")
        report.add(
            "Z elementary abelian",
            "structure.section_type",
            None if center is None else center.is_elementary,
            str(center),
        )
        self._autcent_claim(report, 16)
        self._elementary_criterion_claim(report, 2)
        if spec.p != 2:
            self._dichotomy_claim(report, True, False)

    def _claims_heisenberg(
        self, report: Report, analyzer: StructureAnalyzer, spec: FamilySpec
    ) -> None:
        earnley = report.criteria.earnley
        if earnley is not None:
            report.add(
                "exponent-p guard applies",
                "criteria.earnley_guard",
                earnley.applicable,
                f"exp G = {earnley.exponent}",
            )
        ay = report.criteria.adney_yen
        if ay is not None:
            report.add("Autcent(G) abelian", "criteria.adney_yen", ay.abelian, "")

    @staticmethod
    def _sanity_claims(report: Report) -> None:
        sanity = report.criteria.sanity
        if sanity is None or sanity.trials == 0:
            return
        report.add(
            "sampled central automorphisms commute",
            "homs.central_sanity_suite",
            sanity.all_commute,
            f"{sanity.non_commuting} of {sanity.trials} pairs do not",
        )
        report.add(
            "sampled central automorphisms have order dividing p",
            "homs.central_sanity_suite",
            sanity.all_order_p,
            f"{sanity.not_order_p} of {sanity.trials} samples do not",
        )

    def _verify_claims(self, report: Report, spec: FamilySpec) -> None:
        verdict = report.verdict
        expected_order = {
            FamilyKind.A: (spec.n if spec.n is not None else 4) + 20,
            FamilyKind.B: 20,
            FamilyKind.C: 16,
        }
        if spec.family in expected_order:
            decided = verdict.kind != VerdictKind.INCONCLUSIVE
            report.add(
                "all automorphisms are central",
                "solver.verify_all_central",
                verdict.kind == VerdictKind.ALL_CENTRAL if decided else None,
                verdict.kind.value,
            )
            if report.aut_order is not None:
                report.add(
                    f"|Aut(G)| = p^{expected_order[spec.family]}",
                    "solver.verify_all_central + homs.autcent_order",
                    report.aut_order == expected_order[spec.family],
                    f"p^{report.aut_order}",
                )
        if spec.family in (FamilyKind.B, FamilyKind.C) and report.aut_order is not None:
            elementary = (
                report.criteria.jafari_odd
                if spec.p != 2
                else bool(report.criteria.jafari_two and report.criteria.jafari_two.satisfied)
            )
            report.add(
                "Aut(G) elementary abelian",
                "solver.verify_all_central + criteria",
                elementary,
                "",
            )
