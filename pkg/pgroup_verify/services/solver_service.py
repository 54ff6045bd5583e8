"""
Decide whether every automorphism is central.

The search runs over base-p digits of the unknowns a_ij. Level 0 is a
backtracking search mod p; deeper levels fix one digit of every variable
at a time by solving the linearized system over F_p. A branch is dropped
as soon as its fixed digits already decide that every completion is
central, so central automorphisms are never enumerated.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Sequence
import logging
import time

from sympy import multiplicity

from ..models.presentation import PcPresentation
from ..models.symbolic import CongruenceSystem, Equation
from ..models.verdict import Assignment, SolverStats, Verdict, VerdictKind, Witness
from ..utils.modular import solve_affine_mod_p
from .collect_service import Collector
from .hom_service import is_automorphism, is_endomorphism
from .symbolic_service import central_parts, concrete_images, generate_system

logger = logging.getLogger(__name__)

ORDERINGS = ("constrained", "natural")
DEFAULT_NODE_BUDGET = 10**9
DEFAULT_SECONDS_BUDGET = 600.0


class BudgetExhausted(RuntimeError):
    pass


class Budget:
    """Node allowance plus a wall-clock deadline."""

    def __init__(self, max_nodes: int, deadline: Optional[float] = None):
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExhausted(f"node budget of {self.max_nodes} exhausted")
        if self.deadline is not None and self.nodes % 1024 == 0:
            if time.time() > self.deadline:
                raise BudgetExhausted("time budget exhausted")


@dataclass
class Level0Result:
    solutions: List[List[int]]
    complete: bool
    stats: SolverStats
    reason: str = ""


@dataclass
class UnitResult:
    index: int
    stats: SolverStats
    witness: Optional[List[int]] = None
    exhausted: str = ""
    nodes: int = 0


def variable_order(system: CongruenceSystem, ordering: str = "constrained") -> List[int]:
    """
    Assignment order for the level-0 search.

    "constrained" repeatedly takes the variable occurring in the equation
    with the fewest unassigned variables; ties go to the variable in more
    equations, then to the lower index.
    """
    n = len(system.variables)
    if ordering == "natural":
        return list(range(n))
    if ordering not in ORDERINGS:
        raise ValueError(f"Unknown ordering {ordering!r}; expected one of {ORDERINGS}")
    occurrences: Dict[int, List[Equation]] = {v: [] for v in range(n)}
    for eq in system.equations:
        for v in eq.variables:
            occurrences[v].append(eq)
    assigned: set = set()
    order: List[int] = []
    while len(order) < n:
        best_key, best = None, -1
        for v in range(n):
            if v in assigned:
                continue
            arity = min(
                (sum(1 for u in eq.variables if u not in assigned) for eq in occurrences[v]),
                default=n + 1,
            )
            key = (arity, -len(occurrences[v]), v)
            if best_key is None or key < best_key:
                best_key, best = key, v
        order.append(best)
        assigned.add(best)
    return order


def _determined_level(eq: Equation, system: CongruenceSystem) -> int:
    """Smallest level at which the fixed digits decide eq mod p^target."""
    level = 0
    for c, monomial in eq.terms:
        need = eq.target - int(multiplicity(system.p, c))
        for v, _ in monomial:
            level = max(level, min(system.variables[v].depth, need))
    return level


class CentralitySolver:
    """Digit-wise search for a non-central automorphism of one system."""

    def __init__(self, system: CongruenceSystem, ordering: str = "constrained"):
        self.system = system
        self.p = system.p
        self.ordering = ordering
        self._certify_level = max(
            (_determined_level(eq, system) for eq in system.centrality), default=0
        )

    # level 0

    def solve_level0(self, budget: Budget, invertible_only: bool = True) -> Level0Result:
        """
        Solutions mod p in traversal order.

        Only those with an invertible pattern unless `invertible_only` is off.
        """
        stats = SolverStats()
        system = self.system
        if system.inconsistent:
            return Level0Result([], True, stats, "constant equation in system")
        order = variable_order(system, self.ordering)
        position = {v: k for k, v in enumerate(order)}
        checks: List[List[Equation]] = [[] for _ in order]
        for eq in system.equations:
            checks[max(position[v] for v in eq.variables)].append(eq)
        values = [0] * len(order)
        solutions: List[List[int]] = []
        p = self.p

        def search(k: int) -> None:
            if k == len(order):
                if not invertible_only or system.pattern.is_invertible(values):
                    solutions.append(list(values))
                else:
                    stats.invertibility_prunes += 1
                return
            v = order[k]
            for digit in range(p):
                budget.tick()
                stats.nodes += 1
                values[v] = digit
                if all(eq.evaluate(values) % p == 0 for eq in checks[k]):
                    search(k + 1)
                else:
                    stats.equation_prunes += 1
            values[v] = 0

        try:
            if order:
                search(0)
            elif not invertible_only or system.pattern.is_invertible(values):
                solutions.append([])
        except BudgetExhausted as exc:
            stats.level0_patterns = len(solutions)
            return Level0Result(solutions, False, stats, str(exc))
        stats.level0_patterns = len(solutions)
        logger.info(
            f"Level 0 search: {len(solutions)} "
            f"{'invertible patterns' if invertible_only else 'solutions'}, "
            f"{stats.nodes} nodes"
        )
        return Level0Result(solutions, True, stats)

    # deeper levels

    def central_certified(self, values: Sequence[int], level: int) -> bool:
        return level >= self._certify_level and self.system.is_central(values)

    def descend(
        self, base: Assignment, budget: Budget, stats: Optional[SolverStats] = None
    ) -> Optional[List[int]]:
        """
        Search the extensions of `base` for a non-central solution.

        Returns the witness values, or None when no extension is a
        non-central endomorphism. Raises BudgetExhausted.
        """
        stats = stats if stats is not None else SolverStats()
        p, level = self.p, base.level
        if any(not eq.holds(base.values, p, level) for eq in self.system.equations):
            stats.equation_prunes += 1
            return None
        return self._descend(list(base.values), level, budget, stats)

    def _descend(
        self, values: List[int], level: int, budget: Budget, stats: SolverStats
    ) -> Optional[List[int]]:
        budget.tick()
        stats.nodes += 1
        system, p = self.system, self.p
        if self.central_certified(values, level):
            stats.central_prunes += 1
            return None
        if level >= system.max_depth:
            if system.satisfies(values) and not system.is_central(values):
                return list(values)
            return None

        scale = p**level
        free = [v.index for v in system.variables if v.depth > level]
        rows: List[List[int]] = []
        constants: List[int] = []
        for eq in system.equations:
            if eq.target <= level:
                continue
            value = eq.evaluate(values)
            rows.append([eq.derivative(values, v) % p for v in free])
            constants.append((-(value // scale)) % p)
        solved = solve_affine_mod_p(rows, constants, len(free), p)
        if solved is None:
            stats.equation_prunes += 1
            return None
        particular, kernel = solved
        for weights in product(range(p), repeat=len(kernel)):
            digits = list(particular)
            for w, vector in zip(weights, kernel):
                if w:
                    digits = [(x + w * y) % p for x, y in zip(digits, vector)]
            extended = list(values)
            for v, digit in zip(free, digits):
                extended[v] += digit * scale
            witness = self._descend(extended, level + 1, budget, stats)
            if witness is not None:
                return witness
        return None


def _run_unit(
    system: CongruenceSystem,
    index: int,
    values: List[int],
    max_nodes: int,
    deadline: Optional[float],
) -> UnitResult:
    solver = CentralitySolver(system)
    stats = SolverStats()
    budget = Budget(max_nodes, deadline)
    try:
        witness = solver.descend(Assignment(values, 1), budget, stats)
    except BudgetExhausted as exc:
        return UnitResult(index, stats, None, str(exc), budget.nodes)
    return UnitResult(index, stats, witness, "", budget.nodes)


@dataclass
class SolverOptions:
    max_nodes: int = DEFAULT_NODE_BUDGET
    max_seconds: Optional[float] = DEFAULT_SECONDS_BUDGET
    workers: int = 1
    ordering: str = "constrained"


def verify_all_central(
    presentation: PcPresentation, options: Optional[SolverOptions] = None
) -> Verdict:
    """
    Generate the system, solve mod p, descend every invertible pattern.

    Work units are the level-0 patterns. `max_nodes` caps the whole run:
    level 0 and every unit draw on one node allowance, taken in pattern
    order. With several workers every unit runs with what is left after
    level 0; the merge replays the units in order, stops at the first
    witness and counts a unit as exhausted once the running total passes
    the cap. That is exactly what a serial run visits, so verdicts do not
    depend on the worker count.
    """
    options = options or SolverOptions()
    started = time.time()
    deadline = started + options.max_seconds if options.max_seconds else None
    system = generate_system(presentation)
    solver = CentralitySolver(system, options.ordering)
    level0_budget = Budget(options.max_nodes, deadline)
    level0 = solver.solve_level0(level0_budget)
    remaining = max(options.max_nodes - level0_budget.nodes, 0)
    stats = level0.stats
    patterns = level0.solutions

    units: List[UnitResult] = []
    if options.workers > 1 and len(patterns) > 1:
        with ProcessPoolExecutor(max_workers=options.workers) as executor:
            futures = [
                executor.submit(_run_unit, system, k, values, remaining, deadline)
                for k, values in enumerate(patterns)
            ]
            units = [future.result() for future in futures]
    else:
        left = remaining
        for k, values in enumerate(patterns):
            unit = _run_unit(system, k, values, left, deadline)
            units.append(unit)
            left = max(left - unit.nodes, 0)
            if unit.witness is not None or unit.exhausted:
                break

    witness_values: Optional[List[int]] = None
    exhausted = [] if level0.complete else [level0.reason]
    spent = 0
    for unit in sorted(units, key=lambda u: u.index):
        stats.merge(unit.stats)
        spent += unit.nodes
        reason = unit.exhausted
        if not reason and spent > remaining:
            reason = f"node budget of {options.max_nodes} exhausted"
        if reason:
            exhausted.append(f"pattern {unit.index}: {reason}")
            break
        if unit.witness is not None:
            witness_values = unit.witness
            break
    stats.wall_seconds = time.time() - started

    if witness_values is not None:
        witness = _certify(presentation, system, witness_values)
        if witness is None:
            logger.error("Witness failed re-verification; reporting inconclusive")
            return Verdict(
                VerdictKind.INCONCLUSIVE,
                stats,
                None,
                len(patterns),
                "witness failed re-verification",
            )
        logger.info(f"Non-central automorphism found for {presentation!r}")
        return Verdict(VerdictKind.COUNTEREXAMPLE, stats, witness, len(patterns))
    if exhausted:
        logger.warning(f"Search for {presentation!r} inconclusive: {exhausted[0]}")
        return Verdict(
            VerdictKind.INCONCLUSIVE, stats, None, len(patterns), "; ".join(exhausted)
        )
    logger.info(
        f"All automorphisms of {presentation!r} are central "
        f"({len(patterns)} patterns, {stats.nodes} nodes)"
    )
    return Verdict(VerdictKind.ALL_CENTRAL, stats, None, len(patterns))


def _certify(
    presentation: PcPresentation, system: CongruenceSystem, values: List[int]
) -> Optional[Witness]:
    """Re-check a witness by concrete collection and center membership."""
    images = concrete_images(presentation, system, values)
    parts = central_parts(presentation, system, values)
    collector = Collector(presentation)
    if not is_endomorphism(presentation, images) or not is_automorphism(presentation, images):
        return None
    if all(collector.is_central(part) for part in parts):
        return None
    return Witness(values, images, parts)
