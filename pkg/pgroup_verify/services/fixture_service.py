"""
Cross-checks of hand-derived equation tables against generated systems.

Each fixture equation must hold mod p on the solutions mod p of the
generated system: on the invertible ones by default, or on every solution
with `invertible_only=False`. The level-0 search visits all of them, so
this covers all p^{d^2} assignments without listing them.
"""

from typing import Optional
import logging

from ..models.presentation import PcPresentation
from ..models.symbolic import FixtureSet, FixtureSweep
from ..utils.validation import require
from .solver_service import DEFAULT_NODE_BUDGET, Budget, CentralitySolver
from .symbolic_service import generate_system

logger = logging.getLogger(__name__)

MAX_REPORTED_VIOLATIONS = 10


def fixture_sweep(
    presentation: PcPresentation,
    fixtures: FixtureSet,
    max_nodes: int = DEFAULT_NODE_BUDGET,
    deadline: Optional[float] = None,
    ordering: str = "constrained",
    invertible_only: bool = True,
) -> FixtureSweep:
    """
    Check fixtures as necessary conditions on the mod-p solutions.

    Raises:
        PreconditionError: If the fixture is written for another generator count
    """
    require(
        fixtures.d == presentation.d,
        f"fixture {fixtures.name!r} has d = {fixtures.d}, "
        f"presentation has d = {presentation.d}",
    )
    system = generate_system(presentation)
    level0 = CentralitySolver(system, ordering).solve_level0(
        Budget(max_nodes, deadline), invertible_only=invertible_only
    )
    sweep = FixtureSweep(
        fixtures.name, len(level0.solutions), level0.complete, invertible_only
    )
    for values in level0.solutions:
        failed = fixtures.violated(values, presentation.p, level=1)
        if failed:
            if len(sweep.violations) < MAX_REPORTED_VIOLATIONS:
                sweep.violations.append((values, failed))
            else:
                break
    if sweep.violations:
        logger.warning(
            f"Fixture {fixtures.name!r} violated by {len(sweep.violations)} "
            f"solutions of {presentation!r}; first: {sweep.violations[0][1]}"
        )
    else:
        logger.info(
            f"Fixture {fixtures.name!r} holds on {sweep.solutions} {sweep.scope} "
            f"solutions mod {presentation.p} (complete: {sweep.complete})"
        )
    return sweep
