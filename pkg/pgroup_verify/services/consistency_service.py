"""
Consistency testing for class-2 presentations by overlap evaluation.
"""

import logging

from ..models.presentation import ConsistencyFailure, ConsistencyReport, PcPresentation
from .collect_service import Collector

logger = logging.getLogger(__name__)

CHECK_CENTRAL = "central-values"
CHECK_ORDERS = "value-orders"
CHECK_ASSOCIATIVE = "associativity"
CHECK_POWERS = "power-overlaps"


def validate_consistency(presentation: PcPresentation) -> ConsistencyReport:
    """
    Run the overlap checks on a presentation.

    (a) every generator power occurring in a commutator value commutes with
    every generator; (b) each [x_j, x_i] is killed by p^{e_j} and p^{e_i};
    (c) generator triples associate; (d) x_i^{p^{e_i}} collected against
    each x_j from either side gives x_j.

    Failures are returned as data, indices 1-based.
    """
    collector = Collector(presentation)
    report = ConsistencyReport()
    d = presentation.d
    gens = [collector.generator(i) for i in range(d)]

    for (j, i), value in presentation.relations:
        factors = [(m, c) for m, c in enumerate(value) if c]
        for m, c in factors:
            z = tuple(c if k == m else 0 for k in range(d))
            for g in range(d):
                if collector.multiply(z, gens[g]) != collector.multiply(gens[g], z):
                    report.failures.append(
                        ConsistencyFailure(
                            CHECK_CENTRAL,
                            (j + 1, i + 1, g + 1),
                            f"x_{m + 1}^{c} in [x_{j + 1}, x_{i + 1}] "
                            f"does not commute with x_{g + 1}",
                        )
                    )
        for k in (j, i):
            if any(collector.power(value, presentation.moduli[k])):
                report.failures.append(
                    ConsistencyFailure(
                        CHECK_ORDERS,
                        (j + 1, i + 1, k + 1),
                        f"[x_{j + 1}, x_{i + 1}]^(p^e_{k + 1}) is not trivial",
                    )
                )

    for a in range(d):
        for b in range(d):
            for c in range(d):
                left = collector.multiply(collector.multiply(gens[a], gens[b]), gens[c])
                right = collector.multiply(gens[a], collector.multiply(gens[b], gens[c]))
                if left != right:
                    report.failures.append(
                        ConsistencyFailure(CHECK_ASSOCIATIVE, (a + 1, b + 1, c + 1))
                    )

    for i in range(d):
        top = collector.power(gens[i], presentation.moduli[i] - 1)
        for j in range(d):
            from_left = collector.multiply(top, collector.multiply(gens[i], gens[j]))
            from_right = collector.multiply(collector.multiply(gens[j], top), gens[i])
            if from_left != gens[j] or from_right != gens[j]:
                report.failures.append(ConsistencyFailure(CHECK_POWERS, (i + 1, j + 1)))

    if report.ok:
        logger.debug(f"Presentation {presentation!r} passed consistency checks")
    else:
        logger.info(
            f"Presentation {presentation!r} failed checks: {report.checks_failed()}"
        )
    return report
