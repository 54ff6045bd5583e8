"""
Literature criteria for abelian and elementary abelian Autcent(G), plus
the structural dichotomy for groups with elementary abelian Aut(G).

Every criterion is evaluated on a StructureAnalyzer so that the cached
center, derived subgroup and quotient basis are shared between checks.
"""

from typing import List, Optional
import logging

from ..models.criteria import (
    AdneyYenData,
    CeData,
    DichotomyResult,
    EarnleyGuard,
    JafariTwoResult,
)
from ..models.presentation import Element
from ..models.subgroup import SubgroupRelation
from ..utils.modular import plog
from ..utils.validation import require
from .structure_service import StructureAnalyzer

logger = logging.getLogger(__name__)


def _require_purely_nonabelian(analyzer: StructureAnalyzer) -> None:
    require(
        analyzer.is_purely_nonabelian(),
        f"{analyzer.presentation!r} has an abelian direct factor; "
        "the criterion is stated for purely non-abelian groups only",
    )


def _require_odd(analyzer: StructureAnalyzer) -> None:
    require(analyzer.p != 2, f"criterion needs an odd prime, got p = {analyzer.p}")


def quotient_order(analyzer: StructureAnalyzer, g: Element) -> int:
    """Order of g gamma_2(G) in G/gamma_2(G)."""
    derived = analyzer.above_derived([])
    order, power = 1, g
    while not analyzer.contains(derived, power):
        power = analyzer.collector.power(power, analyzer.p)
        order *= analyzer.p
    return order


def _maximal_order_candidates(analyzer: StructureAnalyzer, c: int) -> List[Element]:
    """Generators of cyclic factors of G/gamma_2 of the maximal order p^c."""
    top = analyzer.p**c
    basis = analyzer.quotient_basis
    candidates = [g for g, o in zip(basis.generators, basis.orders) if o == top]
    for i in range(analyzer.d):
        x = analyzer.collector.generator(i)
        if x not in candidates and quotient_order(analyzer, x) == top:
            candidates.append(x)
    return candidates


def adney_yen(analyzer: StructureAnalyzer) -> AdneyYenData:
    """
    Autcent(G) is abelian iff R = K and either d = b, or d > b and
    R/gamma_2 is generated by the p^b-th power of a maximal-order
    generator of G/gamma_2.
    """
    _require_odd(analyzer)
    _require_purely_nonabelian(analyzer)
    p = analyzer.p
    center = analyzer.center()
    a = plog(center.exponent, p)
    b = plog(analyzer.derived.exponent, p)
    c = plog(analyzer.section_type("G/gamma2").exponent, p)
    d = min(a, c)
    R = analyzer.omega_of_central(center, d)
    K = analyzer.agemo_above_derived(b)
    r_equals_k = analyzer.compare_subgroups(R, K) == SubgroupRelation.EQUAL

    cyclic_condition = False
    witness: Optional[Element] = None
    if d > b:
        for f in _maximal_order_candidates(analyzer, c):
            w = analyzer.collector.power(f, p**b)
            generated = analyzer.above_derived([w])
            if analyzer.compare_subgroups(R, generated) == SubgroupRelation.EQUAL:
                cyclic_condition, witness = True, w
                break

    data = AdneyYenData(a, b, c, d, R, K, r_equals_k, cyclic_condition, witness)
    logger.info(
        f"R = K test on {analyzer.presentation!r}: a={a} b={b} c={c} d={d}, "
        f"R = K {r_equals_k}, cyclic {cyclic_condition}, abelian {data.abelian}"
    )
    return data


def jafari_odd(analyzer: StructureAnalyzer) -> bool:
    """Autcent(G) elementary abelian iff exp Z = p or exp G/gamma_2 = p."""
    _require_odd(analyzer)
    _require_purely_nonabelian(analyzer)
    p = analyzer.p
    return (
        analyzer.center().exponent == p
        or analyzer.section_type("G/gamma2").exponent == p
    )


def _elementary_part_in_derived(analyzer: StructureAnalyzer, ce: CeData) -> bool:
    """
    Some elementary complement of a cyclic part of Z lies in gamma_2.

    Complements of rank r - 1 inside W = Omega_1(Z) & gamma_2 are exactly
    the hyperplanes of Omega_1(Z) avoiding u, the involution of the cyclic
    part; one exists iff W is all of Omega_1(Z), or W has rank r - 1 and
    misses u.
    """
    center = analyzer.center()
    rank = ce.elementary_rank + 1
    omega = analyzer.omega_of_central(center, 1)
    inside = [
        analyzer.collector.word(omega.basis, coefficients)
        for _, coefficients in analyzer.central_elements(omega)
    ]
    inside = [z for z in inside if analyzer.contains(analyzer.derived, z)]
    w_rank = analyzer.central_subgroup(inside).size_exponent
    if w_rank == rank:
        return True
    if w_rank != rank - 1:
        return False
    big = max(center.orders)
    u = analyzer.collector.power(center.basis[center.orders.index(big)], big // 2)
    return not analyzer.contains(analyzer.derived, u)


def _order_four_witness(
    analyzer: StructureAnalyzer, ce: CeData, c: int
) -> Optional[Element]:
    """
    z of order 4 in a cyclic part of Z whose image lies in a cyclic part of
    G/gamma_2 and has order 2^{c-1}.
    """
    center = analyzer.center()
    m = plog(ce.cyclic_part_order, 2)
    pool = analyzer.agemo_of_central(center, m - 2)
    frattini = analyzer.frattini()
    for _, coefficients in analyzer.central_elements(pool):
        z = analyzer.collector.word(pool.basis, coefficients)
        if analyzer.collector.element_order(z) != 4:
            continue
        if not analyzer.contains(frattini, z):
            continue
        if quotient_order(analyzer, z) == 2 ** (c - 1):
            return z
    return None


def jafari_two(analyzer: StructureAnalyzer) -> JafariTwoResult:
    """The three conditions for elementary abelian Autcent(G) at p = 2."""
    require(analyzer.p == 2, f"criterion is stated for p = 2, got p = {analyzer.p}")
    _require_purely_nonabelian(analyzer)
    quotient = analyzer.section_type("G/gamma2")
    center = analyzer.section_type("Z")
    result = JafariTwoResult()
    if quotient.exponent == 2:
        result.satisfied.append(1)
    if center.exponent == 2:
        result.satisfied.append(2)

    a = plog(center.exponent, 2)
    c = plog(quotient.exponent, 2)
    quotient_ce, center_ce = CeData.of(quotient), CeData.of(center)
    if min(a, c) == 2 and quotient_ce.is_ce and center_ce.is_ce:
        if _elementary_part_in_derived(analyzer, center_ce):
            witness = _order_four_witness(analyzer, center_ce, c)
            if witness is not None:
                result.satisfied.append(3)
                result.witness = witness
    logger.info(
        f"p = 2 conditions on {analyzer.presentation!r}: satisfied {result.satisfied}"
    )
    return result


def earnley_guard(analyzer: StructureAnalyzer) -> EarnleyGuard:
    """Non-abelian groups of exponent p (p odd) have non-abelian Aut(G)."""
    _require_odd(analyzer)
    exponent = analyzer.exponent()
    nonabelian = not analyzer.presentation.is_abelian
    return EarnleyGuard(nonabelian and exponent == analyzer.p, exponent, nonabelian)


def dichotomy(analyzer: StructureAnalyzer) -> DichotomyResult:
    """
    For Aut(G) elementary abelian: Z = Phi elementary, or gamma_2 = Phi
    elementary; and exp G = p^2.
    """
    _require_odd(analyzer)
    frattini = analyzer.frattini()
    center = analyzer.center()
    derived = analyzer.derived
    branch1 = (
        analyzer.compare_subgroups(center, frattini) == SubgroupRelation.EQUAL
        and center.is_elementary
    )
    branch2 = (
        analyzer.compare_subgroups(derived, frattini) == SubgroupRelation.EQUAL
        and derived.is_elementary
    )
    exponent = analyzer.exponent()
    result = DichotomyResult(
        branch1,
        branch2,
        exponent,
        exponent == analyzer.p**2,
        analyzer.exponent_balance(),
    )
    if result.violated:
        logger.warning(
            f"{analyzer.presentation!r} fails the elementary-abelian Aut(G) dichotomy"
        )
    return result
