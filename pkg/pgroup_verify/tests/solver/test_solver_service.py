import dataclasses

import pytest

from pgroup_verify.models.verdict import Assignment, VerdictKind
from pgroup_verify.services.criteria_service import adney_yen, jafari_odd, jafari_two
from pgroup_verify.services.family_service import family_a, family_b, family_c
from pgroup_verify.services.hom_service import autcent_order
from pgroup_verify.services.hom_service import is_automorphism, is_endomorphism
from pgroup_verify.services.solver_service import (
    ORDERINGS,
    Budget,
    BudgetExhausted,
    CentralitySolver,
    SolverOptions,
    variable_order,
    verify_all_central,
)
from pgroup_verify.services.structure_service import StructureAnalyzer
from pgroup_verify.services.symbolic_service import generate_system


@pytest.fixture(scope="module")
def heis_system(heis):
    return generate_system(heis)


# level 0


def test_level0_family_c_has_only_the_zero_pattern(group_c):
    solver = CentralitySolver(generate_system(group_c))
    result = solver.solve_level0(Budget(10**7))
    assert result.complete
    assert len(result.solutions) == 1
    assert not any(result.solutions[0])


def test_level0_heisenberg_has_several_patterns(heis_system):
    result = CentralitySolver(heis_system).solve_level0(Budget(10**7))
    assert result.complete
    assert len(result.solutions) > 1
    assert all(heis_system.pattern.is_invertible(s) for s in result.solutions)


def test_level0_of_inconsistent_system_is_empty(heis_system):
    broken = dataclasses.replace(heis_system, inconsistent=True)
    result = CentralitySolver(broken).solve_level0(Budget(10))
    assert result.solutions == []
    assert result.complete


def test_level0_budget_flags_partial_result(heis_system):
    result = CentralitySolver(heis_system).solve_level0(Budget(3))
    assert not result.complete
    assert "budget" in result.reason


@pytest.mark.parametrize("ordering", ORDERINGS)
def test_variable_order_is_a_permutation(heis_system, ordering):
    order = variable_order(heis_system, ordering)
    assert sorted(order) == list(range(len(heis_system.variables)))


def test_unknown_ordering_rejected(heis_system):
    with pytest.raises(ValueError, match="Unknown ordering"):
        variable_order(heis_system, "random")


# descent


def test_descent_from_heisenberg_pattern_finds_witness(heis_system):
    solver = CentralitySolver(heis_system)
    patterns = solver.solve_level0(Budget(10**7)).solutions
    witnesses = [
        solver.descend(Assignment(values, 1), Budget(10**6)) for values in patterns
    ]
    assert any(w is not None for w in witnesses)


def test_descent_rejects_violating_base(group_a):
    system = generate_system(group_a)
    solver = CentralitySolver(system)
    values = [0] * len(system.variables)
    values[system.by_name()["a11"]] = 1
    assert solver.descend(Assignment(values, 2), Budget(10)) is None


def test_budget_tick_raises():
    budget = Budget(2)
    budget.tick()
    budget.tick()
    with pytest.raises(BudgetExhausted):
        budget.tick()


# full verification


def test_heisenberg_has_non_central_automorphism(heis):
    verdict = verify_all_central(heis, SolverOptions(max_seconds=None))
    assert verdict.kind == VerdictKind.COUNTEREXAMPLE
    witness = verdict.witness
    assert is_endomorphism(heis, witness.images)
    assert is_automorphism(heis, witness.images)
    collector = StructureAnalyzer(heis).collector
    assert not all(collector.is_central(part) for part in witness.central_parts)


def test_family_c_all_central(group_c):
    verdict = verify_all_central(group_c, SolverOptions(max_seconds=None))
    assert verdict.kind == VerdictKind.ALL_CENTRAL
    assert verdict.all_central
    assert verdict.surviving_patterns == 1


def test_tiny_budget_is_inconclusive(group_b):
    verdict = verify_all_central(group_b, SolverOptions(max_nodes=5, max_seconds=None))
    assert verdict.kind == VerdictKind.INCONCLUSIVE
    assert "budget" in verdict.reason


def test_verdict_independent_of_worker_count(heis):
    serial = verify_all_central(heis, SolverOptions(max_seconds=None, workers=1))
    parallel = verify_all_central(heis, SolverOptions(max_seconds=None, workers=2))
    assert serial.kind == parallel.kind
    assert serial.witness.values == parallel.witness.values
    assert serial.stats.counts() == parallel.stats.counts()


@pytest.mark.parametrize("ordering", ORDERINGS)
def test_verdict_independent_of_ordering(group_c, ordering):
    options = SolverOptions(max_seconds=None, ordering=ordering)
    assert verify_all_central(group_c, options).kind == VerdictKind.ALL_CENTRAL


# family verdicts


@pytest.mark.parametrize("n", [4, 5, 6])
def test_family_a_all_central(n):
    presentation = family_a(3, n)
    verdict = verify_all_central(presentation, SolverOptions(max_seconds=None))
    assert verdict.kind == VerdictKind.ALL_CENTRAL
    analyzer = StructureAnalyzer(presentation)
    assert autcent_order(analyzer) == n + 20
    data = adney_yen(analyzer)
    assert data.r_equals_k
    assert data.abelian
    assert not jafari_odd(analyzer)
    if n > 4:
        assert data.cyclic_condition


def test_family_b_all_central(group_b, analyzer_b):
    verdict = verify_all_central(group_b, SolverOptions(max_seconds=None))
    assert verdict.kind == VerdictKind.ALL_CENTRAL
    assert autcent_order(analyzer_b) == 20
    assert jafari_odd(analyzer_b)


@pytest.mark.parametrize(
    "builder,autcent,condition",
    [(family_b, 20, [1]), (family_c, 16, [2])],
)
def test_families_at_p_two_all_central(builder, autcent, condition):
    presentation = builder(2)
    verdict = verify_all_central(presentation, SolverOptions(max_seconds=None))
    assert verdict.kind == VerdictKind.ALL_CENTRAL
    analyzer = StructureAnalyzer(presentation)
    assert autcent_order(analyzer) == autcent
    assert jafari_two(analyzer).satisfied == condition


@pytest.mark.parametrize("name", ["group_a", "group_b"])
@pytest.mark.parametrize(
    "ordering", ["constrained", pytest.param("natural", marks=pytest.mark.slow)]
)
def test_family_verdicts_independent_of_workers(request, name, ordering):
    presentation = request.getfixturevalue(name)
    serial, *parallel = [
        verify_all_central(
            presentation,
            SolverOptions(max_seconds=None, ordering=ordering, workers=workers),
        )
        for workers in (1, 2, 8)
    ]
    assert serial.kind == VerdictKind.ALL_CENTRAL
    for verdict in parallel:
        assert verdict.kind == serial.kind
        assert verdict.surviving_patterns == serial.surviving_patterns
        assert verdict.stats.counts() == serial.stats.counts()


# node budget


@pytest.mark.parametrize("workers", [1, 2])
def test_node_budget_covers_the_whole_search(heis, workers):
    full = verify_all_central(heis, SolverOptions(max_seconds=None))
    exact = SolverOptions(max_nodes=full.stats.nodes, max_seconds=None, workers=workers)
    assert verify_all_central(heis, exact).kind == VerdictKind.COUNTEREXAMPLE
    short = SolverOptions(
        max_nodes=full.stats.nodes - 1, max_seconds=None, workers=workers
    )
    verdict = verify_all_central(heis, short)
    assert verdict.kind == VerdictKind.INCONCLUSIVE
    assert "node budget" in verdict.reason

