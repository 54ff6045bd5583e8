import pytest

from pgroup_verify.models.subgroup import SubgroupRelation
from pgroup_verify.services.family_service import (
    abelian,
    family_a,
    heisenberg_times_cyclic,
)
from pgroup_verify.services.structure_service import StructureAnalyzer
from pgroup_verify.utils.validation import CapExceededError


@pytest.fixture(scope="module")
def analyzer_a5():
    return StructureAnalyzer(family_a(3, 5))


def orders(section):
    return section.orders


# derived subgroup and center


def test_derived_subgroup(analyzer_a, analyzer_b):
    assert analyzer_a.derived.size_exponent == 6
    assert orders(analyzer_a.derived.section_type) == (9, 9, 9)
    assert analyzer_b.derived.size_exponent == 4
    assert analyzer_b.derived.is_elementary


def test_trivial_commutator_table_has_trivial_derived_subgroup():
    analyzer = StructureAnalyzer(abelian(3, (2, 1)))
    assert analyzer.derived.is_trivial


def test_center_family_a(analyzer_a, analyzer_a5):
    assert analyzer_a.compare_subgroups(
        analyzer_a.center(), analyzer_a.derived
    ) == SubgroupRelation.EQUAL
    center = analyzer_a5.center()
    assert center.size_exponent == 7
    assert orders(center.section_type) == (27, 9, 9)


def test_center_family_c_equals_frattini(analyzer_c):
    center = analyzer_c.center()
    assert center.size_exponent == 4
    assert center.is_elementary
    assert analyzer_c.compare_subgroups(
        center, analyzer_c.frattini()
    ) == SubgroupRelation.EQUAL


def test_center_family_b_type(analyzer_b):
    assert orders(analyzer_b.section_type("Z")) == (9, 3, 3, 3)


def test_center_matches_brute_force(heis):
    analyzer = StructureAnalyzer(heis)
    brute = analyzer.brute_force_center()
    assert len(brute) == 3
    assert all(analyzer.contains(analyzer.center(), z) for z in brute)
    assert analyzer.center().size_exponent == 1


@pytest.mark.parametrize("name", ["group_b", "group_c"])
def test_center_of_families_matches_brute_force(request, name):
    analyzer = StructureAnalyzer(request.getfixturevalue(name))
    brute = analyzer.brute_force_center()
    center = analyzer.center()
    assert len(brute) == 3**center.size_exponent
    assert all(analyzer.contains(center, z) for z in brute)


# agemo, Frattini and omega


def test_agemo_of_central(analyzer_b, analyzer_a5):
    center_b = analyzer_b.center()
    assert orders(analyzer_b.agemo_of_central(center_b, 1).section_type) == (3,)
    assert analyzer_b.agemo_of_central(center_b, 2).is_trivial
    center_a5 = analyzer_a5.center()
    assert orders(analyzer_a5.agemo_of_central(center_a5, 1).section_type) == (9, 3, 3)
    assert orders(analyzer_a5.agemo_of_central(center_a5, 2).section_type) == (3,)
    assert analyzer_a5.compare_subgroups(
        analyzer_a5.agemo_of_central(center_a5, 0), center_a5
    ) == SubgroupRelation.EQUAL


def test_agemo_above_derived(analyzer_a, analyzer_b):
    assert analyzer_a.compare_subgroups(
        analyzer_a.agemo_above_derived(2), analyzer_a.center()
    ) == SubgroupRelation.EQUAL
    assert analyzer_a.agemo_above_derived(0).size_exponent == 14
    assert analyzer_b.compare_subgroups(
        analyzer_b.agemo_above_derived(1), analyzer_b.derived
    ) == SubgroupRelation.EQUAL


def test_frattini(analyzer_a, analyzer_b, analyzer_c):
    assert analyzer_a.frattini().size_exponent == 10
    assert analyzer_a.frattini_rank() == 4
    assert analyzer_b.frattini().size_exponent == 4
    assert analyzer_b.frattini_rank() == 5
    assert analyzer_c.frattini().size_exponent == 4
    assert analyzer_c.frattini_rank() == 4
    assert analyzer_c.derived.size_exponent == 3
    assert analyzer_c.compare_subgroups(
        analyzer_c.derived, analyzer_c.frattini()
    ) == SubgroupRelation.PROPER_SUBGROUP


def test_omega_of_central(analyzer_a, analyzer_b):
    center_a = analyzer_a.center()
    assert analyzer_a.compare_subgroups(
        analyzer_a.omega_of_central(center_a, 2), center_a
    ) == SubgroupRelation.EQUAL
    omega_b = analyzer_b.omega_of_central(analyzer_b.center(), 1)
    assert omega_b.size_exponent == 4
    assert analyzer_b.compare_subgroups(omega_b, analyzer_b.derived) == SubgroupRelation.EQUAL
    assert analyzer_a.omega_of_central(center_a, 0).is_trivial


# sections


def test_section_types(analyzer_a5, analyzer_b, analyzer_c):
    assert orders(analyzer_a5.section_type("G/gamma2")) == (27, 9, 9, 9)
    assert orders(analyzer_b.section_type("G/gamma2")) == (3, 3, 3, 3, 3)
    assert orders(analyzer_c.section_type("Z")) == (3, 3, 3, 3)
    assert analyzer_b.section_type("G/Phi").rank == 5


def test_section_orders_multiply_up(analyzer_a5):
    whole = analyzer_a5.presentation.order_exponent
    quotient = analyzer_a5.section_type("G/Z").size_exponent
    assert quotient + analyzer_a5.section_type("Z").size_exponent == whole
    gamma = analyzer_a5.section_type("gamma2").size_exponent
    assert gamma + analyzer_a5.section_type("Z/gamma2").size_exponent == 7


def test_unknown_section_rejected(analyzer_a):
    with pytest.raises(ValueError, match="Unknown section"):
        analyzer_a.section_type("G/G")


# exponent and enumeration


def test_exponent(analyzer_a, analyzer_b, heis):
    assert analyzer_a.exponent() == 81
    assert analyzer_b.exponent() == 9
    assert StructureAnalyzer(heis).exponent() == 3


def test_enumerate_elements(analyzer_b, analyzer_c):
    assert analyzer_c.enumerate_elements()[0] == 6561
    assert analyzer_b.enumerate_elements()[0] == 19683


@pytest.mark.slow
def test_enumerate_family_a_elements(analyzer_a):
    assert analyzer_a.enumerate_elements()[0] == 4782969


def test_enumeration_cap(analyzer_c):
    with pytest.raises(CapExceededError):
        analyzer_c.enumerate_elements(cap=100)


def test_omega_subgroup_of_group(heis):
    # the Heisenberg group at p = 3 has exponent 3
    assert StructureAnalyzer(heis).omega_subgroup_of_group(1) == 27


# comparison and direct factors


def test_chains(analyzer_a5, analyzer_b):
    assert analyzer_a5.compare_subgroups(
        analyzer_a5.derived, analyzer_a5.center()
    ) == SubgroupRelation.PROPER_SUBGROUP
    assert analyzer_b.compare_subgroups(
        analyzer_b.center(), analyzer_b.frattini()
    ) == SubgroupRelation.PROPER_SUPERGROUP
    frattini = analyzer_b.frattini()
    assert analyzer_b.compare_subgroups(frattini, frattini) == SubgroupRelation.EQUAL


def test_purely_nonabelian(analyzer_a, analyzer_b):
    assert analyzer_a.is_purely_nonabelian()
    assert analyzer_b.is_purely_nonabelian()
    assert not StructureAnalyzer(heisenberg_times_cyclic(3)).is_purely_nonabelian()


def test_element_height(analyzer_a):
    collector = analyzer_a.collector
    x1 = collector.generator(0)
    assert analyzer_a.element_height(x1) == 0
    assert analyzer_a.element_height(collector.power(x1, 3)) == 1
    assert analyzer_a.element_height(analyzer_a.derived.basis[0]) == analyzer_a.E + 1


def test_exponent_balance(analyzer_b):
    gamma, quotient = analyzer_b.exponent_balance()
    assert gamma == quotient == 3
