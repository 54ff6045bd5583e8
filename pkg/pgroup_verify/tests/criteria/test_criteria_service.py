import pytest

from pgroup_verify.models.criteria import CeData, JafariTwoResult
from pgroup_verify.models.subgroup import AbelianSectionType, SubgroupRelation
from pgroup_verify.services.criteria_service import (
    adney_yen,
    dichotomy,
    earnley_guard,
    jafari_odd,
    jafari_two,
)
from pgroup_verify.services.family_service import (
    abelian,
    family_a,
    family_b,
    family_c,
    heisenberg_times_cyclic,
)
from pgroup_verify.services.structure_service import StructureAnalyzer
from pgroup_verify.utils.validation import PreconditionError


# R = K criterion


def test_adney_yen_family_a_n5():
    analyzer = StructureAnalyzer(family_a(3, 5))
    data = adney_yen(analyzer)
    assert (data.a, data.b, data.c, data.d) == (3, 2, 3, 3)
    assert data.r_equals_k
    assert analyzer.compare_subgroups(data.R, analyzer.center()) == SubgroupRelation.EQUAL
    assert data.cyclic_condition
    assert data.cyclic_witness is not None
    assert data.abelian


def test_adney_yen_family_b(analyzer_b):
    data = adney_yen(analyzer_b)
    assert (data.a, data.b, data.c, data.d) == (2, 1, 1, 1)
    assert analyzer_b.compare_subgroups(data.R, analyzer_b.derived) == SubgroupRelation.EQUAL
    assert data.r_equals_k
    assert not data.cyclic_condition
    assert data.abelian


def test_adney_yen_heisenberg(heis):
    data = adney_yen(StructureAnalyzer(heis))
    assert (data.a, data.b, data.c, data.d) == (1, 1, 1, 1)
    assert data.abelian


def test_adney_yen_rejects_abelian_direct_factor():
    with pytest.raises(PreconditionError, match="abelian direct factor"):
        adney_yen(StructureAnalyzer(heisenberg_times_cyclic(3)))


def test_adney_yen_rejects_p_two():
    with pytest.raises(PreconditionError, match="odd prime"):
        adney_yen(StructureAnalyzer(family_b(2)))


# exponent criteria


def test_jafari_odd(analyzer_a, analyzer_b, analyzer_c):
    assert jafari_odd(analyzer_b)
    assert jafari_odd(analyzer_c)
    assert not jafari_odd(analyzer_a)


def test_elementary_autcent_implies_abelian(analyzer_b, analyzer_c):
    for analyzer in (analyzer_b, analyzer_c):
        if jafari_odd(analyzer):
            assert adney_yen(analyzer).abelian


def test_jafari_two_family_b():
    result = jafari_two(StructureAnalyzer(family_b(2)))
    assert result.satisfied == [1]
    assert result.condition == 1


def test_jafari_two_family_c():
    result = jafari_two(StructureAnalyzer(family_c(2)))
    assert result.satisfied == [2]
    assert result.condition == 2


def test_jafari_two_reports_least_condition():
    assert JafariTwoResult(satisfied=[1, 2]).condition == 1
    assert JafariTwoResult().condition is None


def test_jafari_two_needs_p_two(analyzer_b):
    with pytest.raises(PreconditionError, match="p = 2"):
        jafari_two(analyzer_b)


def test_ce_data():
    assert CeData.of(AbelianSectionType(2, (4, 2, 2))) == CeData(True, 4, 2)
    assert not CeData.of(AbelianSectionType(2, (2, 2))).is_ce
    assert not CeData.of(AbelianSectionType(2, (8, 4))).is_ce


# exponent-p guard


def test_earnley_guard(heis, analyzer_a):
    guard = earnley_guard(StructureAnalyzer(heis))
    assert guard.applicable
    assert guard.exponent == 3
    assert not earnley_guard(analyzer_a).applicable


def test_earnley_guard_cyclic_group():
    guard = earnley_guard(StructureAnalyzer(abelian(3, (2,))))
    assert not guard.applicable
    assert not guard.nonabelian
    assert guard.exponent == 9


# dichotomy


def test_dichotomy_family_b(analyzer_b):
    result = dichotomy(analyzer_b)
    assert not result.branch1
    assert result.branch2
    assert result.exponent == 9
    assert result.exponent_is_p_squared
    assert not result.violated


def test_dichotomy_family_c(analyzer_c):
    result = dichotomy(analyzer_c)
    assert result.branch1
    assert not result.branch2
    assert not result.violated


def test_dichotomy_flags_family_a(analyzer_a):
    result = dichotomy(analyzer_a)
    assert result.exponent == 81
    assert result.violated
