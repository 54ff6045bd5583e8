import pytest

from pgroup_verify.models.presentation import PcPresentation
from pgroup_verify.services.consistency_service import (
    CHECK_CENTRAL,
    validate_consistency,
)
from pgroup_verify.services.family_service import (
    abelian,
    family_a,
    family_b,
    family_c,
    heisenberg,
)
from pgroup_verify.utils.validation import PresentationError


def test_printed_relation_is_stored_inverted(group_a):
    # [x1, x2] = x2^9 is stored as [x2, x1] = x2^-9
    assert group_a.comm(1, 0) == (0, 72, 0, 0)
    assert group_a.printed(1, 2) == (0, 9, 0, 0)
    assert group_a.commutator_of_generators(0, 1) == (0, 9, 0, 0)


def test_family_a_shape(group_a):
    assert group_a.exponents == (4, 4, 4, 2)
    assert group_a.d == 4
    assert group_a.order_exponent == 14
    assert group_a.moduli == (81, 81, 81, 9)
    assert len(group_a.nontrivial_pairs()) == 6


def test_cyclic_group_without_commutators():
    cyclic = PcPresentation(3, (2,))
    assert cyclic.is_abelian
    assert cyclic.order_exponent == 2
    assert cyclic.comm(0, 0) == (0,)


def test_non_prime_rejected():
    with pytest.raises(PresentationError, match="prime"):
        PcPresentation(4, (1, 1))


def test_stored_key_must_have_j_greater_than_i():
    with pytest.raises(PresentationError):
        PcPresentation.from_commutators(3, (1, 1, 1), {(0, 1): (0, 0, 1)})


def test_self_commutator_rejected():
    with pytest.raises(PresentationError, match="self-commutator"):
        PcPresentation.from_printed(3, (1, 1), {(1, 1): (0, 0)})


def test_value_out_of_range_rejected():
    with pytest.raises(PresentationError, match="out of range"):
        PcPresentation.from_commutators(3, (1, 1, 1), {(1, 0): (0, 0, 3)})


def test_zero_values_are_dropped():
    presentation = PcPresentation.from_commutators(3, (1, 1), {(1, 0): (0, 0)})
    assert presentation.is_abelian
    assert presentation.relations == ()


def test_to_dict_uses_printed_orientation(heis):
    data = heis.to_dict()
    assert data == {
        "p": 3,
        "orders": [1, 1, 1],
        "commutators": [{"i": 1, "j": 2, "value": [0, 0, 1]}],
    }


@pytest.mark.parametrize("p", [2, 3, 5])
def test_families_are_consistent(p):
    for presentation in (family_a(p, 4), family_b(p), family_c(p), heisenberg(p)):
        report = validate_consistency(presentation)
        assert report.ok, report.failures


def test_abelian_presentations_are_consistent():
    assert validate_consistency(abelian(3, (2, 1, 1))).ok


def test_non_central_value_fails_central_check(group_a):
    broken = group_a.replace_commutator(1, 0, (0, 0, 1, 0))
    report = validate_consistency(broken)
    assert not report.ok
    assert CHECK_CENTRAL in report.checks_failed()
