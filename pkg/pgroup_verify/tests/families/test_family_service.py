import pytest

from pgroup_verify.models.family import FamilyKind, FamilySpec
from pgroup_verify.services.consistency_service import validate_consistency
from pgroup_verify.services.family_service import (
    FamilyFactory,
    family_a,
    family_b,
    family_c,
    heisenberg_times_cyclic,
)
from pgroup_verify.utils.validation import PreconditionError, PresentationError


def test_family_a_printed_relations():
    group = family_a(3, 4)
    assert group.printed(1, 2) == (0, 9, 0, 0)
    assert group.printed(1, 3) == (0, 9, 0, 0)
    assert group.printed(1, 4) == (0, 0, 9, 0)
    assert group.printed(2, 3) == (9, 0, 0, 0)
    assert group.printed(2, 4) == (0, 0, 9, 0)
    assert group.printed(3, 4) == (0, 9, 0, 0)


def test_family_a_orders_grow_with_n():
    assert family_a(3, 5).exponents == (5, 4, 4, 2)
    assert family_a(3, 5).printed(2, 3) == (27, 0, 0, 0)
    assert family_a(5, 4).moduli == (625, 625, 625, 25)


def test_family_a_needs_n_at_least_four():
    with pytest.raises(PreconditionError, match="n >= 4"):
        family_a(3, 3)


def test_group_orders():
    assert 3 ** family_a(3, 4).order_exponent == 4782969
    assert 3 ** family_b(3).order_exponent == 19683
    assert 3 ** family_c(3).order_exponent == 6561


def test_family_shapes():
    assert family_b(3).exponents == (2, 2, 2, 2, 1)
    assert len(family_b(3).nontrivial_pairs()) == 6
    assert family_c(3).exponents == (2, 2, 2, 2)
    assert len(family_c(3).nontrivial_pairs()) == 5


@pytest.mark.parametrize("builder", [family_b, family_c, heisenberg_times_cyclic])
def test_families_at_p_two_are_consistent(builder):
    assert validate_consistency(builder(2)).ok


def test_non_prime_rejected():
    with pytest.raises(PresentationError, match="prime"):
        family_b(6)


def test_factory_builds_every_family():
    for name in FamilyFactory.available():
        spec = FamilySpec(FamilyKind(name), 3, 4 if name == "A" else None)
        presentation = FamilyFactory.build(spec)
        assert presentation.p == 3


def test_factory_defaults():
    assert FamilyFactory.build(FamilySpec(FamilyKind.A, 3)).exponents == (4, 4, 4, 2)
    assert FamilyFactory.build(FamilySpec(FamilyKind.ABELIAN, 3)).exponents == (1,)
    abelian = FamilyFactory.build(FamilySpec(FamilyKind.ABELIAN, 3, orders=(1, 1)))
    assert abelian.is_abelian
    assert abelian.d == 2


def test_factory_rejects_custom():
    with pytest.raises(ValueError, match="no constructor"):
        FamilyFactory.build(FamilySpec(FamilyKind.CUSTOM, 3))


def test_available_lists_value_strings():
    available = FamilyFactory.available()
    assert "A" in available
    assert "heisenberg" in available
    assert "custom" not in available


def test_labels():
    assert FamilySpec(FamilyKind.A, 3, 4).label == "A(p=3, n=4)"
    assert FamilySpec(FamilyKind.B, 3).label == "B(p=3)"
    assert FamilySpec(FamilyKind.ABELIAN, 3, orders=(1, 1)).label == "abelian(p=3, orders=[1, 1])"
