import random

import pytest

from pgroup_verify.models.presentation import PcPresentation
from pgroup_verify.models.verdict import VerdictKind
from pgroup_verify.services.consistency_service import validate_consistency
from pgroup_verify.services.family_service import abelian
from pgroup_verify.services.hom_service import is_automorphism, is_endomorphism
from pgroup_verify.services.oracle_service import bruteforce_aut
from pgroup_verify.services.solver_service import SolverOptions, verify_all_central
from pgroup_verify.utils.validation import CapExceededError, PreconditionError


def test_cyclic_group_of_order_three():
    result = bruteforce_aut(abelian(3, (1,)))
    assert result.automorphisms == 2
    assert result.central == 2


def test_elementary_abelian_rank_two_matches_gl2():
    # |GL(2, 3)| = (9 - 1)(9 - 3)
    result = bruteforce_aut(abelian(3, (1, 1)))
    assert result.automorphisms == 48
    assert result.all_central


def test_heisenberg(heis):
    result = bruteforce_aut(heis)
    assert result.automorphisms == 432
    assert result.central == 9
    assert not result.all_central


def test_kept_images_are_automorphisms(heis):
    result = bruteforce_aut(heis, keep_images=True)
    assert len(result.images) == 432
    for images in result.images[:20]:
        assert is_endomorphism(heis, images)
        assert is_automorphism(heis, images)


def test_too_many_generators(group_b):
    with pytest.raises(PreconditionError, match="at most 4 generators"):
        bruteforce_aut(group_b)


def test_cap(group_c):
    with pytest.raises(CapExceededError):
        bruteforce_aut(group_c, cap=1000)


def test_mixed_order_abelian_group():
    # |Aut(C9 x C3)| = (p - 1)^2 p^3
    result = bruteforce_aut(abelian(3, (2, 1)))
    assert result.automorphisms == 108
    assert result.central == 108


def random_class_two_groups(count, seed, p=3):
    """Consistent nonabelian class-2 presentations of order at most p^4."""
    rng = random.Random(seed)
    shapes = [(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2), (1, 1, 1, 1)]
    groups = []
    for _ in range(200 * count):
        exponents = rng.choice(shapes)
        d = len(exponents)
        commutators = {}
        for j in range(d):
            for i in range(j):
                if rng.random() < 0.5:
                    continue
                commutators[(j, i)] = tuple(
                    rng.randrange(p**e) if m > j else 0 for m, e in enumerate(exponents)
                )
        presentation = PcPresentation.from_commutators(p, exponents, commutators)
        if presentation.relations and validate_consistency(presentation).ok:
            groups.append(presentation)
            if len(groups) == count:
                break
    assert len(groups) == count
    return groups


@pytest.mark.parametrize("presentation", random_class_two_groups(8, seed=23))
def test_solver_agrees_with_oracle(presentation):
    oracle = bruteforce_aut(presentation)
    verdict = verify_all_central(presentation, SolverOptions(max_seconds=None))
    assert verdict.kind != VerdictKind.INCONCLUSIVE
    assert (verdict.kind == VerdictKind.ALL_CENTRAL) == oracle.all_central
