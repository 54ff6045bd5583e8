import pytest

from pgroup_verify.models.symbolic import FixtureSet
from pgroup_verify.repositories.factory import RepositoryFactory, create_repository_container
from pgroup_verify.repositories.fixture_repository import FixtureRepository
from pgroup_verify.utils.validation import FixtureFormatError


@pytest.fixture
def repo():
    return FixtureRepository()


def test_load_family_c(repo):
    fixtures = repo.load("family_c")
    assert fixtures.name == "family-c"
    assert fixtures.d == 4
    assert len(fixtures.equations) == 16
    assert fixtures.notes
    assert all(eq.target == 1 for eq in fixtures.equations)


def test_family_a_moduli_depend_on_n(repo):
    with pytest.raises(FixtureFormatError, match="load with n set"):
        repo.load("family_a")
    fixtures = repo.with_n(5).load("family_a")
    targets = {eq.source: eq.target for eq in fixtures.equations}
    assert targets["rel01"] == 3
    assert targets["rel02"] == 2
    assert targets["omega1"] == 3


def test_equation_terms(repo):
    fixtures = repo.parse("d 2\nfirst: a11 + 3*a12*a21 mod p^2\na22 mod p\n")
    first, second = fixtures.equations
    assert first.source == "first"
    assert first.target == 2
    assert first.terms == ((1, ((0, 1),)), (3, ((1, 1), (2, 1))))
    assert second.source == "eq2"
    assert second.target == 1


def test_zero_assignment_satisfies_bundled_fixtures(repo):
    for name in ("family_b", "family_c"):
        fixtures = repo.load(name)
        zeros = [0] * fixtures.d**2
        assert fixtures.violated(zeros, 3) == []


def test_violated_lists_sources():
    fixtures = FixtureRepository().parse("d 1\nonly: a11 mod p\n")
    assert fixtures.violated([1], 3) == ["only"]
    assert fixtures.violated([3], 3) == []


@pytest.mark.parametrize(
    "text,message",
    [
        ("a11 mod p\n", "equation before 'd'"),
        ("name x\n", "declares no 'd'"),
        ("d two\n", "d must be an integer"),
        ("d 2\na11 + a33 mod p\n", "unknown symbols"),
        ("d 2\na11 = 0\n", "expected"),
        ("d 2\na11/2 mod p\n", "integer polynomial"),
        ("d 2\na11 mod p^0\n", "positive integer"),
    ],
)
def test_malformed_fixtures(repo, text, message):
    with pytest.raises(FixtureFormatError, match=message):
        repo.parse(text)


def test_serialize_then_parse_keeps_equations(repo):
    fixtures = repo.load("family_c")
    again = repo.parse(repo.serialize(fixtures))
    assert isinstance(again, FixtureSet)
    assert again.equations == fixtures.equations


def test_repository_factory():
    assert isinstance(RepositoryFactory.create_repository("fixtures"), FixtureRepository)
    with pytest.raises(ValueError, match="No repository named"):
        RepositoryFactory.create_repository("clients")


def test_repository_container_uses_data_dir(tmp_path):
    container = create_repository_container(tmp_path)
    assert container["fixture_repository"].data_dir == tmp_path / "fixtures"
    assert container["presentation_repository"].data_dir == tmp_path / "presentations"
