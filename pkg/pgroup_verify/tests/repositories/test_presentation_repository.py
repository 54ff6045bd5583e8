import pytest

from pgroup_verify.models.family import FamilyKind, FamilySpec
from pgroup_verify.repositories.base import DATA_DIR
from pgroup_verify.repositories.presentation_repository import PresentationRepository
from pgroup_verify.services.family_service import FamilyFactory
from pgroup_verify.utils.validation import PresentationError


GOLDEN = [
    ("family_a_p3_n4", FamilySpec(FamilyKind.A, 3, 4)),
    ("family_b_p3", FamilySpec(FamilyKind.B, 3)),
    ("family_c_p3", FamilySpec(FamilyKind.C, 3)),
    ("heisenberg_p3", FamilySpec(FamilyKind.HEISENBERG, 3)),
]


@pytest.fixture
def repo():
    return PresentationRepository()


@pytest.mark.parametrize("name,spec", GOLDEN)
def test_bundled_files_match_constructors(repo, name, spec):
    presentation = FamilyFactory.build(spec)
    text = (DATA_DIR / "presentations" / f"{name}.pcp").read_text(encoding="utf-8")
    assert repo.serialize(presentation, comments=[spec.label]) == text
    assert repo.load(name) == presentation


def test_available_lists_bundled_files(repo):
    assert "heisenberg_p3" in repo.available()


def test_parse_inverts_printed_orientation(repo):
    presentation = repo.parse("p 3\nd 3\norders 1 1 1\ncomm 1 2 = 0 0 1\n")
    assert presentation.comm(1, 0) == (0, 0, 2)


def test_parse_cyclic_group_without_comm_lines(repo):
    presentation = repo.parse("p 3\nd 1\norders 2\n")
    assert presentation.is_abelian
    assert presentation.moduli == (9,)


def test_comments_and_blank_lines_are_ignored(repo):
    text = "# header\n\np 3   # the prime\nd 2\norders 1 1\n"
    assert repo.parse(text).d == 2


def test_self_commutator_reports_line(repo):
    with pytest.raises(PresentationError, match="self-commutator") as info:
        repo.parse("p 3\nd 2\norders 1 1\ncomm 1 1 = 0 0\n")
    assert info.value.line == 4


def test_non_integer_reports_line_and_column(repo):
    with pytest.raises(PresentationError) as info:
        repo.parse("p 3\nd x\n")
    assert info.value.line == 2
    assert info.value.column == 3
    assert str(info.value).startswith("line 2, column 3: ")


def test_exponent_out_of_range_reports_column(repo):
    with pytest.raises(PresentationError, match="out of range") as info:
        repo.parse("p 3\nd 2\norders 1 1\ncomm 1 2 = 0 3\n")
    assert info.value.line == 4
    assert info.value.column == 14


@pytest.mark.parametrize(
    "text,message",
    [
        ("p 4\nd 1\norders 1\n", "prime"),
        ("p 3\nd 2\norders 1\n", ""),
        ("p 3\nd 2\norders 1 1\ncomm 1 2 0 0\n", "expected 'comm"),
        ("p 3\nd 2\norders 1 1\ncomm 1 2 = 0\n", "needs 2 exponents"),
        ("p 3\nd 2\norders 1 1\nrel 1 2\n", "unknown directive"),
        ("p 3\nd 2\n", "missing"),
        ("p 3\np 3\n", "twice"),
    ],
)
def test_malformed_input(repo, text, message):
    with pytest.raises(PresentationError, match=message):
        repo.parse(text)


def test_json_round_trip(repo, group_b):
    text = repo.serialize_json(group_b)
    assert repo.parse_json(text) == group_b


def test_invalid_json_reports_position(repo):
    with pytest.raises(PresentationError) as info:
        repo.parse_json('{"p": 3,\n "orders": [1, }')
    assert info.value.line == 2


def test_json_schema_errors(repo):
    with pytest.raises(PresentationError, match="invalid presentation"):
        repo.parse_json(
            '{"p": 3, "orders": [1, 1], '
            '"commutators": [{"i": 2, "j": 1, "value": [0, 0]}]}'
        )


def test_save_and_load_json_file(repo, tmp_path, heis):
    path = repo.save(heis, tmp_path / "out" / "heis.json")
    assert path.exists()
    assert repo.load(path) == heis


def test_save_and_load_text_file(repo, tmp_path, group_c):
    path = repo.save(group_c, tmp_path / "c.pcp")
    assert repo.load(path) == group_c


def test_missing_file(repo, tmp_path):
    with pytest.raises(FileNotFoundError):
        repo.load(tmp_path / "nope.pcp")
