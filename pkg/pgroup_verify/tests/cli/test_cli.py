import json

import pytest
from click.testing import CliRunner

from pgroup_verify.cli import cli, run
from pgroup_verify.repositories.base import DATA_DIR


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, ["--env", "testing", *args])


def read_json(path):
    return json.loads(path.read_text(encoding="utf-8"))


# build


def test_build_matches_bundled_file(runner, tmp_path):
    out = tmp_path / "a.pcp"
    result = invoke(
        runner, "build", "--family", "A", "-p", "3", "-n", "4", "--output", str(out)
    )
    assert result.exit_code == 0
    expected = (DATA_DIR / "presentations" / "family_a_p3_n4.pcp").read_text(encoding="utf-8")
    assert out.read_text(encoding="utf-8") == expected


def test_build_json(runner, tmp_path):
    out = tmp_path / "heis.json"
    result = invoke(
        runner, "build", "--family", "heisenberg", "-p", "3",
        "--format", "json", "--output", str(out),
    )
    assert result.exit_code == 0
    assert read_json(out) == {
        "p": 3,
        "orders": [1, 1, 1],
        "commutators": [{"i": 1, "j": 2, "value": [0, 0, 1]}],
    }


def test_family_names_are_case_insensitive(runner, tmp_path):
    out = tmp_path / "heis.pcp"
    result = invoke(runner, "build", "--family", "HEISENBERG", "-p", "3", "--output", str(out))
    assert result.exit_code == 0


# usage errors exit with 1


@pytest.mark.parametrize(
    "args",
    [
        ["analyze"],
        ["analyze", "--family", "B"],
        ["analyze", "--family", "B", "-p", "3", "-n", "5"],
        ["analyze", "--family", "Q", "-p", "3"],
        ["analyze", "--family", "B", "-p", "3", "--file", "x.pcp"],
        ["build", "--family", "A", "-p", "3", "-n", "3"],
        ["build", "--family", "B", "-p", "4"],
        ["fixtures", "--family", "heisenberg", "-p", "3"],
        ["frobnicate"],
    ],
)
def test_usage_errors(runner, args):
    assert invoke(runner, *args).exit_code == 1


def test_malformed_file_reports_line(runner, tmp_path):
    bad = tmp_path / "bad.pcp"
    bad.write_text("p 3\nd 2\norders 1 1\ncomm 1 1 = 0 0\n", encoding="utf-8")
    result = invoke(runner, "analyze", "--file", str(bad))
    assert result.exit_code == 1
    assert "line 4" in result.output


def test_missing_file(runner, tmp_path):
    result = invoke(runner, "analyze", "--file", str(tmp_path / "nope.pcp"))
    assert result.exit_code == 1
    assert "no such file" in result.output


# reports


def test_analyze_family_b_json(runner, tmp_path):
    out = tmp_path / "reports" / "b.json"
    result = invoke(
        runner, "analyze", "--family", "B", "-p", "3",
        "--json", "--no-timestamp", "--output", str(out),
    )
    assert result.exit_code == 0
    report = read_json(out)
    assert report["structure"]["relations"]["Z vs Phi"] == "B<A"
    assert report["criteria"]["autcent_order"] == {"p": 3, "exponent": 20}
    assert report["generated_at"] is None
    assert all(check["passed"] for check in report["checks"])


def test_analyze_bundled_file_by_name(runner, tmp_path):
    out = tmp_path / "heis.json"
    result = invoke(runner, "analyze", "--file", "heisenberg_p3", "--json", "--output", str(out))
    assert result.exit_code == 0
    report = read_json(out)
    assert report["label"] == "heisenberg_p3"
    assert report["checks"] == []
    assert report["generated_at"]


def test_analyze_markdown_to_file(runner, tmp_path):
    out = tmp_path / "c.md"
    result = invoke(runner, "analyze", "--family", "C", "-p", "3", "--output", str(out))
    assert result.exit_code == 0
    text = out.read_text(encoding="utf-8")
    assert text.startswith("# C(p=3)")
    assert "| Z = Phi |" in text


def test_verify_heisenberg_exits_with_counterexample(runner, tmp_path):
    out = tmp_path / "heis.json"
    result = invoke(
        runner, "verify", "--family", "heisenberg", "-p", "3", "--json", "--output", str(out)
    )
    assert result.exit_code == 2
    assert read_json(out)["verdict"]["kind"] == "CounterexampleFound"


def test_verify_with_exhausted_budget_is_inconclusive(runner, tmp_path):
    out = tmp_path / "b.json"
    result = invoke(
        runner, "verify", "--family", "B", "-p", "3", "--budget-nodes", "5", "--output", str(out)
    )
    assert result.exit_code == 3


def test_oracle_heisenberg(runner, tmp_path):
    out = tmp_path / "oracle.json"
    result = invoke(
        runner, "oracle", "--family", "heisenberg", "-p", "3", "--json", "--output", str(out)
    )
    assert result.exit_code == 0
    assert read_json(out)["oracle"]["automorphisms"] == 432


def test_fixtures_family_c(runner, tmp_path):
    out = tmp_path / "fixtures.json"
    result = invoke(runner, "fixtures", "--family", "C", "-p", "3", "--json", "--output", str(out))
    assert result.exit_code == 0
    assert read_json(out)["command"] == "fixtures"


def test_fixtures_all_solutions(runner, tmp_path):
    out = tmp_path / "fixtures.json"
    result = invoke(
        runner, "fixtures", "--family", "C", "-p", "3", "--all-solutions", "--json", "--output", str(out)
    )
    assert result.exit_code == 0
    [check] = read_json(out)["checks"]
    assert "all solutions mod 3" in check["detail"]


def test_run_returns_exit_status(tmp_path):
    out = tmp_path / "heis.json"
    status = run(
        ["--env", "testing", "verify", "--family", "heisenberg", "-p", "3", "--output", str(out)]
    )
    assert status == 2
    assert run(["--env", "testing", "verify"]) == 1
