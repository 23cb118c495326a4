"""
Tests for the paracat command line
"""

import json

import click
import pytest
from click.testing import CliRunner

from app import cli, parse_args
from combinatorics.rtuples import RSet, RTuple
from combinatorics.tableaux import Partition, Tableau, key_of_perm


@pytest.fixture
def runner():
    return CliRunner()


def test_count(runner):
    result = runner.invoke(cli, ["count", "--n", "4", "--r", "2"])
    assert result.exit_code == 0
    assert result.output.strip() == "C_4^{2} = 6"


def test_count_json(runner):
    result = runner.invoke(cli, ["count", "--n", "3", "--r", "1,2", "--json"])
    assert json.loads(result.output) == {"n": 3, "r": [1, 2], "count": 5}


def test_count_total(runner):
    result = runner.invoke(cli, ["count-total", "--n", "3", "--json"])
    assert json.loads(result.output) == {"n": 3, "count": 12, "method": "summation"}
    result = runner.invoke(cli, ["count-total", "--n", "5", "--formula"])
    assert result.output.strip() == "C_5^Σ = 284"


def test_invalid_r_exits_with_input_code(runner):
    result = runner.invoke(cli, ["count", "--n", "4", "--r", "5"])
    assert result.exit_code == 3


def test_missing_option_is_a_usage_error(runner):
    result = runner.invoke(cli, ["count"])
    assert result.exit_code == 2


def test_resource_guard_exit_code(runner):
    result = runner.invoke(cli, ["count", "--n", "4", "--r", "2"], env={"PARACAT_MAX_PERMUTATIONS": "2"})
    assert result.exit_code == 4


def test_list_families(runner):
    result = runner.invoke(cli, ["list", "r312", "--n", "3", "--r", "1,2"])
    assert result.output.splitlines() == ["1;2;3", "1;3;2", "2;1;3", "2;3;1", "3;2;1"]

    result = runner.invoke(cli, ["list", "shapes", "--n", "3", "--r", "1"])
    assert result.output.splitlines() == ["()", "(1)", "(2)"]

    result = runner.invoke(cli, ["list", "multiperms", "--n", "3", "--r", "1"])
    assert result.output.splitlines() == ["122", "212", "221"]

    result = runner.invoke(cli, ["list", "gchains", "--n", "2"])
    assert len(result.output.splitlines()) == 3
    assert "{1,2} > {2} > {}" in result.output.splitlines()


def test_list_gchains_is_sorted(runner):
    lines = runner.invoke(cli, ["list", "gchains", "--n", "3"]).output.splitlines()
    assert len(lines) == 12
    assert lines == sorted(lines)

    records = [json.loads(line) for line in runner.invoke(cli, ["list", "gchains", "--n", "3", "--json"]).output.splitlines()]
    assert records.index({"chain": [[1, 2, 3], [2, 3], [2], []]}) < records.index({"chain": [[1, 2, 3], [2, 3], [3], []]})


def test_list_json_lines(runner):
    result = runner.invoke(cli, ["list", "chains", "--n", "3", "--r", "1,2", "--json"])
    records = [json.loads(line) for line in result.output.splitlines()]
    assert len(records) == 5
    assert records[0]["blocks"] == [[], [1], [1, 2], [1, 2, 3]]


def test_list_rejects_bad_pattern(runner):
    result = runner.invoke(cli, ["list", "opart", "--n", "3", "--r", "1,2", "--pattern", "999"])
    assert result.exit_code == 3


def test_oeis(runner):
    result = runner.invoke(cli, ["oeis", "--seq", "a226316", "--terms", "4"])
    assert result.output.strip() == "1, 3, 12, 56"
    result = runner.invoke(cli, ["oeis", "--seq", "a000045", "--terms", "4"])
    assert result.exit_code == 2


def test_key(runner):
    result = runner.invoke(cli, ["key", "--lambda", "2,1,0", "--perm", "3;1;2"])
    assert result.output.splitlines() == ["1 3", "3", "row end list: 3;3;3", "gapless key: no"]

    result = runner.invoke(cli, ["key", "--lambda", "2,1,0", "--perm", "3;1;2", "--json"])
    payload = json.loads(result.output)
    expected = key_of_perm(RTuple.parse("3;1;2"), Partition((2, 1, 0)))
    assert Tableau.from_json(payload["tableau"]) == expected
    assert payload["gapless"] is False


def test_key_with_mismatched_shape(runner):
    result = runner.invoke(cli, ["key", "--lambda", "2,1,0", "--perm", "1,2;3"])
    assert result.exit_code == 3
    assert "needs R" in result.output


def test_scan(runner, tmp_path):
    source = tmp_path / "t.json"
    source.write_text(json.dumps({"n": 3, "lambda": [2, 1, 0], "columns": [[1, 3], [2]]}))
    result = runner.invoke(cli, ["scan", "--tableau", str(source)])
    assert result.output.splitlines() == ["2 2", "3"]

    result = runner.invoke(cli, ["scan", "--tableau", str(source), "--paths"])
    assert "(1,1): (1,1) (2,1)" in result.output


def test_scan_from_stdin_rejects_bad_tableau(runner):
    bad = json.dumps({"lambda": [2, 1, 0], "columns": [[2, 3], [1]]})
    result = runner.invoke(cli, ["scan", "--tableau", "-"], input=bad)
    assert result.exit_code == 3


def test_rowendmax(runner):
    result = runner.invoke(
        cli, ["rowendmax", "--lambda", "2,2,2,1,1,1,1,1,0", "--tuple", "2,4,6;4,5,6,7,9;9", "--json"]
    )
    assert json.loads(result.output)["columns"] == [[1, 2, 3, 4, 5, 6, 7, 9], [2, 4, 6]]


def test_demazure_modes(runner):
    result = runner.invoke(cli, ["demazure", "--lambda", "1,0", "--perm", "2;1", "--poly"])
    assert result.output.strip() == "x1 + x2"

    result = runner.invoke(cli, ["demazure", "--lambda", "2,1,0", "--perm", "3;1;2"])
    assert result.output.splitlines()[-1] == "5 tableaux"

    result = runner.invoke(cli, ["demazure", "--lambda", "2,1,0", "--perm", "3;1;2", "--set", "--json"])
    assert len(json.loads(result.output)["points"]) == 5


def test_convexity(runner):
    result = runner.invoke(cli, ["convexity", "--lambda", "2,1,0", "--perm", "3;1;2", "--json"])
    payload = json.loads(result.output)
    assert payload["label"] == "nonconvex"
    assert payload["counterexample"]["columns"] == [[1, 3], [2]]

    result = runner.invoke(cli, ["convexity", "--lambda", "2,1,0", "--perm", "1;2;3"])
    assert result.output.startswith("convex (exact-hull)")


def test_witness(runner):
    result = runner.invoke(cli, ["witness", "--lambda", "2,1,0", "--perm", "3;1;2", "--json"])
    assert json.loads(result.output)["x"] == "1/2"

    result = runner.invoke(cli, ["witness", "--lambda", "2,1,0", "--perm", "1;2;3"])
    assert result.exit_code == 3


def test_verify(runner):
    result = runner.invoke(cli, ["verify", "--n-max", "3"])
    assert result.exit_code == 0
    assert "C_3^Σ = 12" in result.output
    assert result.output.splitlines()[-1] == "12 passed, 0 failed, 0 skipped"


def test_verify_single_check_json(runner):
    result = runner.invoke(cli, ["verify", "--n-max", "3", "--check", "key-coincidence", "--json"])
    report = json.loads(result.output)
    assert [r["check"] for r in report["results"]] == ["key-coincidence"]
    assert "duration" not in report["results"][0]
    assert report["passed"] is True


def test_verify_output_is_deterministic(runner):
    args = ["verify", "--n-max", "2", "--json"]
    assert runner.invoke(cli, args).output == runner.invoke(cli, args).output


def test_verify_failure_exit_code(runner, monkeypatch):
    import services.verification_service as verification

    monkeypatch.setattr(verification, "oeis_check", lambda sequence_id, k, settings: [0] * k)
    result = runner.invoke(cli, ["verify", "--n-max", "2", "--check", "oeis"])
    assert result.exit_code == 1
    assert "FAILED" in result.output


def test_parse_args_returns_validated_command():
    command = parse_args(["count", "--n", "4", "--r", "2"])
    assert command.name == "count"
    assert command.options == {"n": 4, "rset": RSet(4, (2,))}

    command = parse_args(["demazure", "--lambda", "2,1,0", "--perm", "3;1;2", "--witness"])
    assert command.options["mode"] == "witness"
    assert command.options["perm"] == RTuple.parse("3;1;2")


@pytest.mark.parametrize(
    "argv, code",
    [
        (["count", "--n", "4", "--r", "5"], 3),
        (["count", "--n", "x"], 2),
        (["bogus"], 2),
        (["verify", "--n-max", "0"], 3),
        (["demazure", "--lambda", "2,1,0", "--perm", "1,2;3"], 3),
    ],
)
def test_parse_args_exit_codes(argv, code):
    with pytest.raises(click.ClickException) as excinfo:
        parse_args(argv)
    assert excinfo.value.exit_code == code
