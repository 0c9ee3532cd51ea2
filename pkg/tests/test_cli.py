import json
import subprocess
import sys

import pytest

from mldegree import cli
from mldegree.critical import CountReport

BOOLEAN = '{"dim": 2, "hyperplanes": [{"a": ["1", "0"], "b": "0"}, {"a": ["0", "1"], "b": "0"}]}'
THREE_LINES = ('{"dim": 2, "hyperplanes": [{"a": ["1", "0"], "b": "0"}, {"a": ["0", "1"], "b": "0"},'
               ' {"a": ["1", "1"], "b": "-1"}]}')
CONCURRENT = ('{"dim": 2, "hyperplanes": [{"a": ["1", "0"], "b": "0"}, {"a": ["0", "1"], "b": "0"},'
              ' {"a": ["1", "-1"], "b": "0"}]}')
DENSE_CUBIC = " + ".join(f"x^{i}*y^{j}*z^{k}" for i in range(4) for j in range(4) for k in range(4) if i + j + k <= 3)


def run_json(argv, capsys):
    code = cli.main(argv + ["--json"])
    return json.loads(capsys.readouterr().out), code


def test_proj_grad_conic(capsys):
    report, code = run_json(["proj", "grad", "x^2 + y^2 + z^2"], capsys)
    assert code == 0
    r = report["results"]
    assert r["gradient_degree"] == "1" and r["homaloidal"] is True
    assert r["nu"] == ["1", "-1", "1"] and r["mu"] == ["1", "1", "1"]
    assert r["vtable"] == [["3"], ["3", "6"], ["1", "2", "4"]]


def test_hyp_stat_ml_dense_cubic(capsys):
    report, code = run_json(["hyp", "stat-ml", DENSE_CUBIC], capsys)
    assert code == 0
    assert report["results"]["statistical_ml_degree"] == "39"
    assert report["results"]["v"] == ["3", "9", "27"]


def test_arr_ml_boolean(capsys):
    report, code = run_json(["arr", "ml", BOOLEAN], capsys)
    assert code == 0
    assert report["results"]["ml_degree"] == "0"
    assert report["results"]["notes"] == ["complement is a torus"]


def test_report_fields(capsys):
    report, _ = run_json(["arr", "charpoly", THREE_LINES], capsys)
    assert set(report) == {"command", "inputs_echo", "results", "provenance", "errors"}
    assert report["command"] == "arr charpoly"
    assert report["results"]["coefficients"] == ["3", "-3", "1"]
    assert report["provenance"] == {"seed": "0", "trials": "0"}


@pytest.mark.parametrize(
    "argv, key, value",
    [
        (["hyp", "ml", "x + y + x*y"], "ml_degree", "1"),
        (["hyp", "csm", "x + y + 1"], "v", ["1", "1"]),
        (["proj", "homaloidal", "x*y*z"], "homaloidal", True),
        (["proj", "csm", "x^2 + y^2 + z^2"], "csm", ["1", "1", "1"]),
        (["arr", "csm", THREE_LINES], "v", ["1", "1", "1"]),
        (["arr", "regions", THREE_LINES], "regions", "7"),
        (["arr", "triple", THREE_LINES, "--hyperplane", "2"], "deletion_restriction_holds", True),
        (["arr", "decone", CONCURRENT, "--hyperplane", "0"], "coefficients", ["-2", "1"]),
        (["props", "logconcave", "1,3,3"], "all", True),
        (["props", "logconcave", "1", "0", "1"], "logconcave", False),
    ],
)
def test_commands(capsys, argv, key, value):
    report, code = run_json(argv, capsys)
    assert code == 0, report["errors"]
    assert report["results"][key] == value


def test_bidegrees(capsys):
    report, _ = run_json(["arr", "bidegrees", THREE_LINES], capsys)
    assert report["results"]["bidegrees"][2] == {"coefficient": "1", "bidegree": ["0", "2"]}


def test_arrangement_from_file(tmp_path, capsys):
    path = tmp_path / "lines.json"
    path.write_text(THREE_LINES)
    report, code = run_json(["arr", "ml", str(path)], capsys)
    assert code == 0 and report["results"]["ml_degree"] == "1"


@pytest.mark.parametrize(
    "argv",
    [
        ["hyp", "ml", "x + "],
        ["arr", "ml", '{"dim": 2, "hyperplanes": [{"a": ["0", "0"], "b": "1"}]}'],
        ["arr", "ml", "/no/such/file.json"],
        ["arr", "triple", THREE_LINES],
        ["proj", "grad", "x^2 + y"],
        ["props", "logconcave", "1,a"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    report, code = run_json(argv, capsys)
    assert code == 2
    assert report["errors"]


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as info:
        cli.main(["nope"])
    assert info.value.code == 2


def test_verify_r1(capsys):
    report, code = run_json(["verify", "r1", "0,1,2,5", "--seed", "3", "--trials", "4"], capsys)
    assert code == 0
    assert report["provenance"] == {"seed": "3", "trials": "4"}
    assert all(t["count"] == "3" and t["squarefree"] for t in report["results"]["trials"])


def test_verify_r2_and_curve(capsys):
    report, code = run_json(["verify", "r2", THREE_LINES], capsys)
    assert code == 0 and report["results"]["all_agree"] is True
    report, code = run_json(["verify", "curve", "x + y + x*y"], capsys)
    assert code == 0 and report["results"]["all_agree"] is True


def test_verify_fixed_exponents(capsys):
    report, code = run_json(["verify", "r1", "0", "1", "--exponents", "1,-1"], capsys)
    assert code == 0
    assert report["results"]["trials"][0]["count"] == "0"


def test_exit_3_when_uncertified(monkeypatch, capsys):
    def diverging(a, u, seed=0):
        return CountReport(count=None, certified=False, shears_used=6, counts=[1, 2], exponents=tuple(u))

    monkeypatch.setattr(cli, "critical_count_r2", diverging)
    report, code = run_json(["verify", "r2", THREE_LINES], capsys)
    assert code == 3
    assert report["results"]["certified"] is False


def test_json_output_is_byte_identical(capsys):
    argv = ["verify", "r2", THREE_LINES, "--seed", "17", "--json"]
    cli.main(argv)
    first = capsys.readouterr().out
    cli.main(argv)
    assert capsys.readouterr().out == first
    assert first == cli.render_json(json.loads(first))


def test_table_output(capsys):
    assert cli.main(["arr", "ml", THREE_LINES]) == 0
    out = capsys.readouterr().out
    assert "command: arr ml" in out and "ml_degree: 1" in out


def test_encode_keeps_booleans():
    assert cli._encode({"a": True, "b": 10**40, "c": [None]}) == {"a": True, "b": str(10**40), "c": [None]}


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "mldegree.cli", "props", "logconcave", "1,2,1", "--json"],
        capture_output=True, text=True, check=True,
    ).stdout
    assert json.loads(out)["results"]["all"] is True
