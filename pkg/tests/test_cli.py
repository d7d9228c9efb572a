"""
Tests for the qroots command line.
"""

import json

import pytest

from qroots.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_PASS, main


def _stdout_line(capsys):
    return capsys.readouterr().out.strip()


def test_suites_listing(capsys):
    assert main(["suites"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert out.startswith("hopf: ")
    assert "  poisson-rank" in out


def test_verify_writes_report(config_file, tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["verify", "hopf", "--config", str(config_file()), "--out", str(out), "--canonical"])
    assert code == EXIT_PASS
    assert _stdout_line(capsys) == "hopf: pass"
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["passed"] is True
    assert report["config"]["ell"] == 3
    assert report["root_datum"]["type"] == "A1"


def test_verify_selected_check_to_stdout(config_file, capsys):
    code = main(["verify", "hopf", "--config", str(config_file()), "--check", "counit"])
    assert code == EXIT_PASS
    report = json.loads(capsys.readouterr().out)
    assert [c["name"] for c in report["checks"]] == ["counit"]


def test_output_key_in_config(config_file, tmp_path):
    out = tmp_path / "from-config.json"
    path = config_file(f"type = A1\nell = 3\noutput = {out}\n")
    assert main(["verify", "hopf", "--config", str(path), "--check", "counit"]) == EXIT_PASS
    assert json.loads(out.read_text(encoding="utf-8"))["suite"] == "hopf"


@pytest.mark.parametrize(
    "argv_tail, text",
    [
        (["verify", "nope"], "type = A1\nell = 3\n"),
        (["verify", "hopf"], "type = A1\nell = 4\n"),
        (["verify", "hopf", "--check", "missing"], "type = A1\nell = 3\n"),
        (["verify", "poisson"], "type = A2\nell = 5\n"),
        (["dump", "e"], "type = A2\nell = 5\nw0_word = 1 1 2\n"),
    ],
)
def test_configuration_errors(config_file, capsys, argv_tail, text):
    path = config_file(text)
    assert main(argv_tail + ["--config", str(path)]) == EXIT_CONFIG
    assert capsys.readouterr().err.strip().splitlines()[-1].startswith("error: ")


def test_missing_config_file(tmp_path):
    assert main(["dump", "e", "--config", str(tmp_path / "absent.cfg")]) == EXIT_CONFIG


def test_dump_normal_form(config_file, capsys):
    path = str(config_file())
    assert main(["dump", "k[0]", "--config", path]) == EXIT_PASS
    assert _stdout_line(capsys) == "1"
    assert main(["dump", "e*f", "--config", path]) == EXIT_PASS
    lhs = _stdout_line(capsys)
    assert main(["dump", "f*e + (k[a1]-k[-a1])/(v^2-v^-2)", "--config", path]) == EXIT_PASS
    assert _stdout_line(capsys) == lhs


def test_dump_lusztig_form(config_file, capsys):
    assert main(["dump", "E(3)", "--config", str(config_file()), "--form", "L"]) == EXIT_PASS
    assert _stdout_line(capsys) == "E(3)"


def test_dump_parse_error(config_file, capsys):
    assert main(["dump", "e*)", "--config", str(config_file())]) == EXIT_FAIL
    assert "error:" in capsys.readouterr().err
