import json
import subprocess
import sys

import pytest

from reptiler.cli import run


def cli(*argv):
    return run(list(argv))


def test_classify(capsys):
    assert cli("classify", "--proto", "f3:1/5") == 0
    assert capsys.readouterr().out.strip() == "FAMILY_III"


def test_classify_details(capsys):
    assert cli("classify", "--proto", "f2:19/10", "--details") == 0
    out = capsys.readouterr().out
    assert out.startswith("FAMILY_II\n")
    info = json.loads(out.split("\n", 1)[1])
    assert info["lemma1"] and info["invariant_failures"] == []


def test_reptile_exhausted(capsys):
    assert cli("reptile", "--proto", "f3:1/5", "--k", "4") == 1
    assert capsys.readouterr().out.strip() == "EXHAUSTED"


def test_reptile_found_and_saved(tmp_path, capsys):
    out = tmp_path / "tri.json"
    assert cli("reptile", "--proto", "poly:0,0;1,0;0,1", "--k", "4", "--out", str(out)) == 0
    assert capsys.readouterr().out.strip() == "FOUND"
    assert cli("verify", "--tiling", str(out)) == 0


def test_budget_exit_code(monkeypatch, capsys):
    monkeypatch.setenv("REPTILER_MAX_NODES", "2")
    assert cli("reptile", "--proto", "f1:1", "--k", "4") == 3
    assert capsys.readouterr().out.strip() == "BUDGET"
    assert cli("tile", "--proto", "f3:1/5", "--region", "square:a+b") == 3


def test_construct_verify_render(tmp_path):
    f0 = tmp_path / "f0.json"
    svg = tmp_path / "out.svg"
    assert cli("tile", "--proto", "f3:1/5", "--construct", "f0", "--out", str(f0)) == 0
    before = f0.read_bytes()
    assert cli("verify", "--tiling", str(f0)) == 0
    assert cli("render", "--tiling", str(f0), "--svg", str(svg), "--scale", "200") == 0
    assert svg.read_text().count("<path") == 4
    assert f0.read_bytes() == before


def test_verify_fails_on_broken_tiling(tmp_path, capsys):
    f0 = tmp_path / "f0.json"
    cli("tile", "--proto", "f3:1/5", "--construct", "f0", "--out", str(f0))
    data = json.loads(f0.read_text())
    data["placements"].pop()
    f0.write_text(json.dumps(data))
    assert cli("verify", "--tiling", str(f0)) == 1
    assert "FAIL" in capsys.readouterr().out


def test_tile_modes(capsys):
    assert cli("tile", "--proto", "f3:1/5", "--region", "square:a+b", "--mode", "count") == 0
    assert capsys.readouterr().out.strip() == "2"
    assert cli("tile", "--proto", "f3:1/5", "--region", "square:a+b", "--mode", "count", "--workers", "2") == 0
    assert capsys.readouterr().out.strip() == "2"
    assert cli("tile", "--proto", "f3:1/5", "--region", "square:1") == 1
    assert json.loads(capsys.readouterr().out) == []


def test_local_deduction_commands(capsys):
    assert cli("fills", "--proto", "f3:1/5", "--target", "pi") == 0
    assert json.loads(capsys.readouterr().out) == [{"ALPHA": 1, "GAMMA": 1}, {"HALF_PI": 2}]
    assert cli("patches", "--proto", "f3:1/5", "--base", "1", "--left", "hpi", "--right", "gamma") == 0
    assert len(json.loads(capsys.readouterr().out)) == 1
    assert cli("patches", "--proto", "f3:1/5", "--base", "1", "--left", "hpi", "--right", "hpi") == 1
    assert json.loads(capsys.readouterr().out) == []
    assert cli("edgefills", "--proto", "f3:1/2", "--base", "2a") == 0
    assert json.loads(capsys.readouterr().out) == [[2, 0, 0, 0]]


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["classify"],
        ["classify", "--proto", "bogus"],
        ["classify", "--proto", "f1:1/2"],
        ["tile", "--proto", "f3:1/5"],
        ["tile", "--proto", "f3:1/5", "--region", "square:1", "--mode", "some"],
        ["tile", "--proto", "f3:1/5", "--region", "square:1", "--max-nodes", "0"],
        ["fills", "--proto", "f3:1/5", "--target", "tau"],
        ["verify", "--tiling", "/nonexistent/file.json"],
        ["reptile", "--proto", "poly:0,0;1,0;1,1;0,1", "--k", "2"],
    ],
)
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        from reptiler.cli import main

        main(argv)
    assert exc.value.code == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "reptiler", "classify", "--proto", "f1:1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "FAMILY_I"
