import json
import subprocess
import sys

import pytest

from kummer_enriques import cli
from kummer_enriques.report import Report


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_ns(capsys):
    code, out, _ = run(capsys, "verify", "--scope", "ns")
    assert code == 0
    assert out.rstrip().endswith("ALL PASS")
    assert "FAIL" not in out


def test_verify_forms(capsys):
    code, out, _ = run(capsys, "verify", "--scope", "forms")
    assert code == 0 and "ALL PASS" in out


def test_verify_failure_exit_code(capsys, monkeypatch):
    bad = Report("broken")
    bad.add("something", False, "detail")
    monkeypatch.setattr(cli, "suite_forms", lambda: [bad])
    code, out, _ = run(capsys, "verify", "--scope", "forms")
    assert code == 1
    assert "something: FAIL (detail)" in out
    assert out.rstrip().endswith("FAILURES PRESENT")


@pytest.mark.parametrize("argv", [
    ["verify", "--scope", "nowhere"],
    ["classify", "--format", "xml"],
    ["inspect", "switch", "[1]"],
    ["inspect", "switch", "[7]"],
    ["inspect", "hg", "[0]+[12]+[13]+[23]"],
    ["inspect", "hw", "[12]+[13]"],
    ["verify", "--threads", "0"],
    [],
])
def test_usage_errors(capsys, argv):
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    assert code == 2


def test_odd_theta_message(capsys):
    code, _, err = run(capsys, "inspect", "switch", "[1]")
    assert code == 2
    assert "odd theta characteristic" in err


def test_unwritable_out(capsys, tmp_path):
    code, _, err = run(capsys, "--out", str(tmp_path / "missing" / "x.txt"), "dump", "ns")
    assert code == 2 and err.startswith("error:")


def test_inspect_switch(capsys):
    code, out, _ = run(capsys, "inspect", "switch", "[123]")
    assert code == 0
    assert out.startswith("# switch [123]")
    assert "table entry: e₁+f₂+g" in out
    assert "H/4+(N0+N12+N23+N31)/2, H/4+(N0+N45+N56+N64)/2" in out
    assert "E7(2) witness" in out and "  none" not in out


def test_inspect_hw_w0(capsys):
    code, out, _ = run(capsys, "inspect", "hw", "W0")
    assert code == 0
    line = [x for x in out.splitlines() if x.startswith("interchanged pairs:")][0]
    assert line.count("(N") == 10
    # [236] and [145] name the same trope
    assert "(N0, T123)" in line and "(N35, T145)" in line
    assert "table entry: e₁+f₁+e₂+g" in out


def test_inspect_hg_json(capsys):
    code, out, _ = run(capsys, "inspect", "hg", "G0", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["table_entry"] == "e₁+f₁+e₂+f₂"
    assert len(data["patching_subgroup"]) == 4
    assert len(data["eigenlattice_gram"]) == 7
    assert data["generators"][0] == "H/2"
    assert all(c.endswith("PASS") or ": PASS" in c for c in data["checks"])


def test_inspect_translation(capsys):
    code, out, _ = run(capsys, "inspect", "translation", "[12]")
    assert code == 0
    assert "eigenlattice" not in out


def test_classify_formats(capsys):
    code, md, _ = run(capsys, "classify")
    assert code == 0
    assert "| [126] | g |" in md and "## Switches" in md
    code, csv_text, _ = run(capsys, "classify", "--format", "csv")
    assert code == 0 and len(csv_text.splitlines()) == 32
    code, js, _ = run(capsys, "classify", "--format", "json")
    assert code == 0 and len(json.loads(js)) == 31


@pytest.mark.slow
def test_classify_pairs_method_agrees(capsys):
    _, a, _ = run(capsys, "classify", "--format", "csv")
    _, b, _ = run(capsys, "classify", "--format", "csv", "--method", "pairs")
    assert a == b


def test_out_file_and_flag_positions(capsys, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["--out", str(p1), "dump", "enumerations"]) == 0
    assert cli.main(["dump", "enumerations", "--out", str(p2), "-v"]) == 0
    assert capsys.readouterr().out == ""
    assert p1.read_text() == p2.read_text()
    data = json.loads(p1.read_text())
    assert len(data["weber_hexads"]) == 192
    assert [len(c) for c in data["weber_classes"]] == [32] * 6


def test_dumps_deterministic(capsys):
    for what in ("ns", "forms"):
        _, a, _ = run(capsys, "dump", what)
        _, b, _ = run(capsys, "dump", what)
        assert a == b
        json.loads(a)


def test_verify_threads_deterministic(capsys):
    _, one, _ = run(capsys, "verify", "--scope", "involutions")
    _, two, _ = run(capsys, "verify", "--scope", "involutions", "--threads", "2")
    assert one == two
    assert one.rstrip().endswith("ALL PASS")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kummer_enriques.cli", "verify", "--scope", "ns"],
                          capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0
    assert "ALL PASS" in proc.stdout
