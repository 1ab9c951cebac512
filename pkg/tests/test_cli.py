import io
import json
import subprocess
import sys

import pytest

from dbhom.cli import main
from dbhom.core import Cycle

from conftest import TABLE2


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate(capsys):
    assert run(capsys, "generate", "--q", "3", "--n", "2", "--B", "1", "--L", "1", "--I", "0")[:2] == (0, "120221100\n")
    assert run(capsys, "generate", "--q", "3", "--n", "2", "--B", "2", "--L", "2", "--I", "0")[1] == "210112200\n"


def test_generate_positions_and_json(capsys):
    code, out, _ = run(capsys, "generate", "--q", "3", "--n", "2", "--B", "1", "--L", "1", "--I", "0", "--positions")
    assert out.splitlines() == ["120221100", "1\t7", "2\t5"]
    code, out, _ = run(capsys, "generate", "--json", "--q", "5", "--n", "3", "--B", "1,2", "--L", "3,4", "--I", "0,4")
    rec = json.loads(out)
    assert rec["report"]["ok"] and rec["params"]["L"] == [3, 4] and len(rec["sequence"]) == 125


def test_generate_errors(capsys):
    code, out, err = run(capsys, "generate", "--q", "4", "--n", "3", "--B", "1,1", "--L", "1,1", "--I", "0,0")
    assert code == 2 and out == "" and "EvenAlphabetNeedsBase" in err
    code, _, err = run(capsys, "generate", "--q", "9", "--n", "2", "--B", "1", "--L", "3", "--I", "0")
    assert code == 2 and "lambda" in err
    code, _, err = run(capsys, "generate", "--q", "3", "--n", "2", "--B", "x", "--L", "1", "--I", "0")
    assert code == 2


def test_generate_with_base_file(capsys, tmp_path):
    f = tmp_path / "base.txt"
    f.write_text("0010203112132233\n")
    code, out, _ = run(capsys, "generate", "--q", "4", "--n", "3", "--B", "1", "--L", "3", "--I", "2",
                       "--base-file", str(f), "--verify")
    assert code == 0 and len(out.strip()) == 64


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--q", "3", "--n", "2")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 12
    assert {Cycle.parse(l.split("\t")[1], 3) for l in lines} == {Cycle.parse(s, 3) for s in TABLE2.values()}
    assert lines[0] == "1;1;0\t120221100"
    assert len(run(capsys, "enumerate", "--q", "3", "--n", "2", "--limit", "1")[1].splitlines()) == 1
    code, out, _ = run(capsys, "enumerate", "--q", "5", "--n", "2", "--verify")
    assert code == 0 and len(out.splitlines()) == 80 and all(l.endswith("\tOK") for l in out.splitlines())
    assert run(capsys, "enumerate", "--q", "4", "--n", "2")[0] == 2


def test_verify(capsys, monkeypatch):
    assert run(capsys, "verify", "--q", "2", "--n", "3", "11101000")[0] == 0
    assert run(capsys, "verify", "--q", "3", "--n", "2", "120221100")[0] == 0
    code, out, _ = run(capsys, "verify", "--q", "2", "--n", "3", "11111000")
    assert code == 1 and "duplicate_windows=2" in out
    assert run(capsys, "verify", "--q", "2", "--n", "3", "11121000")[0] == 2
    assert run(capsys, "verify", "--q", "2", "--n", "2", "-", stdin="0011\n", monkeypatch=monkeypatch)[0] == 0


def test_binary2(capsys):
    code, out, _ = run(capsys, "binary2", "--base", "00011101", "--emit", "report")
    assert code == 0 and "seed=10" in out and "lengths=8/24" in out
    assert Cycle.parse(run(capsys, "binary2", "--base", "00011101", "--emit", "short")[1].strip(), 2) == Cycle.parse("10110010", 2)
    code, _, err = run(capsys, "binary2", "--base", "00011100")
    assert code == 1 and err


def test_binary2_pipeline():
    py = [sys.executable, "-m", "dbhom"]
    joined = subprocess.run(py + ["binary2", "--base", "00011101", "--emit", "joined"],
                            capture_output=True, text=True, check=True).stdout
    res = subprocess.run(py + ["verify", "--q", "2", "--n", "5", "-"], input=joined, capture_output=True, text=True)
    assert res.returncode == 0 and "ok=true" in res.stdout


def test_kernel(capsys, tmp_path):
    code, out, _ = run(capsys, "kernel", "--linear", "q=2 d=x1+x3", "check")
    assert code == 0 and out == "property_D=true\n"
    assert run(capsys, "kernel", "--linear", "q=2 d=x1+x2+0x3", "check")[:2] == (1, "property_D=false\n")
    assert run(capsys, "kernel", "--q", "2", "--k", "2", "count")[1] == "count=4\n"
    code, out, _ = run(capsys, "kernel", "--linear", "q=3 beta=1", "lift", "--base", "120", "--seed", "0")
    assert code == 0 and "cycle_lengths=3,3,3" in out and "sequence=0100" in out
    f = tmp_path / "k.txt"
    f.write_text("q=3\nlinear beta=1\n")
    code, out, _ = run(capsys, "kernel", "--file", str(f), "lift", "--base", "120", "--json")
    assert code == 0 and json.loads(out)["report"]["cycle_lengths"] == [3, 3, 3]
    assert run(capsys, "kernel", "lift")[0] == 2


def test_bad_subcommand_usage():
    with pytest.raises(SystemExit) as exc:
        main(["generate"])
    assert exc.value.code == 2
