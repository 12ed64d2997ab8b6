import json
import subprocess
import sys

import pytest

from dmrealize.cli import main
from dmrealize.io import read_graph, read_matrix


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def gp52_files(tmp_path, capsys):
    g, d = tmp_path / "g.txt", tmp_path / "d.csv"
    assert run(capsys, "generate", "--family", "gp:5,2", "--weights", "uniform:1,2", "--seed", 7, "--out", g)[0] == 0
    assert run(capsys, "distmat", "--graph", g, "--out", d)[0] == 0
    return g, d


def test_pipeline_realizable(gp52_files, tmp_path, capsys):
    _, d = gp52_files
    rep = tmp_path / "r.json"
    code, out, _ = run(capsys, "check", "--matrix", d, "--family", "gp:5,2", "--report", rep)
    report = json.loads(rep.read_text())
    assert code == 0 and report["realizable"] is True
    assert "realizable: true" in out
    assert [c["id"] for c in report["conditions"]] == ["A", "B", "C", "D"]


def test_realize_round_trip(gp52_files, tmp_path, capsys):
    g, d = gp52_files
    out = tmp_path / "back.txt"
    assert run(capsys, "realize", "--matrix", d, "--family", "gp:5,2", "--out", out)[0] == 0
    assert read_graph(out) == read_graph(g)


def test_check_false_exit_agrees_with_report(tmp_path, capsys):
    g, d = tmp_path / "g.txt", tmp_path / "d.csv"
    run(capsys, "generate", "--family", "gp:10,3", "--out", g)
    run(capsys, "distmat", "--graph", g, "--out", d)
    rep = tmp_path / "r.json"
    code, _, _ = run(capsys, "check", "--matrix", d, "--family", "gp:10,2", "--report", rep)
    assert code == 1 and json.loads(rep.read_text())["realizable"] is False
    code, _, err = run(capsys, "realize", "--matrix", d, "--family", "gp:10,2")
    assert code == 1 and "condition C fails" in err


def test_asymmetric_matrix_exit_2(gp52_files, capsys):
    _, d = gp52_files
    lines = d.read_text().splitlines()
    cells = lines[1].split(",")
    cells[1] = "99"
    lines[1] = ",".join(cells)
    d.write_text("\n".join(lines) + "\n")
    code, _, err = run(capsys, "check", "--matrix", d, "--family", "gp:5,2")
    assert code == 2 and "not symmetric at (u0,u1)" in err


@pytest.mark.parametrize("fam,msg", [("gp:6,2", "n = 3k"), ("gp:8,2", "n = 4k"), ("gp:7,1", "k = 1")])
def test_out_of_scope_exit_2(gp52_files, capsys, fam, msg):
    code, _, err = run(capsys, "check", "--matrix", gp52_files[1], "--family", fam)
    assert code == 2 and msg in err


def test_dimension_mismatch_exit_2(gp52_files, capsys):
    code, _, err = run(capsys, "check", "--matrix", gp52_files[1], "--family", "gp:7,2")
    assert code == 2 and "dimension" in err


def test_malformed_input_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n0,1\n1,oops\n")
    code, _, err = run(capsys, "check", "--matrix", bad, "--family", "gp:5,2")
    assert code == 2 and "bad.csv:3:2" in err
    code, _, _ = run(capsys, "distmat", "--graph", tmp_path / "missing.txt")
    assert code == 2


def test_bad_arguments_exit_2(capsys):
    for argv in (["generate", "--family", "gp:5"], ["fuzz", "--family", "gp:5,2", "--seed", "-3"], []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_decimal_output(tmp_path, capsys):
    g, d = tmp_path / "g.txt", tmp_path / "d.csv"
    run(capsys, "generate", "--family", "gp:5,2", "--weights", "uniform:1,2", "--seed", 1,
        "--denominator", 8, "--out", g, "--decimal")
    assert "/" not in g.read_text()
    run(capsys, "distmat", "--graph", g, "--out", d, "--decimal")
    assert "/" not in d.read_text()
    assert read_matrix(d).labels[0] == "u0"
    # a 1/3 grid cannot be written as a finite decimal
    code, _, err = run(capsys, "generate", "--family", "gp:5,2", "--weights", "uniform:1,2",
                       "--denominator", 3, "--seed", 2, "--decimal")
    assert code == 2


def test_useful_and_girth(tmp_path, capsys):
    g = tmp_path / "c5.txt"
    g.write_text("#vertices: a,b,c,d,e\na\tb\t100\nb\tc\t1\nc\td\t1\nd\te\t1\ne\ta\t1\n")
    code, out, _ = run(capsys, "useful", "--graph", g)
    assert code == 0
    lines = dict((tuple(ln.split("\t")[:2]), ln.split("\t")[2]) for ln in out.splitlines())
    assert lines[("a", "b")] == "Useless" and lines[("b", "c")] == "Useful"
    assert run(capsys, "girth", "--graph", g)[1].strip() == "5"
    tree = tmp_path / "t.txt"
    tree.write_text("#vertices: a,b\na\tb\t1\n")
    assert run(capsys, "girth", "--graph", tree)[1].strip() == "inf"


def test_fuzz_cli(tmp_path, capsys):
    rep = tmp_path / "f.json"
    code, out, _ = run(capsys, "fuzz", "--family", "gp:5,2", "--trials", 5, "--seed", 3, "--report", rep)
    assert code == 0 and "5/5" in out
    assert json.loads(rep.read_text())["passes"] == 5
    code, _, err = run(capsys, "fuzz", "--family", "gp:8,2", "--trials", 2)
    assert code == 2 and "n = 4k" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dmrealize", "check", "--matrix", "nope.csv", "--family", "gp:6,2"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
