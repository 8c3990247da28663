import json
import subprocess
import sys

import pytest

from cfdigraph.cli import run
from conftest import EXAMPLE1_TEXT


@pytest.fixture
def files(tmp_path):
    cfg = tmp_path / "example1.cfg"
    cfg.write_text(EXAMPLE1_TEXT)
    return tmp_path, cfg


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_member_true(files, capsys):
    _, cfg = files
    assert call(capsys, "member", cfg, "--start", "S", "--word", "0011")[:2] == (0, "true\n")


def test_member_false(files, capsys):
    _, cfg = files
    assert call(capsys, "member", cfg, "--word", "10")[:2] == (1, "false\n")


def test_member_empty_word(files, capsys):
    _, cfg = files
    code, out, err = call(capsys, "member", cfg, "--start", "S", "--word", "")
    assert code == 2 and out == "" and "non-empty" in err


def test_member_bad_letter(files, capsys):
    _, cfg = files
    assert call(capsys, "member", cfg, "--word", "2")[0] == 2


def test_member_witness(files, capsys):
    _, cfg = files
    code, out, _ = call(capsys, "member", cfg, "--word", "01", "--witness")
    assert code == 0
    assert out.splitlines() == ["true", "S -> A [eps,C]", "A -> Z [0,eps]", "Z -> C [eps,C']", "C -> Z [1,eps]"]


def test_enumerate(files, capsys):
    _, cfg = files
    assert call(capsys, "enumerate", cfg, "--start", "S", "--max-len", "4")[:2] == (0, "01\n0011\n")


def test_enumerate_bad_bound(files, capsys):
    _, cfg = files
    with pytest.raises(SystemExit) as exc:
        run(["enumerate", str(cfg), "--max-len", "0"])
    assert exc.value.code == 2


def test_normalize(tmp_path, capsys):
    cfg = tmp_path / "g.cfg"
    cfg.write_text("S -> a S\nS -> a\n")
    code, out, _ = call(capsys, "normalize", cfg)
    assert code == 0 and out == "S -> X1 S\nS -> a\nX1 -> a\n"


def test_normalize_warns_on_epsilon(tmp_path, capsys):
    cfg = tmp_path / "g.cfg"
    cfg.write_text("S ->\nS -> a\n")
    code, out, err = call(capsys, "normalize", cfg)
    assert code == 0 and out == "S -> a\n" and "warning" in err


def test_normalize_syntax_error(tmp_path, capsys):
    cfg = tmp_path / "g.cfg"
    cfg.write_text("S -> a\nbroken\n")
    code, _, err = call(capsys, "normalize", cfg)
    assert code == 2 and "line 2" in err


def test_missing_file(tmp_path, capsys):
    assert call(capsys, "normalize", tmp_path / "nope.cfg")[0] == 2


def test_diagram_json_and_back(files, capsys):
    tmp, cfg = files
    code, out, _ = call(capsys, "diagram", cfg)
    assert code == 0 and len(json.loads(out)["arcs"]) == 7
    dj = tmp / "d.json"
    dj.write_text(out)
    code, out, _ = call(capsys, "grammar", dj)
    assert code == 0
    assert sorted(out.splitlines()) == sorted(EXAMPLE1_TEXT.splitlines())
    assert call(capsys, "validate", dj)[:2] == (0, "ok\n")
    assert call(capsys, "member", dj, "--start", "S", "--word", "000111")[:2] == (0, "true\n")
    assert call(capsys, "enumerate", dj, "--start", "B", "--max-len", "5")[1] == "011\n00111\n"


def test_diagram_input_requires_start(files, capsys):
    tmp, cfg = files
    _, out, _ = call(capsys, "diagram", cfg)
    dj = tmp / "d.json"
    dj.write_text(out)
    assert call(capsys, "member", dj, "--word", "01")[0] == 2


def test_diagram_dot(files, capsys):
    _, cfg = files
    code, out, _ = call(capsys, "diagram", cfg, "--format", "dot")
    assert code == 0 and out.startswith("digraph G {") and out.count("->") == 7


def test_kind_override(files, capsys):
    tmp, _ = files
    txt = tmp / "grammar.txt"
    txt.write_text(EXAMPLE1_TEXT)
    assert call(capsys, "member", txt, "--word", "01")[0] == 2
    assert call(capsys, "member", txt, "--kind", "grammar", "--word", "01")[:2] == (0, "true\n")


def test_validate_reports_violations(tmp_path, capsys):
    doc = {"nonterminals": ["A", "B", "C"], "terminals": ["a"],
           "arcs": [{"from": "A", "to": "B", "emit": "", "t": "C"}, {"from": "B", "to": "Z", "emit": "a", "t": ""}]}
    dj = tmp_path / "bad.json"
    dj.write_text(json.dumps(doc))
    code, out, _ = call(capsys, "validate", dj)
    assert code == 1 and "condition b" in out
    assert call(capsys, "member", dj, "--start", "A", "--word", "a")[0] == 2


def test_validate_schema_error(tmp_path, capsys):
    dj = tmp_path / "bad.json"
    dj.write_text('{"nonterminals": [], "terminals": [], "arcs": [{"from": "A"}]}')
    assert call(capsys, "validate", dj)[0] == 2


def test_verify_pass(files, capsys):
    _, cfg = files
    code, out, _ = call(capsys, "verify", cfg, "--max-len", "8")
    assert code == 0 and out.startswith("PASS")


def test_verify_single_start(files, capsys):
    _, cfg = files
    assert call(capsys, "verify", cfg, "--max-len", "4", "--starts", "B")[0] == 0
    assert call(capsys, "verify", cfg, "--max-len", "4", "--starts", "Q")[0] == 2


def test_verify_with_z_nonterminal(tmp_path, capsys):
    cfg = tmp_path / "z.cfg"
    cfg.write_text("Z -> A Z\nZ -> a\nA -> b\n")
    assert call(capsys, "verify", cfg, "--max-len", "5")[0] == 0
    assert call(capsys, "member", cfg, "--word", "bba")[:2] == (0, "true\n")


def test_output_is_deterministic(files):
    _, cfg = files
    cmd = [sys.executable, "-m", "cfdigraph", "diagram", str(cfg), "--format", "dot"]
    runs = {subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)}
    assert len(runs) == 1


def test_no_subcommand():
    with pytest.raises(SystemExit) as exc:
        run([])
    assert exc.value.code == 2
