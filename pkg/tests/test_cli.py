import json
import subprocess
import sys

import pytest

from reflexa.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ring_lam(capsys):
    code, out, _ = run(capsys, "ring", "lam")
    r = json.loads(out)["result"]
    assert code == 0
    assert (r["length"], r["type"], r["gorenstein"], r["bnsi"]) == (3, 2, False, "certified(m2=0)")


def test_tower_ex56(capsys):
    code, out, _ = run(capsys, "tower", "ex56", "m", "--depth", "8")
    r = json.loads(out)["result"]
    assert code == 0
    assert r["lengths"][1:] == [2 ** (n + 1) + 1 for n in range(1, 9)]
    assert r["ratios"][1:4] == ["5/2", "9/4", "17/8"]


def test_classify_inline_json(capsys):
    ring = json.dumps({"field": "Q", "vars": ["x"], "ideal": ["x^4"]})
    module = json.dumps({"builder": "presentation", "matrix": [["x^2"]]})
    code, out, _ = run(capsys, "classify", ring, module, "--bound", "3")
    r = json.loads(out)
    assert code == 0
    assert r["result"]["verdicts"]["reflexive"]["status"] == "certified_true"
    assert len(r["input_sha256"]) == 64


def test_ring_from_file(tmp_path, capsys):
    p = tmp_path / "ring.json"
    p.write_text(json.dumps({"vars": ["x", "y"], "ideal": ["x^2", "x*y", "y^3"]}))
    code, out, _ = run(capsys, "ring", f"@{p}")
    assert code == 0 and json.loads(out)["result"]["length"] == 4


def test_resolve_text(capsys):
    code, out, _ = run(capsys, "resolve", "lam", "k", "--steps", "4", "--text")
    assert code == 0
    assert "betti [1, 2, 4, 8, 16]" in out


@pytest.mark.parametrize("argv", [
    ["ring", '{"vars": ["x"], "ideal": ["x^2+"]}'],
    ["ring", '{"vars": ["x", "y"], "ideal": ["x^2"]}'],
    ["ring", "nosuchring"],
    ["classify", "lam", '{"builder": "ideal", "gens": ["1"]}'],
    ["classify", "lam", "k", "--bound", "1"],
    ["verify-paper", "--filter", "zzz"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "input error" in err


def test_budget_exit_3(capsys):
    code, out, _ = run(capsys, "tower", "ex56", "m", "--depth", "10", "--budget", "100")
    assert code == 3
    assert json.loads(out)["result"]["partial"] is True


def test_budget_env(monkeypatch, capsys):
    monkeypatch.setenv("REFLEXA_BUDGET", "50")
    code, out, _ = run(capsys, "resolve", "lam", "k")
    assert code == 3
    assert json.loads(out)["budget"] == 50


def test_output_is_deterministic(capsys):
    _, a, _ = run(capsys, "classify", "gor415", "k", "--bound", "3")
    _, b, _ = run(capsys, "classify", "gor415", "k", "--bound", "3")
    assert a == b


def test_verify_paper_filter(capsys):
    code, out, _ = run(capsys, "verify-paper", "--filter", "ex57", "--jobs", "1")
    r = json.loads(out)
    assert code == 0 and r["pass"]
    fact = r["entries"][0]["facts"][0]
    assert fact["actual"][:3] == [4, 8, 16] and fact["source"] == "published"


def test_verify_paper_thread_count_invariance(capsys):
    _, a, _ = run(capsys, "verify-paper", "--filter", "[ek]*", "--jobs", "1")
    _, b, _ = run(capsys, "verify-paper", "--filter", "[ek]*", "--jobs", "3")
    assert a == b


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "reflexa", "ring", "kxn:3", "--text"],
                         capture_output=True, text=True, check=True)
    assert "bnsi refuted(principal-m)" in out.stdout
