import json

import pytest

from sylvester_cy.cli import counting_trial, main, run_sweep
import random

THREE = "84 : 42,28,12,1,1\n1806 : 903,602,258,42,1\n3486 : 1743,1162,498,42,41\n"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hodge_text(capsys):
    code, out, _ = run(capsys, "hodge", "--weights", "42,28,12,1,1", "--degree", "84")
    assert code == 0
    assert "491" in out and "11" in out


def test_hodge_json(capsys):
    code, out, _ = run(capsys, "hodge", "--weights", "1,1,1", "--degree", "3", "--format", "json")
    obj = json.loads(out)
    assert code == 0
    assert sorted(obj["entries"]) == [[0, 0, "1"], [0, 1, "1"], [1, 0, "1"], [1, 1, "1"]]


@pytest.mark.parametrize("argv", [
    ("hodge", "--weights", "2,2", "--degree", "4"),
    ("hodge", "--weights", "4,4,2,2", "--degree", "12"),
    ("hodge", "--weights", "1,1,1", "--degree", "5"),
    ("hodge", "--weights", "a,b", "--degree", "5"),
    ("family", "bogus", "--dim", "2"),
])
def test_input_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_pole_exits_3(capsys):
    code, _, err = run(capsys, "hodge", "--weights", "4,3,1,1,1", "--degree", "10")
    assert code == 3 and "error" in err


def test_family_outputs(capsys):
    code, out, _ = run(capsys, "family", "loop", "--dim", "4")
    obj = json.loads(out)
    assert code == 0 and obj["d"] == "2374" and obj["m"] == "1201495"
    code, out, _ = run(capsys, "family", "klt-pair", "--dim", "2")
    assert json.loads(out)["index"] == "66"
    code, out, _ = run(capsys, "family", "mld-pair", "--dim", "2")
    assert json.loads(out)["mld"] == "1/42"
    code, out, _ = run(capsys, "family", "x1", "--dim", "3", "--format", "text")
    assert code == 0 and "euler: -960" in out
    code, out, _ = run(capsys, "family", "terminal-index", "--dim", "4")
    assert json.loads(out)["index"] == "3486"


def test_verify_counting_deterministic(capsys):
    code, out1, _ = run(capsys, "verify", "counting", "--trials", "200", "--seed", "7")
    code2, out2, _ = run(capsys, "verify", "counting", "--trials", "200", "--seed", "7")
    assert code == code2 == 0
    assert out1 == out2 and out1.strip().endswith("PASS")


def test_counting_trials_are_valid():
    rng = random.Random(3)
    for _ in range(50):
        C, d = counting_trial(rng)
        assert all(d % c == 0 for c in C)


def test_verify_faithfulness_small(capsys):
    code, out, _ = run(capsys, "verify", "faithfulness", "--max-dim", "12")
    assert code == 0
    assert out.count("PASS") == 12


def test_sweep_three_families(tmp_path, capsys):
    src = tmp_path / "in.txt"
    src.write_text("# the dimension-3 families\n" + THREE + "12 : 3,3,3,1,1,1\n10 : 1,1,1,1\nnonsense\n12 : 4,4,2,2\n")
    out = tmp_path / "out.jsonl"
    assert main(["sweep", str(src), str(out)]) == 0
    rows = [json.loads(x) for x in out.read_text().splitlines()]
    body, footer = rows[:-1], rows[-1]["summary"]
    assert [r["betti_sum"] for r in body[:3]] == ["1008"] * 3
    assert [r["euler"] for r in body[:3]] == ["-960", "0", "960"]
    assert body[3]["betti_sum"] == "3012"
    assert [r["status"] for r in body[4:]] == ["not-CY", "error", "not-well-formed"]
    assert footer["min_euler"]["euler"] == "-960"
    assert footer["records"] == 7


def test_sweep_empty_and_missing(tmp_path, capsys):
    src = tmp_path / "empty.txt"
    src.write_text("")
    out = tmp_path / "out.jsonl"
    assert main(["sweep", str(src), str(out)]) == 0
    assert out.read_text() == ""
    assert main(["sweep", str(tmp_path / "nope.txt")]) == 2


def test_sweep_budget_unsupported(tmp_path):
    rows = run_sweep(["1806 : 903,602,258,42,1\n"], budget=100)
    assert rows[0]["status"] == "unsupported"


def test_sweep_parallel_matches_serial(tmp_path, monkeypatch):
    src = tmp_path / "in.txt"
    src.write_text(THREE + "12 : 3,3,3,1,1,1\n5 : 1,1,1,1,1\n")
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert main(["sweep", str(src), str(a), "--parallelism", "1"]) == 0
    monkeypatch.setenv("SYLVESTER_CY_THREADS", "3")
    assert main(["sweep", str(src), str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
