import io
import json
import subprocess
import sys

import pytest

from satgame import cli, verify
from satgame.engine import Transcript, replay
from satgame.setfam import Params, check_disjointness_certificate
from satgame.verify import CheckRow


def run(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


class TestPlay:
    def test_minimizer_certificate(self):
        code, out, _ = run("play", "--n", "30", "--k", "3", "--kind", "tau", "--first", "min", "--a", "minimizer",
                           "--b", "random", "--mode", "certify", "--seed", "1")
        assert code == 0
        d = json.loads(out)
        assert d["game"] == "intersecting" and d["mode"] == "certify" and d["seed"] == 1
        assert len(d["certificate"]["cover"]) <= 5
        t = Transcript.from_json(out)
        assert check_disjointness_certificate(t.certificate, Params(30, 3))
        assert t.to_json() == out

    def test_maximizer_degree_table(self):
        code, out, _ = run("play", "--n", "27", "--k", "9", "--kind", "tau", "--first", "max", "--a", "maximizer",
                           "--b", "random", "--mode", "certify")
        assert code == 0
        assert max(json.loads(out)["degree_table"].values()) == 2

    def test_full_play_replays(self):
        code, out, _ = run("play", "--n", "6", "--k", "2", "--kind", "saturation", "--a", "random", "--b", "evasive")
        assert code == 0
        t = Transcript.from_json(out)
        assert replay(t).claimed == t.final_family and len(t.final_family) == t.score

    def test_human_reprompts(self):
        code, out, err = run("play", "--n", "5", "--k", "2", "--kind", "saturation", "--a", "human", "--b",
                             "lex-first", stdin="1 2\n9 9\nfoo\n1 3\n3 4\n2 3\n")
        assert code == 0
        assert "already claimed" in err and "not a 2-subset" in err and "misses claimed set" in err
        assert err.count("move>") >= 4
        assert json.loads(out)["moves"][0]["set"] == [1, 2]

    def test_human_runs_out_of_input(self):
        code, _, err = run("play", "--n", "5", "--k", "2", "--a", "human", "--b", "lex-first", stdin="1 2\n")
        assert code == 3 and "rule violation" in err

    def test_unknown_strategy(self):
        code, _, err = run("play", "--n", "5", "--k", "2", "--a", "clever")
        assert code == 2 and "unknown strategy" in err

    def test_bad_params(self):
        assert run("play", "--n", "2", "--k", "3")[0] == 2
        assert run("play", "--n", "10", "--k", "3", "--a", "minimizer", "--mode", "certify")[0] == 2

    def test_full_play_cap(self):
        assert run("play", "--n", "40", "--k", "8")[0] == 4

    def test_missing_arguments(self):
        assert run("play")[0] == 2
        assert run()[0] == 2

    def test_out_file(self, tmp_path):
        path = tmp_path / "t.json"
        code, out, _ = run("play", "--n", "5", "--k", "2", "--out", str(path))
        assert code == 0 and out == ""
        assert json.loads(path.read_text())["n"] == 5


class TestSolve:
    def test_fast(self):
        code, out, _ = run("solve", "--n", "5", "--k", "2", "--kind", "saturation", "--first", "fast")
        assert code == 0 and out.splitlines()[0] == "value: 3"

    def test_slow_json(self):
        code, out, _ = run("solve", "--n", "6", "--k", "2", "--kind", "saturation", "--first", "slow", "--json")
        d = json.loads(out)
        assert code == 0 and d["value"] == 5 and len(d["principal_variation"]) == 5

    def test_sperner(self):
        code, out, _ = run("solve", "--sperner", "--n", "4", "--first", "fast")
        assert code == 0 and out.startswith("value: 1")

    def test_caps(self):
        assert run("solve", "--n", "8", "--k", "3")[0] == 4
        assert run("solve", "--sperner", "--n", "6", "--first", "fast")[0] == 4

    def test_needs_k(self):
        assert run("solve", "--n", "5")[0] == 2


class TestVerify:
    def test_solver_suite(self):
        code, out, _ = run("verify", "--suite", "solver")
        assert code == 0 and "FAIL" not in out and out.count("PASS") == 16

    def test_small_sweeps(self):
        code, out, _ = run("verify", "--suite", "minimizer", "--k", "3..4", "--seeds", "3", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "suite,instance,measured,bound,pass"
        assert all(line.endswith(",True") for line in lines[1:])
        code, out, _ = run("verify", "--suite", "maximizer", "--k", "4,9", "--seeds", "2", "--format", "json")
        assert code == 0 and all(r["pass"] for r in json.loads(out))

    def test_failure_exit(self, monkeypatch):
        monkeypatch.setitem(verify.SUITES, "sperner", lambda: [CheckRow("sperner", "broken", 0, 1, False)])
        code, out, err = run("verify", "--suite", "sperner")
        assert code == 1 and "FAILED sperner: broken" in err

    def test_bad_k_list(self):
        assert run("verify", "--k", "x..y")[0] == 2

    @pytest.mark.parametrize("text,want", [("3..5", [3, 4, 5]), ("4,9", [4, 9]), ("1..2,7", [1, 2, 7])])
    def test_parse_int_list(self, text, want):
        assert cli.parse_int_list(text) == want


def test_console_script_is_deterministic(tmp_path):
    args = ["play", "--n", "30", "--k", "3", "--kind", "tau", "--a", "minimizer", "--b", "random", "--mode", "certify",
            "--seed", "5"]
    outs = []
    for i in range(2):
        path = tmp_path / f"run{i}.json"
        subprocess.run([sys.executable, "-m", "satgame.cli", *args, "--out", str(path)], check=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
