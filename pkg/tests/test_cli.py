import io
import json
import os
import subprocess
import sys

import pytest

from twistalex.cli import main
from twistalex.representations import Representation



@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("TWISTALEX_CACHE", str(tmp_path / "cache.json"))
    return tmp_path / "cache.json"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def rep_path(name):
    from importlib import resources

    return str(resources.files("twistalex") / "data" / "reps" / name)


class TestAlexander:
    def test_trefoil_exact_line(self):
        assert run("alexander", "torus:2,3") == (
            0,
            "Δ = 1 - t + t^2; τ = (1 - t + t^2)/(1 - t); deg 1; monic\n",
        )

    def test_cached_output_identical(self, isolated_cache):
        first = run("alexander", "5_2")
        assert isolated_cache.exists()
        assert run("alexander", "5_2") == first
        assert "not monic" in first[1]

    def test_input_errors(self, capsys):
        assert run("alexander", "torus:4,6")[0] == 2
        assert run("alexander", "no_such_knot")[0] == 2
        assert run("alexander", "braid:s1 s1")[0] == 2
        assert "error:" in capsys.readouterr().err


class TestL2:
    def test_unknot(self):
        code, text = run("l2", "unknot")
        assert code == 0
        assert text.splitlines()[0] == "max{1,t}^-1"
        assert "homomorphism: abelianization" in text

    def test_torus_coincidence(self):
        a = run("l2", "torus:3,7")[1].splitlines()[0]
        b = run("l2", "torus:4,5")[1].splitlines()[0]
        assert a == b == "max{1,t}^11"
        assert run("alexander", "torus:3,7")[1] != run("alexander", "torus:4,5")[1]

    def test_full_homomorphism(self):
        code, text = run("l2", "torus:2,5", "--homomorphism", "full")
        assert code == 0 and text.startswith("max{1,t}^3\nhomomorphism: full")
        assert run("l2", "4_1", "--homomorphism", "full")[0] == 2

    def test_plot(self, tmp_path):
        plot = tmp_path / "f.tsv"
        code, _ = run("l2", "4_1", "--plot", str(plot), "--tmax", "5", "--points", "11")
        assert code == 0
        rows = plot.read_text().splitlines()
        assert len(rows) == 11 and all(len(r.split("\t")) == 2 for r in rows)
        assert run("l2", "4_1", "--plot", str(plot), "--tmax", "0.5")[0] == 2


class TestParse:
    def test_braid_literal(self):
        code, text = run("parse", "s1 s1 s1")
        assert code == 0
        data = json.loads(text)
        assert data["generators"] == ["x1", "x2"] and data["weights"] == [1, 1]

    def test_file_round_trip(self, tmp_path):
        f = tmp_path / "p.json"
        f.write_text(run("parse", "X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)")[1])
        assert run("parse", str(f))[1] == f.read_text()

    def test_bad_input(self):
        assert run("parse", "s1 -2", "--format", "braid")[0] == 2
        assert run("parse", "X(1,1,1,1)")[0] == 2


class TestTwisted:
    def test_exact(self):
        code, text = run("twisted", "pd:X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)", "--rep", rep_path("3_1_rational.json"))
        assert code == 0 and "deg 2" in text and text.startswith("τ = ")

    def test_numeric_matches_exact_degree(self):
        exact = run("twisted", "braid:1 -2 1 -2", "--rep", rep_path("4_1_rational.json"))[1]
        numeric = run("twisted", "braid:1 -2 1 -2", "--rep", rep_path("4_1_rational.json"), "--numeric")[1]
        assert "deg 2;" in exact and numeric.startswith("deg 2;")

    def test_holonomy(self):
        code, text = run("twisted", "braid:1 -2 1 -2", "--rep", rep_path("4_1_holonomy.json"))
        assert code == 0 and text.startswith("deg 2; monic")

    def test_mismatched_rep(self):
        assert run("twisted", "3_1", "--rep", rep_path("4_1_rational.json"))[0] == 2
        assert run("twisted", "3_1", "--rep", "missing.json")[0] == 2


class TestRepsearch:
    def test_writes_files(self, tmp_path):
        code, text = run("repsearch", "3_1", "--prime", "5", "--out", str(tmp_path / "r"))
        assert code == 0
        paths = text.splitlines()[:-1]
        assert paths and text.splitlines()[-1].endswith("SL(2,F_5)")
        for p in paths:
            Representation.load(p)
        code, text = run("twisted", "3_1", "--rep", paths[0])
        assert code == 0

    def test_bad_prime(self):
        assert run("repsearch", "3_1", "--prime", "17")[0] == 2


class TestCheck:
    def test_bundled_symmetry(self):
        code, text = run("check", "bundled", "--suite", "symmetry", "--budget", "2", "--failures-only")
        assert code == 0
        assert text.splitlines()[-1] == "result: PASS"

    def test_failing_table(self, tmp_path):
        t = tmp_path / "t.json"
        t.write_text(json.dumps({"knots": [{"name": "x", "input": {"braid": "1 1 1"}, "genus": 3, "fibered": True}]}))
        code, text = run("check", str(t), "--suite", "fibered")
        assert code == 1 and "FAIL" in text

    def test_bad_table(self, tmp_path):
        t = tmp_path / "t.json"
        t.write_text('{"knots": [{"name": "x", "input": {"torus": [4, 6]}}]}')
        assert run("check", str(t))[0] == 2


class TestCache:
    def test_show_and_clear(self, isolated_cache):
        run("alexander", "3_1")
        code, text = run("cache", "show")
        assert code == 0 and "alexander-cli: 1" in text
        code, text = run("cache", "clear")
        assert code == 0 and text.startswith("cleared 1 entries")
        assert not isolated_cache.exists()
        assert "empty" in run("cache", "show")[1]

    def test_no_cache(self, isolated_cache):
        run("--no-cache", "alexander", "3_1")
        assert not isolated_cache.exists()


def test_console_script_is_deterministic(tmp_path):
    env = dict(os.environ, TWISTALEX_CACHE=str(tmp_path / "c.json"))
    cmd = [sys.executable, "-m", "twistalex.cli", "--seed", "7", "l2", "8_20"]
    a = subprocess.run(cmd, capture_output=True, env=env, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, env=env, check=True).stdout
    assert a == b and a
