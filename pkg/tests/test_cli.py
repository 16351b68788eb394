from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from catpairs.cli import main
from catpairs.encodings import FORMATS
from catpairs.pairs import enumerate_pairs

from conftest import WORKED_DYCK, WORKED_MATCHING


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def worked_file(tmp_path, worked_pair):
    path = tmp_path / "pair.json"
    path.write_text(worked_pair.to_json())
    return path


def test_count_catalan():
    assert run("count", "--family", "catalan", "--n", "5")[:2] == (0, "42\n")


def test_count_avoiders():
    assert run("count", "--family", "avoiders:53214,54213,54312", "--n", "7")[:2] == (0, "3988\n")


@pytest.mark.parametrize(
    "family, n, expected",
    [("connected", 5, 28), ("lattice", 5, 5), ("comp-hk:2,1", 5, 90), ("unrestricted", 3, 40),
     ("grand-dyck", 3, 20), ("schroder", 3, 22), ("factorial", 4, 24)],
)
def test_count_families(family, n, expected):
    assert run("count", "--family", family, "--n", str(n))[:2] == (0, f"{expected}\n")


def test_verify_worked_pair(worked_file):
    code, out, _ = run("verify", "--input", str(worked_file))
    assert code == 0
    assert json.loads(out)["valid"] is True


def test_verify_invalid_pair(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 2, "S": [], "R": []}')
    code, out, _ = run("verify", "--input", str(path))
    assert code == 1
    assert json.loads(out)["axioms"]["tot"]["witness"] == [0, 1]


def test_verify_profile(tmp_path):
    path = tmp_path / "gd.json"
    path.write_text(json.dumps({"n": 1, "S": [], "R": [], "diagonal": [0]}))
    assert run("verify", "--input", str(path), "--profile", "grand-dyck")[0] == 0
    assert run("verify", "--input", str(path), "--profile", "catalan")[0] == 1


def test_convert_matching_to_dyck(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text(WORKED_MATCHING + "\n(1,2)\n")
    code, out, _ = run("convert", "--from", "matching", "--to", "dyck", "--input", str(path))
    assert code == 0
    assert out.splitlines() == [WORKED_DYCK, "UD"]


def test_convert_rejects_231(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("231\n")
    code, _, err = run("convert", "--from", "perm", "--to", "dyck", "--input", str(path))
    assert code == 1 and "comp" in err


def test_convert_bad_carrier(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("(1,3),(2,4)\n")
    assert run("convert", "--from", "matching", "--to", "json", "--input", str(path))[0] == 1


@pytest.mark.parametrize("src", [f for f in FORMATS])
@pytest.mark.parametrize("dst", [f for f in FORMATS])
def test_convert_round_trips(tmp_path, src, dst):
    for n in range(7):
        code, first, _ = run("enumerate", "--n", str(n), "--format", src)
        assert code == 0
        a = tmp_path / "a.txt"
        a.write_text(first)
        code, mid, _ = run("convert", "--from", src, "--to", dst, "--input", str(a))
        assert code == 0
        b = tmp_path / "b.txt"
        b.write_text(mid)
        code, back, _ = run("convert", "--from", dst, "--to", src, "--input", str(b))
        assert code == 0
        assert back == first


def test_enumerate_json_lines():
    code, out, _ = run("enumerate", "--n", "3")
    assert code == 0
    lines = out.splitlines()
    assert [json.loads(line) for line in lines] == [p.to_json_obj() for p in enumerate_pairs(3)]


def test_analyze(worked_file):
    code, out, _ = run("analyze", "--input", str(worked_file))
    assert code == 0
    assert set(json.loads(out)) == {"connected", "lattice", "distributive", "sTreeCode", "simClasses"}


def test_oracle_command():
    code, out, _ = run("oracle", "--n", "3", "--profile", "catalan")
    assert code == 0 and json.loads(out)["isoClassCount"] == 5
    code, out, _ = run("oracle", "--n", "4", "--profile", "posets")
    assert json.loads(out) == {"n": 4, "isoClassCount": 16, "rFree": 14}


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["count", "--family", "catalan"],
        ["count", "--family", "nope", "--n", "3"],
        ["count", "--family", "catalan", "--n", "3", "--extra"],
        ["enumerate", "--n", "13"],
        ["oracle", "--n", "6"],
        ["verify", "--input", "/nonexistent/file.json"],
        ["enumerate", "--n", "2", "--format", "xml"],
    ],
)
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_malformed_json(tmp_path):
    path = tmp_path / "x.json"
    path.write_text("{not json")
    assert run("verify", "--input", str(path))[0] == 1


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "catpairs", "enumerate", "--n", "4", "--format", "perm"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and len(a.splitlines()) == 14
