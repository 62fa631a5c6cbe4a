import json
import os

import pytest

from heckecells.cli import main


def run(tmp_path, *args, name="out.json"):
    out = tmp_path / name
    rc = main(list(args) + ["--out", str(out)])
    return rc, out


def test_ball_artifact(tmp_path):
    rc, out = run(tmp_path, "ball", "--datum", "A1:sc", "--radius", "3")
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["size"] == 7
    assert data["convention"] == "soergel-v1"


def test_klpoly_example(tmp_path):
    rc, out = run(tmp_path, "klpoly", "--datum", "A1:sc", "--radius", "6",
                  "--pair", "e,s0s1s0")
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["p"] == {"3": 1}


def test_cells_artifact(tmp_path):
    rc, out = run(tmp_path, "cells", "--datum", "A1:sc", "--radius", "8")
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["two_sided_count"] == 2
    assert data["distinguished"] == ["e", "s0", "s1"]


def test_determinism_cold_vs_warm(tmp_path):
    cache = tmp_path / "cache"
    rc1, out1 = run(tmp_path, "cells", "--datum", "A1:sc", "--radius", "8",
                    "--cache-dir", str(cache), name="cold.json")
    rc2, out2 = run(tmp_path, "cells", "--datum", "A1:sc", "--radius", "8",
                    "--cache-dir", str(cache), name="warm.json")
    assert rc1 == rc2 == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_afn_and_gamma(tmp_path):
    rc, out = run(tmp_path, "afn", "--datum", "A1:sc", "--radius", "6")
    assert rc == 0
    rows = json.loads(out.read_text())["a_function"]
    by_word = {r["word"]: r for r in rows}
    assert by_word["e"]["a"] == 0
    assert by_word["s0"]["a"] == 1 and by_word["s0"]["stabilized"]
    rc, out = run(tmp_path, "gamma", "--datum", "A1:sc", "--radius", "6")
    assert rc == 0
    triples = json.loads(out.read_text())["product_triples"]
    assert ["s0", "s0", "s0", 1] in triples


def test_jring_dump(tmp_path):
    rc, out = run(tmp_path, "jring", "--datum", "A1:sc", "--radius", "8",
                  "--cell", "lowest")
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["a_value"] == 1
    assert ["s0s1", "s1s0", [["s0", 1], ["s0s1s0", 1]], True] in data["products"]


def test_convalg_builtin_target(tmp_path):
    rc, out = run(tmp_path, "convalg", "--target", "sl2-2pt", "--bound", "2")
    assert rc == 0
    data = json.loads(out.read_text())
    assert len(data["basis"]) == 12
    assert data["distinguished"] == ["E00*V(0)", "E11*V(0)"]


def test_verify_subcommand(tmp_path):
    rc, out = run(tmp_path, "verify", "--datum", "A1:sc", "--radius", "10",
                  "--extended", "--cell", "lowest", "--target", "sl2-2pt",
                  "--bound", "4")
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["report"]["verdict"] == "consistent"
    assert data["report"]["convention"] == "opposite"


def test_error_exit_code(tmp_path, capsys):
    rc = main(["cells", "--datum", "E8:sc", "--radius", "4",
               "--out", str(tmp_path / "x.json")])
    assert rc == 2
    record = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert "error" in record


def test_env_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("HECKECELLS_CACHE", str(tmp_path / "envcache"))
    rc, out = run(tmp_path, "klpoly", "--datum", "A1:sc", "--radius", "4",
                  "--pair", "e,s0")
    assert rc == 0
    assert os.path.isdir(tmp_path / "envcache")
