import csv
import json

import pytest

from enmity.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_and_analyze(tmp_path, capsys):
    edges = tmp_path / "g.csv"
    code, _, _ = run(capsys, "generate", "--kind", "path", "--n", "3", "--out", edges)
    assert code == 0
    code, out, _ = run(capsys, "analyze", edges, "--family", "same", "--lenient", "--no-timestamp")
    assert code == 0
    doc = json.loads(out)
    assert doc["variants"][0]["delta_g"] == pytest.approx(-1 / 6)


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("src,dst,sign\na,a,+1\n")
    assert run(capsys, "analyze", bad)[0] == 2
    neg = tmp_path / "neg.csv"
    neg.write_text("src,dst,sign\na,b,-1\n")
    code, _, err = run(capsys, "analyze", neg, "--family", "same")
    assert code == 3 and "symmetrized[+]" in err


def test_oracle_size_cap(tmp_path, capsys):
    big = tmp_path / "big.csv"
    run(capsys, "generate", "--kind", "path", "--n", "100", "--out", big)
    assert run(capsys, "oracle", big)[0] == 2


def test_oracle_fixtures(capsys):
    code, out, _ = run(capsys, "oracle", "--fixtures")
    assert code == 0 and json.loads(out)["failures"] == 0


def test_seed_from_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ENMITY_SEED", "17")
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    c = tmp_path / "c.csv"
    base = ["generate", "--kind", "erdos-renyi-signed", "--n", "20", "--p-neg", "0.2"]
    run(capsys, *base, "--out", a)
    run(capsys, *base, "--out", b, "--seed", "17")
    run(capsys, *base, "--out", c, "--seed", "18")
    assert a.read_text() == b.read_text() != c.read_text()


def test_rewire_and_embed(tmp_path, capsys):
    ring = tmp_path / "ring.csv"
    run(capsys, "generate", "--kind", "regular", "--n", "8", "--k", "2", "--out", ring)
    trace = tmp_path / "trace.csv"
    out_edges = tmp_path / "rewired.csv"
    code, out, _ = run(capsys, "rewire", ring, "--objective", "global", "--trace", trace, "--out", out_edges)
    summary = json.loads(out)
    assert code == 0 and summary["edges_after"] == summary["edges_before"] == 8
    assert abs(summary["delta_g_after"]) > abs(summary["delta_g_before"])
    rows = list(csv.DictReader(trace.open()))
    assert len(rows) == summary["accepted"] + 1
    code, out, _ = run(capsys, "embed", out_edges)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("node,component") and len(lines) == 9


def test_fixtures_listing(tmp_path, capsys):
    code, out, _ = run(capsys, "fixtures", "--out-dir", tmp_path)
    assert code == 0
    assert json.loads(out)["path3"]["expected"]["delta_g"] == "-1/6"
    assert (tmp_path / "mixed3.csv").exists()
