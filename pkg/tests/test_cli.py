import io
import json

import pytest

from copsolve.cli import main
from copsolve.graph import encode_edge_list, petersen_graph


def run(capsys, *argv, stdin: str | None = None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_copnum(capsys):
    code, out, _ = run(capsys, "copnum", "--named", "petersen")
    assert code == 0 and json.loads(out)["cop_number"] == 3
    code, out, _ = run(capsys, "copnum", "--named", "path:9")
    assert json.loads(out)["cop_number"] == 1
    code, _, err = run(capsys, "copnum", "--named", "petersen", "--k-max", "2")
    assert code == 1 and "exceeds" in err


def test_graph_sources(capsys, tmp_path, monkeypatch):
    f = tmp_path / "g.txt"
    f.write_text(encode_edge_list(petersen_graph()))
    code, out, _ = run(capsys, "freeness", str(f))
    assert json.loads(out)["longest_induced_path_order"] == 5
    code, out, _ = run(capsys, "freeness", "-", stdin="Bw\nCl\n", monkeypatch=monkeypatch)
    assert len(out.strip().splitlines()) == 2
    code, _, err = run(capsys, "freeness", "notgraph6!")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "freeness")
    assert code == 2


def test_freeness_examples(capsys):
    _, out, _ = run(capsys, "freeness", "--named", "e_graph")
    assert json.loads(out)["claw_free"] is False
    _, out, _ = run(capsys, "freeness", "--named", "cycle:6")
    prof = json.loads(out)
    assert prof["longest_induced_path_order"] == 5 and all(prof[k] for k in ("claw_free", "butterfly_free", "c4_free", "c5_free", "e_free"))


def test_cliquesub(capsys):
    _, out, _ = run(capsys, "cliquesub", "--named", "wheel4")
    assert json.loads(out)["n"] == 16
    _, out, _ = run(capsys, "cliquesub", "--named", "petersen", "--pretty")
    data = json.loads(out)
    assert data["n"] == 30 and data["red_matching_size"] == 15


def test_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "lemma44", "--n-max", "5")
    assert code == 0 and json.loads(out)["summary"]["failed"] == 0
    code, out, _ = run(capsys, "verify", "thm12", "--n-max", "5", "--out", str(tmp_path / "r.json"))
    assert code == 0 and json.loads((tmp_path / "r.json").read_text())["campaign"] == "thm12"
    code, _, err = run(capsys, "verify", "lemma44", "--n-max", "9")
    assert code == 2 and "feasibility" in err


def test_simulate_and_replay(capsys, tmp_path):
    rec = tmp_path / "game.jsonl"
    code, out, _ = run(capsys, "simulate", "--named", "petersen", "--agent", "gyarfas", "--robber", "optimal", "--record", str(rec))
    assert code == 0 and json.loads(out.splitlines()[-1])["result"] == "capture"
    code, out, _ = run(capsys, "replay", str(rec))
    assert code == 0 and json.loads(out)["identical"] is True
    code, _, err = run(capsys, "simulate", "--named", "cycle:4", "--agent", "theorem12")
    assert code == 1 and "c4" in err
    code, out, _ = run(capsys, "simulate", "--named", "path:4", "--robber", "scripted", "--script", "3,3,3")
    assert code == 0
    code, _, _ = run(capsys, "simulate", "--named", "path:4", "--robber", "scripted")
    assert code == 2


def test_play_reads_moves_from_stdin(capsys, monkeypatch, tmp_path):
    rec = tmp_path / "p.jsonl"
    code, out, _ = run(capsys, "play", "--named", "path:4", "--record", str(rec), stdin="3\n3\n3\n", monkeypatch=monkeypatch)
    assert code == 0 and "capture" in out
    first = rec.read_text()
    run(capsys, "play", "--named", "path:4", "--record", str(rec), stdin="3\n3\n3\n", monkeypatch=monkeypatch)
    assert rec.read_text() == first


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as err:
        main(["verify", "nosuch", "--n-max", "3"])
    assert err.value.code == 2
