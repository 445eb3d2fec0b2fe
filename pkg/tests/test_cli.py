import json

import pytest

from packlib.cli import main
from packlib.formats import format_edge_list, to_graph6
from packlib.graph import cycle, disjoint_union, empty, star
from packlib.placement import Placement


def write_graph(tmp_path, g, name="g.txt"):
    f = tmp_path / name
    f.write_text(format_edge_list(g))
    return str(f)


def test_pack_cycle_writes_verifiable_placement(tmp_path, capsys):
    gfile = write_graph(tmp_path, cycle(9))
    out = tmp_path / "p.txt"
    assert main(["pack", gfile, "--k", "4", "-o", str(out)]) == 0
    assert main(["verify", gfile, str(out)]) == 0
    report = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert report["ok"] is True


def test_pack_parity_refusal(tmp_path, capsys):
    gfile = write_graph(tmp_path, disjoint_union(cycle(7), empty(1)))
    assert main(["pack", gfile, "--k", "4"]) == 2
    assert "ParityObstruction" in capsys.readouterr().err


def test_pack_star_two_copies_impossible(tmp_path, capsys):
    gfile = write_graph(tmp_path, star(6))
    assert main(["pack", gfile, "--k", "2"]) == 2
    assert "Impossible" in capsys.readouterr().err


def test_pack_graph6_input_and_stdout(tmp_path, capsys):
    f = tmp_path / "g.g6"
    f.write_text(to_graph6(disjoint_union(cycle(9), empty(1))) + "\n")
    assert main(["pack", str(f), "--quiet"]) == 0
    p = Placement.loads(capsys.readouterr().out)
    assert p.k == 4 and p.n_host == 10


def test_pack_unknown_exit_code(tmp_path):
    from packlib.formats import from_graph6

    gfile = write_graph(tmp_path, from_graph6("J??????oH~?"))
    assert main(["pack", gfile, "--mode", "oracle", "--node-limit", "5", "--budget", "1"]) in (2, 3)


def test_verify_tampered_placement(tmp_path, capsys):
    from packlib.placement import verify

    g = cycle(9)
    gfile = write_graph(tmp_path, g)
    pfile = tmp_path / "p.txt"
    main(["pack", gfile, "-o", str(pfile), "--quiet"])
    p = Placement.loads(pfile.read_text())
    # swap the host images of two vertices in copy 2 until the copies collide
    bad = None
    for a in range(9):
        for b in range(a + 1, 9):
            row = list(p.maps[1])
            row[a], row[b] = row[b], row[a]
            q = Placement(p.n_host, (p.maps[0], tuple(row)) + p.maps[2:])
            if not verify(g, q).ok:
                bad = q
                break
        if bad:
            break
    pfile.write_text(bad.dumps())
    capsys.readouterr()
    assert main(["verify", gfile, str(pfile)]) == 2
    report = json.loads(capsys.readouterr().out.strip())
    assert report["ok"] is False and report["edge"] is not None


def test_verify_mismatched_order(tmp_path):
    gfile = write_graph(tmp_path, cycle(9))
    pfile = tmp_path / "p.txt"
    pfile.write_text(Placement(10, tuple(tuple(range(10)) for _ in range(4))).dumps())
    assert main(["verify", gfile, str(pfile)]) == 1


def test_parse_error_exit_code(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("0 1\n1 x\n")
    assert main(["pack", str(f)]) == 1
    assert "line 2" in capsys.readouterr().err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["pack"])
    assert info.value.code == 1


def test_census_third_copy(capsys):
    assert main(["census", "--n", "6", "--q", "5", "--k", "3", "--min-girth", "5", "--exact-edges"]) == 0
    lines = capsys.readouterr().out.split()
    assert len(lines) == 4 and lines == sorted(lines)


def test_census_incomplete(tmp_path, capsys):
    f = tmp_path / "in.g6"
    f.write_text("J??????oH~?\n")
    code = main(["census", "--n", "11", "--q", "10", "--k", "4", "--input", str(f), "--node-limit", "10"])
    assert code == 3
    assert "INCOMPLETE" in capsys.readouterr().err


def test_derive_w_small(tmp_path):
    out = tmp_path / "w.g6"
    assert main(["derive-w", "--max-order", "9", "-o", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("# packlib W catalog") and "max_order=9" in text


def test_data_dir_override(tmp_path, monkeypatch):
    monkeypatch.setenv("PACKLIB_DATA_DIR", str(tmp_path / "missing"))
    assert main(["verify", "x", "y"]) == 1
