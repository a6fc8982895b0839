import json

import pytest

from fourleaf import parse_graph6
from fourleaf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_sharpness_fails(capsys):
    code, out, _ = run(capsys, "check", "--family", "sharpness", "--m", "1")
    assert code == 2
    assert "sigma_5 = 5" in out
    assert "fail" in out


def test_check_path_holds(capsys):
    from fourleaf import Graph, encode_graph6

    p6 = encode_graph6(Graph(6, [(i, i + 1) for i in range(5)]))
    code, out, _ = run(capsys, "check", "--graph6", p6)
    assert code == 0
    assert "infinite" in out


def test_check_records_mode(capsys):
    code, out, _ = run(capsys, "check", "--family", "sharpness", "--m", "2",
                       "--format", "records")
    assert code == 2
    rec = json.loads(out)
    assert rec["sigma5"] == 10 and rec["threshold"] == 11
    assert rec["k15_free"] is True and rec["connected"] is True


def test_solve_path_exit_zero(tmp_path, capsys):
    f = tmp_path / "p5.txt"
    f.write_text("5\n0 1\n1 2\n2 3\n3 4\n")
    code, out, _ = run(capsys, "solve", "--input", str(f), "--format", "records")
    assert code == 0
    rec = json.loads(out)
    assert rec["type"] == "tree" and rec["leaves"] == 2
    assert rec["branch_vertices"] <= 2


def test_solve_sharpness_refuted(capsys):
    code, out, _ = run(capsys, "solve", "--family", "sharpness", "--m", "3",
                       "--format", "records")
    assert code == 2
    rec = json.loads(out)
    assert rec["certificate"] == "low-sigma" and rec["degree_sum"] == 15


def test_solve_trace_written(tmp_path, capsys):
    trace = tmp_path / "trace.jsonl"
    code, _, _ = run(capsys, "solve", "--family", "sharpness", "--m", "2",
                     "--trace", str(trace))
    assert code == 2
    lines = trace.read_text().strip().splitlines()
    assert lines
    for ln in lines:
        rec = json.loads(ln)
        assert tuple(rec["phi_after"]) < tuple(rec["phi_before"])


def test_malformed_input_exit_one(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("3\n0 9\n")
    code, _, err = run(capsys, "solve", "--input", str(f))
    assert code == 1
    assert "error" in err


def test_bad_graph6_exit_one(capsys):
    code, _, err = run(capsys, "check", "--graph6", "B")
    assert code == 1


def test_oracle_star(capsys):
    code, out, _ = run(capsys, "oracle", "--graph6", "Bw", "--format", "records")
    assert code == 0
    rec = json.loads(out)
    assert rec["min_leaves"] == 2 and rec["exact"]


def test_oracle_k15(capsys):
    from fourleaf import Graph, encode_graph6

    k15 = encode_graph6(Graph(6, [(0, i) for i in range(1, 6)]))
    code, out, _ = run(capsys, "oracle", "--graph6", k15, "--format", "records")
    rec = json.loads(out)
    assert rec["min_leaves"] == 5


def test_gen_round_trips(capsys):
    code, out, _ = run(capsys, "gen", "--family", "sharpness", "--m", "2")
    assert code == 0
    g = parse_graph6(out.strip())
    assert g.n == 12


def test_gen_edge_list(capsys):
    code, out, _ = run(capsys, "gen", "--family", "sharpness", "--m", "1",
                       "--edge-list")
    from fourleaf import parse_edge_list, sharpness_graph

    assert parse_edge_list(out) == sharpness_graph(1)


def test_gen_random_family(capsys):
    code, out, _ = run(capsys, "gen", "--family", "random", "--n", "8",
                       "--seed", "4", "--format", "records")
    assert code == 0
    rec = json.loads(out)
    g = parse_graph6(rec["graph6"])
    from fourleaf import hypotheses_hold

    assert g.n == 8 and hypotheses_hold(g) is None


def test_validate_exhaustive_small(capsys):
    code, out, _ = run(capsys, "validate", "--exhaustive", "4",
                       "--format", "records", "--workers", "1")
    assert code == 0
    head = json.loads(out.strip().splitlines()[0])
    assert head["graphs_scanned"] == 64 and head["violations"] == 0


def test_validate_random_small(capsys):
    code, out, _ = run(capsys, "validate", "--random", "9", "--samples", "5",
                       "--seed", "2", "--workers", "1", "--format", "records")
    assert code == 0
    head = json.loads(out.strip().splitlines()[0])
    assert head["connected"] == 5 and head["violations"] == 0


def test_family_flags_validated(capsys):
    code, _, err = run(capsys, "gen", "--family", "sharpness")
    assert code == 1
    code, _, err = run(capsys, "gen", "--family", "random")
    assert code == 1
