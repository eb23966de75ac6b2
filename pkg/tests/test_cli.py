import json

import pytest

import main
from graph_core import serialize_graph
from tests.conftest import C4, C6, K2, K3, K4, P3, STAR


@pytest.fixture
def graph_file(tmp_path):
    def write(g, name="g.dimacs"):
        path = tmp_path / name
        path.write_text(serialize_graph(g))
        return str(path)

    return write


def run(capsys, *argv):
    code = main.main(list(argv))
    return code, capsys.readouterr()


def test_solve_exact_yes_and_no(capsys, graph_file):
    code, out = run(capsys, "solve", graph_file(K4), "--exact")
    assert code == 0
    assert out.out.startswith("decision=yes\npart0:")

    code, out = run(capsys, "solve", graph_file(P3), "--exact")
    assert code == 1
    assert "decision=no" in out.out


def test_solve_randomized_c6(capsys, graph_file):
    code, out = run(capsys, "solve", graph_file(C6), "--randomized", "--seed", "7", "--output", "json")
    assert code == 0
    report = json.loads(out.out)
    assert report["decision"] == "yes"
    assert report["seed"] == 7
    assert sorted(v for part in report["witness"] for v in part) == [1, 2, 3, 4, 5, 6]


def test_solve_json_is_byte_identical_without_timing(capsys, graph_file):
    path = graph_file(C6)
    for flags in (["--exact"], ["--randomized", "--seed", "3"]):
        argv = ["solve", path, *flags, "--output", "json", "--no-timing"]
        first, second = run(capsys, *argv)[1].out, run(capsys, *argv)[1].out
        assert first == second
        assert "wall_ms" not in first


def test_exact_and_randomized_are_exclusive(capsys, graph_file):
    with pytest.raises(SystemExit) as info:
        main.main(["solve", graph_file(K3), "--exact", "--randomized"])
    assert info.value.code == 2


def test_walk_flags_with_exact_are_usage_errors(capsys, graph_file):
    code, out = run(capsys, "solve", graph_file(K3), "--exact", "--max-trials", "5")
    assert code == 2
    assert "error:" in out.err


def test_parse_error_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.dimacs"
    bad.write_text("p edge 2 1\ne 1 1\n")
    code, out = run(capsys, "solve", str(bad), "--exact")
    assert code == 2
    assert "line 2" in out.err


def test_missing_file_exits_2(capsys, tmp_path):
    code, _ = run(capsys, "oracle", str(tmp_path / "nope.txt"))
    assert code == 2


def test_non_utf8_file_is_a_usage_error(capsys, tmp_path):
    path = tmp_path / "g.dimacs"
    path.write_bytes(b"p edge 3 3\n\xff\xfe\x00bad\n")
    code, out = run(capsys, "solve", str(path), "--exact")
    assert code == 2
    assert "cannot read" in out.err
    assert "Traceback" not in out.err



def test_enum_mds_listing(capsys, graph_file):
    code, out = run(capsys, "enum-mds", graph_file(K3))
    assert code == 0
    assert out.out == "1\n2\n3\ncount=3\n"

    _, out = run(capsys, "enum-mds", graph_file(P3))
    assert out.out == "2\n1 3\ncount=2\n"

    _, out = run(capsys, "enum-mds", graph_file(C4), "--output", "json")
    assert json.loads(out.out)["count"] == 6


def test_encode_k3(capsys, graph_file):
    code, out = run(capsys, "encode", graph_file(K3), "--index", "0")
    assert code == 0
    lines = out.out.splitlines()
    assert "c vertices=3 nae_clauses=6" in lines
    assert "c var 1 = vertex 2" in lines
    assert lines[-3:] == ["p cnf 2 2", "1 2 0", "-1 -2 0"]


def test_encode_star_center_is_trivially_unsat(capsys, graph_file, tmp_path):
    _, out = run(capsys, "encode", graph_file(STAR), "--index", "0")
    assert "1 0" in out.out.splitlines() and "-1 0" in out.out.splitlines()
    cnf = tmp_path / "star.cnf"
    cnf.write_text(out.out)
    code, out = run(capsys, "sat", str(cnf))
    assert code == 1
    assert out.out.strip() == "s UNSATISFIABLE"


def test_encode_index_out_of_range(capsys, graph_file):
    code, out = run(capsys, "encode", graph_file(K3), "--index", "3")
    assert code == 2
    assert "out of range" in out.err


def test_sat_prints_model(capsys, tmp_path):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 2 2\n1 2 0\n-1 -2 0\n")
    code, out = run(capsys, "sat", str(cnf))
    assert code == 0
    status, model = out.out.splitlines()
    assert status == "s SATISFIABLE"
    assert model.startswith("v ") and model.endswith(" 0")


def test_oracle_examples(capsys, graph_file):
    code, out = run(capsys, "oracle", graph_file(C4))
    assert (code, out.out) == (1, "delta=2\n")
    code, out = run(capsys, "oracle", graph_file(C6))
    assert code == 0
    assert out.out.startswith("delta=3\npart0:")
    assert run(capsys, "oracle", graph_file(K2))[1].out == "delta=2\n"


def test_oracle_limit_suggests_exact(capsys, graph_file):
    code, out = run(capsys, "oracle", graph_file(C6), "--oracle-limit", "4")
    assert code == 2
    assert "solve --exact" in out.err


def test_verify_roundtrip(capsys, graph_file, tmp_path):
    path = graph_file(C6)
    _, out = run(capsys, "solve", path, "--exact", "--output", "json")
    report = tmp_path / "report.json"
    report.write_text(out.out)
    code, out = run(capsys, "verify", path, str(report))
    assert (code, out.out) == (0, "certified\n")

    lines = tmp_path / "witness.txt"
    lines.write_text("1 2\n3 4\n5 6\n")
    code, out = run(capsys, "verify", path, str(lines))
    assert (code, out.out) == (1, "not certified\n")


def test_verify_malformed_witness(capsys, graph_file, tmp_path):
    lines = tmp_path / "witness.txt"
    lines.write_text("1 2\n2 3\n4 5 6\n")
    code, _ = run(capsys, "verify", graph_file(C6), str(lines))
    assert code == 2


def test_witness_with_missing_trailing_parts(capsys, graph_file, tmp_path):
    lines = tmp_path / "witness.txt"
    lines.write_text("1\n2\n3")
    code, out = run(capsys, "verify", graph_file(K3), str(lines))
    assert (code, out.out) == (0, "certified\n")

    lines.write_text("1 2\n3 4")
    code, out = run(capsys, "verify", graph_file(K4), str(lines))
    assert (code, out.out) == (1, "not certified\n")



def test_bases_table(capsys):
    code, out = run(capsys, "bases")
    assert code == 0
    rows = out.out.splitlines()
    assert len(rows) == 6
    assert rows[0].startswith("delta=3 base=2.2500")
    assert rows[-1].startswith("delta=8 base=2.6667")

    _, out = run(capsys, "bases", "--min-delta", "2", "--max-delta", "2", "--n", "10", "--output", "json")
    assert json.loads(out.out) == [{"delta": 2, "base": 2.0, "trials": 20480}]


def test_bench_cycles(capsys, tmp_path):
    out_path = tmp_path / "bench.csv"
    code, _ = run(capsys, "bench", "--generator", "cycle", "--n-min", "3", "--n-max", "12", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "id,n,m,delta_max,mode,decision,mds_count,sat_calls,trials,wall_ms"
    for line in lines[1:]:
        fields = line.split(",")
        n, decision = int(fields[1]), fields[5]
        assert (decision == "yes") == (n % 3 == 0)
