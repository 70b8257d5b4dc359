import subprocess
import sys

import pytest

from p2t.cli import main
from p2t.formats import parse_graph, parse_partition

from conftest import DATA


@pytest.fixture
def cnf(tmp_path):
    def write(text, name="f.cnf"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


@pytest.fixture
def reduced(tmp_path):
    graph, manifest = tmp_path / "g.txt", tmp_path / "m.json"
    assert main(["reduce", str(DATA / "single_clause.cnf"), str(graph), str(manifest)]) == 0
    return graph, manifest


class TestReduce:
    def test_single_clause(self, reduced, capsys):
        graph, manifest = reduced
        g = parse_graph(graph.read_text())
        assert (g.num_vertices, g.num_edges) == (37, 50)
        assert graph.read_text() == (DATA / "single_clause.graph").read_text()
        assert manifest.read_text() == (DATA / "single_clause.manifest.json").read_text()

    def test_unit_clause(self, cnf, tmp_path, capsys):
        out = tmp_path / "g.txt"
        assert main(["reduce", cnf("p cnf 1 1\n1 0\n"), str(out), str(tmp_path / "m")]) == 1
        assert "trivially NAE-unsatisfiable (unit clause)" in capsys.readouterr().out
        assert not out.exists()

    def test_missing_file(self, tmp_path):
        assert main(["reduce", str(tmp_path / "nope.cnf"), "g", "m"]) == 2

    def test_malformed(self, cnf, tmp_path, capsys):
        assert main(["reduce", cnf("p cnf 2 1\n1 3 0\n"), "g", "m"]) == 2
        assert "line 2" in capsys.readouterr().err


class TestPipeline:
    def test_single_clause(self, capsys):
        assert main(["pipeline", str(DATA / "single_clause.cnf")]) == 0
        assert "YES + certificates verified" in capsys.readouterr().out

    def test_x1x1(self, capsys):
        assert main(["pipeline", str(DATA / "x1x1.cnf"), "--budget", "600"]) == 1
        assert "no-partition" in capsys.readouterr().out

    def test_empty(self, cnf):
        assert main(["pipeline", cnf("p cnf 0 0\n")]) == 0

    def test_timeout(self, cnf):
        # an odd cycle of inequalities: NAE-unsatisfiable, and not refuted at the root
        odd = cnf("p cnf 3 3\n1 2 0\n2 3 0\n1 3 0\n")
        assert main(["pipeline", odd, "--node-cap", "1"]) == 3

    def test_unit_clause(self, cnf):
        assert main(["pipeline", cnf("p cnf 1 1\n1 0\n")]) == 1

    def test_malformed(self, cnf):
        assert main(["pipeline", cnf("p cnf 1 1\n1\n")]) == 2


class TestMisc:
    def test_solve_nae(self, capsys):
        assert main(["solve-nae", str(DATA / "single_clause.cnf")]) == 0
        assert "v -1 -2 -3 0" in capsys.readouterr().out
        assert main(["solve-nae", str(DATA / "x1x1.cnf")]) == 1

    def test_solve_nae_cap(self, cnf, capsys):
        assert main(["solve-nae", cnf("p cnf 3 1\n1 2 0\n"), "--nae-var-cap", "2"]) == 2
        assert "--nae-var-cap" in capsys.readouterr().err

    def test_bound(self, cnf, tmp_path):
        out = tmp_path / "b.cnf"
        assert main(["bound", cnf("p cnf 4 3\n1 2 0\n1 3 0\n1 4 0\n"), "-o", str(out)]) == 0
        body = [l for l in out.read_text().splitlines() if not l.startswith("c")]
        assert body == ["p cnf 5 4", "1 2 0", "5 3 0", "5 4 0", "1 -5 0"]

    def test_witness_verify_extract(self, reduced, tmp_path, capsys):
        graph, manifest = reduced
        part = tmp_path / "p.txt"
        assert main(["witness", str(DATA / "single_clause.cnf"), "--assignment", "1 2 3",
                     "-o", str(part)]) == 0
        assert main(["verify", str(graph), str(part)]) == 0
        assert main(["extract", str(graph), str(manifest), str(part)]) == 0
        out = capsys.readouterr().out
        assert "accept" in out and "v 1 2 3 0" in out

    def test_witness_rejects_bad_assignment(self, capsys):
        assert main(["witness", str(DATA / "single_clause.cnf"), "--assignment", "-1 2 -3"]) == 1

    def test_verify_all_class_a(self, reduced, tmp_path, capsys):
        graph, _ = reduced
        g = parse_graph(graph.read_text())
        part = tmp_path / "all_a.txt"
        part.write_text("p2t-partition v1\n" + "".join(f"{u} {w} A\n" for u, w in g.edges))
        assert main(["verify", str(graph), str(part)]) == 1
        assert "class-empty" in capsys.readouterr().out

    def test_verify_partial_partition(self, reduced, tmp_path):
        graph, _ = reduced
        part = tmp_path / "short.txt"
        part.write_text("p2t-partition v1\nt(-1) v(0) A\n")
        assert main(["verify", str(graph), str(part)]) == 2

    def test_solve(self, reduced, tmp_path, capsys):
        graph, manifest = reduced
        part = tmp_path / "s.txt"
        assert main(["solve", str(graph), "--budget", "60", "-o", str(part)]) == 0
        assert len(parse_partition(part.read_text())) == 50
        assert main(["extract", str(graph), str(manifest), str(part)]) == 0
        assert main(["solve", str(graph), "--node-cap", "1"]) == 3

    def test_stats_on_bounded_reduction(self, cnf, tmp_path, capsys):
        heavy = cnf("p cnf 3 4\n1 2 0\n1 3 0\n1 -2 0\n1 -3 2 0\n")
        bounded, graph = tmp_path / "b.cnf", tmp_path / "g.txt"
        assert main(["bound", heavy, "-o", str(bounded)]) == 0
        assert main(["reduce", str(bounded), str(graph), str(tmp_path / "m.json")]) == 0
        capsys.readouterr()
        assert main(["stats", str(graph)]) == 0
        assert "max degree 4" in capsys.readouterr().out

    def test_export_dot(self, reduced, tmp_path):
        graph, _ = reduced
        out = tmp_path / "g.dot"
        assert main(["export-dot", str(graph), "-o", str(out)]) == 0
        assert "style=dashed" in out.read_text()

    def test_gen_is_seeded(self, tmp_path):
        a, b = tmp_path / "a.cnf", tmp_path / "b.cnf"
        assert main(["gen", "--seed", "5", "-o", str(a)]) == 0
        assert main(["gen", "--seed", "5", "-o", str(b)]) == 0
        assert a.read_text() == b.read_text()

    def test_usage_error(self):
        assert main(["bogus"]) == 2
        assert main([]) == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "p2t", "solve-nae", str(DATA / "single_clause.cnf")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "NAE-SATISFIABLE" in proc.stdout
