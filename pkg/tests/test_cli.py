import orjson
import pytest

from equicolor.cli import run
from equicolor.io import read_edge_list, write_edge_list
from equicolor.models.coloring import ColoringDocument
from equicolor.models.config import SolverConfig
from equicolor.models.graph import complete_graph
from equicolor.services.bench import BenchReport, run_instance
from equicolor.services.generators import gen_complete_bipartite, gen_grid_diagonals, gen_q3_diagonals


@pytest.fixture
def grid_file(tmp_path):
    path = tmp_path / "grid.el"
    write_edge_list(gen_grid_diagonals(5, 6), path)
    return path


def test_color_then_verify(tmp_path, grid_file, capsys):
    out = tmp_path / "coloring.json"
    trace = tmp_path / "trace.json"
    assert run(["color", "--r", "13", "--in", str(grid_file), "--out", str(out), "--trace", str(trace)]) == 0
    doc = ColoringDocument.read(out)
    assert doc.r == 13 and sum(doc.class_sizes) == 30
    assert run(["verify", "--in", str(grid_file), "--coloring", str(out), "--r", "13"]) == 0
    assert capsys.readouterr().out.strip().endswith("ok")
    assert run(["trace", "verify", "--in", str(grid_file), "--trace", str(trace)]) == 0


def test_color_to_stdout(grid_file, capsys):
    assert run(["color", "--r", "14", "--in", str(grid_file), "--seed", "3"]) == 0
    doc = orjson.loads(capsys.readouterr().out)
    assert doc["schema"] == 1
    assert len(doc["assignment"]) == 30


def test_verify_rejects_corrupted_colouring(tmp_path, grid_file):
    out = tmp_path / "coloring.json"
    assert run(["color", "--r", "13", "--in", str(grid_file), "--out", str(out)]) == 0
    doc = ColoringDocument.read(out)
    # vertices 0 and 1 are adjacent
    doc.assignment[1] = doc.assignment[0]
    doc.class_sizes = doc.to_coloring().sizes()
    doc.write(out)
    assert run(["verify", "--in", str(grid_file), "--coloring", str(out)]) == 2
    assert run(["verify", "--in", str(grid_file), "--coloring", str(out), "--r", "14"]) == 2


def test_verify_rejects_mismatched_class_sizes(tmp_path, grid_file, capsys):
    out = tmp_path / "coloring.json"
    assert run(["color", "--r", "13", "--in", str(grid_file), "--out", str(out)]) == 0
    doc = ColoringDocument.read(out)
    doc.class_sizes[0] += 1
    doc.write(out)
    assert run(["verify", "--in", str(grid_file), "--coloring", str(out)]) == 2
    assert "class_sizes" in capsys.readouterr().err


def test_oracle_exit_codes(tmp_path, capsys):
    path = tmp_path / "k77.el"
    write_edge_list(gen_complete_bipartite(7, 7), path)
    assert run(["oracle", "--k", "7", "--in", str(path), "--require-feasible"]) == 4
    capsys.readouterr()
    assert run(["oracle", "--k", "7", "--in", str(path)]) == 0
    assert orjson.loads(capsys.readouterr().out)["feasible"] is False
    out = tmp_path / "oracle.json"
    assert run(["oracle", "--k", "4", "--in", str(path), "--out", str(out)]) == 0
    assert orjson.loads(out.read_bytes())["coloring"]["r"] == 4


def test_gen_is_reproducible(tmp_path):
    first, second = tmp_path / "a.el", tmp_path / "b.el"
    assert run(["gen", "--family", "q3_diag", "--out", str(first)]) == 0
    assert run(["gen", "--family", "q3_diag", "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert read_edge_list(first) == gen_q3_diagonals()
    assert run(["gen", "--family", "random_subgraph", "--rows", "4", "--cols", "4", "--keep", "9", "--seed", "2"]) == 0


def test_usage_errors(tmp_path, grid_file):
    assert run(["color", "--r", "13", "--in", str(grid_file), "--bogus"]) == 2
    assert run(["color", "--r", "12", "--in", str(grid_file)]) == 2
    assert run(["gen", "--family", "grid_diag", "--rows", "1", "--cols", "3"]) == 2
    assert run(["color", "--r", "13", "--in", str(tmp_path / "missing.el")]) == 1


def test_rejected_input_exit_code(tmp_path):
    path = tmp_path / "k9.el"
    write_edge_list(complete_graph(9), path)
    assert run(["color", "--r", "13", "--in", str(path)]) == 2


def test_bench(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    assert run(["bench", "--corpus", str(corpus), "--r", "13"]) == 0
    write_edge_list(gen_grid_diagonals(4, 5), corpus / "grid.el")
    write_edge_list(complete_graph(9), corpus / "k9.el")
    (corpus / "binary.el").write_bytes(b"p edge 2 0\nc \xff\xfe\n")
    (corpus / "notes.md").write_text("ignored")
    report_path = tmp_path / "bench.json"
    assert run(["bench", "--corpus", str(corpus), "--r", "13", "--out", str(report_path)]) == 0
    report = BenchReport.read(report_path)
    assert [(row.instance, row.status) for row in report.rows] == [
        ("binary.el", "GraphFormatError"),
        ("grid.el", "ok"),
        ("k9.el", "InvalidInput"),
    ]
    assert "k9.el" in capsys.readouterr().out


def test_bench_records_unreadable_instance(tmp_path):
    row = run_instance(tmp_path / "missing.el", SolverConfig(r=13))
    assert row.status == "FileNotFoundError"
    assert row.error


def test_undecodable_input_exit_code(tmp_path):
    path = tmp_path / "binary.el"
    path.write_bytes(b"p edge 2 0\nc \xff\xfe\n")
    assert run(["color", "--r", "13", "--in", str(path)]) == 2
