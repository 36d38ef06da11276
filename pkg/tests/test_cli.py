import json

import pytest

from graphroot.cli import EXIT_INTERNAL, EXIT_NO, EXIT_USAGE, EXIT_YES, run
from graphroot.core import complete_graph, compute_square, cycle_graph, path_graph
from graphroot.datafeeds import read_graph_file, write_graph_file
from graphroot.definitions import result_keys


@pytest.fixture
def files(tmp_path):
    graphs = {
        "k3.gr": complete_graph(range(3)),
        "k4.gr": complete_graph(range(4)),
        "p3.gr": path_graph(range(3)),
        "c7.gr": cycle_graph(range(7)),
        "c7sq.gr": compute_square(cycle_graph(range(7))),
    }
    paths = {}
    for name, g in graphs.items():
        path = tmp_path / name
        path.write_text(write_graph_file(g))
        paths[name] = str(path)
    paths["bad.gr"] = str(tmp_path / "bad.gr")
    (tmp_path / "bad.gr").write_text("p edge 2 1\ne 1 9\n")
    return paths


def test_minroot_complete_graph(files, capsys):
    assert run(["minroot", files["k4.gr"], "-k", "0"]) == EXIT_YES
    assert "root with 3 edges" in capsys.readouterr().out


def test_maxroot_path_has_no_root(files):
    assert run(["maxroot", files["p3.gr"], "--exact"]) == EXIT_NO
    assert run(["maxroot", files["p3.gr"], "--fpt", "-k", "1"]) == EXIT_NO


def test_minroot_c7_square(files, tmp_path):
    assert run(["minroot", files["c7sq.gr"], "-k", "0"]) == EXIT_NO

    root = str(tmp_path / "root.gr")
    dot = str(tmp_path / "root.dot")
    assert run(["minroot", files["c7sq.gr"], "-k", "1", "--emit-root", root, "--emit-dot", dot]) == EXIT_YES
    assert read_graph_file(root).m == 7
    assert run(["verify", root, files["c7sq.gr"]]) == EXIT_YES
    with open(dot) as fh:
        assert fh.read().startswith("graph root {")


def test_minroot_emits_kernel(files, tmp_path):
    kernel = tmp_path / "kernel.gr"
    assert run(["minroot", files["c7sq.gr"], "-k", "1", "--emit-kernel", str(kernel)]) == EXIT_YES
    text = kernel.read_text()
    assert text.startswith("c kernel k 1\n")
    assert "c required" in text
    assert read_graph_file(str(kernel)).n <= 48


def test_json_result(files, capsys):
    assert run(["minroot", files["c7sq.gr"], "-k", "1", "--json"]) == EXIT_YES
    result = json.loads(capsys.readouterr().out)
    assert list(result) == result_keys
    assert result["answer"] == "yes"
    assert result["edges"] == 7
    assert result["deletions"] is None
    assert set(result["rule_counts"]) >= {"trim", "path", "simplicial"}

    assert run(["maxroot", files["k4.gr"], "--exact", "--json"]) == EXIT_YES
    result = json.loads(capsys.readouterr().out)
    assert result["edges"] == 6
    assert result["deletions"] == 0
    assert result["rule_counts"] is None

    assert run(["minroot", files["c7sq.gr"], "-k", "0", "--json"]) == EXIT_NO
    assert json.loads(capsys.readouterr().out)["answer"] == "no"


def test_verify(files):
    assert run(["verify", files["c7.gr"], files["c7sq.gr"]]) == EXIT_YES
    assert run(["verify", files["c7sq.gr"], files["c7sq.gr"]]) == EXIT_NO
    assert run(["verify", files["k3.gr"], files["k4.gr"]]) == EXIT_USAGE


def test_square(files, tmp_path, capsys):
    out = str(tmp_path / "sq.gr")
    assert run(["square", files["c7.gr"], "-o", out]) == EXIT_YES
    assert read_graph_file(out) == compute_square(cycle_graph(range(7)))
    capsys.readouterr()

    assert run(["square", files["p3.gr"]]) == EXIT_YES
    assert capsys.readouterr().out == write_graph_file(complete_graph(range(3)))


def test_oracle(files, capsys):
    assert run(["oracle", files["c7sq.gr"], "--min", "-k", "1"]) == EXIT_YES
    assert run(["oracle", files["c7sq.gr"], "--min", "-k", "0"]) == EXIT_NO
    assert run(["oracle", files["p3.gr"], "--max"]) == EXIT_NO
    capsys.readouterr()

    assert run(["oracle", files["k3.gr"], "--all"]) == EXIT_YES
    out = capsys.readouterr().out
    assert "1-2 1-3" in out
    assert out.strip().endswith("4 square roots")


def test_gen_and_verify(files, tmp_path):
    square = str(tmp_path / "sq.gr")
    root = str(tmp_path / "root.gr")
    argv = ["gen", "tree_plus_k", "8", "1", "--seed", "3", "-o", square, "--emit-root", root]
    assert run(argv) == EXIT_YES
    assert run(["verify", root, square]) == EXIT_YES
    with open(square) as fh:
        first = fh.read()
    assert run(argv) == EXIT_YES
    with open(square) as fh:
        assert fh.read() == first
    assert run(["minroot", square, "-k", "1"]) == EXIT_YES


def test_gen_known_square(tmp_path):
    out = str(tmp_path / "u.gr")
    assert run(["gen", "union_two_cliques", "4", "5", "-o", out]) == EXIT_YES
    assert read_graph_file(out).n == 7
    assert run(["gen", "cycle_square", "2", "-o", out]) == EXIT_USAGE


def test_survey(capsys):
    argv = ["survey", "--count", "3", "--n-max", "6", "--k-max", "1", "--seed", "2", "--raw", "--json"]
    assert run(argv) == EXIT_YES
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 3


def test_usage_errors(files):
    assert run([]) == EXIT_USAGE
    assert run(["minroot", files["k4.gr"]]) == EXIT_USAGE
    assert run(["maxroot", files["k4.gr"], "--fpt"]) == EXIT_USAGE
    assert run(["oracle", files["k4.gr"], "--min"]) == EXIT_USAGE
    assert run(["minroot", files["bad.gr"], "-k", "1"]) == EXIT_USAGE
    assert run(["minroot", files["k4.gr"], "-k", "-1"]) == EXIT_USAGE
    assert run(["minroot", "no/such/file.gr", "-k", "1"]) == EXIT_USAGE
    assert run(["--help"]) == EXIT_YES


def test_internal_failure_exit_code(files, monkeypatch):
    from graphroot import cli
    from graphroot.checks import IntegrityError

    def broken(g, k):
        raise IntegrityError("lifted root does not verify")

    monkeypatch.setattr(cli, "min_square_root", broken)
    assert run(["minroot", files["k4.gr"], "-k", "1"]) == EXIT_INTERNAL


def test_crash_is_not_reported_as_no(files, monkeypatch, capsys):
    from graphroot import cli

    def runaway(g):
        raise RecursionError("maximum recursion depth exceeded")

    monkeypatch.setattr(cli, "max_root_exact", runaway)
    assert run(["maxroot", files["k4.gr"], "--exact"]) == EXIT_INTERNAL
    assert "internal failure" in capsys.readouterr().err


def test_maxroot_exact_on_large_complete_graph(tmp_path, capsys):
    path = tmp_path / "k50.gr"
    path.write_text(write_graph_file(complete_graph(range(50))))
    assert run(["maxroot", str(path), "--exact", "--json"]) == EXIT_YES
    result = json.loads(capsys.readouterr().out)
    assert result["edges"] == 1225
    assert result["deletions"] == 0


def test_jobs_do_not_change_output(files, capsys):
    outputs = []
    for jobs in ("1", "4", "4"):
        assert run(["oracle", files["k4.gr"], "--all", "--jobs", jobs]) == EXIT_YES
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1] == outputs[2]

    outputs = []
    for jobs in ("1", "4"):
        assert run(["minroot", files["c7sq.gr"], "-k", "1", "--json", "--jobs", jobs]) == EXIT_YES
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
