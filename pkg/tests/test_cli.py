import json
import subprocess
import sys

import pytest

from kscontext.catalog import SEVEN_CONTEXT_TEXT
from kscontext.cli import main
from kscontext.graph import Graph, johnson_graph, to_graph6


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def json_lines(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_verify_ks_builtin(capsys):
    code, out, _ = run(capsys, "verify-ks")
    (rep,) = json_lines(out)
    assert code == 0
    assert (rep["contexts"], rep["rays"], rep["edges"]) == (7, 21, 105)
    assert rep["colorable"] is False and rep["parity"] is True and rep["ks_set"] is True


def test_verify_ks_from_file(tmp_path, capsys):
    f = tmp_path / "seven.txt"
    f.write_text(SEVEN_CONTEXT_TEXT)
    code, out, _ = run(capsys, "verify-ks", str(f), "--format", "text")
    assert code == 0 and "KS set" in out


def test_verify_ks_single_basis_is_colorable(tmp_path, capsys):
    f = tmp_path / "one.txt"
    f.write_text("basis B1: (1,0,0); (0,1,0); (0,0,1)\n")
    code, out, _ = run(capsys, "verify-ks", str(f))
    assert code == 1
    assert json_lines(out)[0]["assignment_ones"] == ["v0"]


@pytest.mark.parametrize(
    "text",
    ["basis B1: (1,0,0); (0,1,0); (0,0,x)\n", "basis B1: (1,1,0); (0,1,0); (0,0,1)\n", "nonsense\n"],
)
def test_verify_ks_bad_input(tmp_path, capsys, text):
    f = tmp_path / "bad.txt"
    f.write_text(text)
    code, _, err = run(capsys, "verify-ks", str(f))
    assert code == 2 and err.startswith("error:")


def test_missing_file(capsys):
    code, _, err = run(capsys, "verify-ks", "/nonexistent/file.txt")
    assert code == 2 and "error" in err


def test_classify_builtins_and_table(capsys):
    code, out, _ = run(capsys, "classify", "j52", "seven-context", "pentagon", "--table")
    reps = json_lines(out)
    assert code == 1  # the pentagon is not fully contextual
    assert [r.get("n") for r in reps[:3]] == [10, 21, 5]
    assert reps[1]["alpha_star"] == "7/2" and reps[1]["symmetric_parity"] is True
    assert reps[3]["table"] == {"10": {"fcvt": 1, "pfcvt": {"5": 1}}, "21": {"fcvt": 1, "pfcvt": {"7": 1}}}


def test_classify_all_fully_contextual_exits_zero(capsys):
    code, _, _ = run(capsys, "classify", "j52", "j72")
    assert code == 0


def test_classify_graph6_file_with_malformed_line(tmp_path, capsys):
    f = tmp_path / "g.g6"
    f.write_text(f">>graph6<<{to_graph6(johnson_graph(5, 2))}\nD!!\n")
    code, out, _ = run(capsys, "classify", str(f))
    reps = json_lines(out)
    assert code == 2
    assert reps[0]["n"] == 10 and reps[0]["line"] == 1
    assert "error" in reps[1] and reps[1]["line"] == 2


def test_classify_disconnected_graph_reported(tmp_path, capsys):
    f = tmp_path / "g.g6"
    f.write_text(to_graph6(Graph.empty(3)) + "\n")
    code, out, _ = run(capsys, "classify", str(f))
    assert code == 1 and "disconnected" in json_lines(out)[0]["error"]


def test_classify_output_independent_of_workers(tmp_path, capsys):
    f = tmp_path / "g.g6"
    graphs = [Graph.cycle(n) for n in range(5, 12)] + [johnson_graph(5, 2)]
    f.write_text("\n".join(to_graph6(g) for g in graphs) + "\n")
    _, serial, _ = run(capsys, "classify", str(f), "--workers", "1")
    _, parallel, _ = run(capsys, "classify", str(f), "--workers", "3")
    assert serial == parallel


def test_classify_from_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO("Dhc\n"))
    code, out, _ = run(capsys, "classify", "-")
    rep = json_lines(out)[0]
    assert code == 1 and rep["n"] == 5 and rep["fully_contextual"] is False


def test_inequality_builtin(capsys):
    code, out, _ = run(capsys, "inequality", "--samples", "5")
    rep = json_lines(out)[0]
    assert code == 0
    assert rep["classical_max"] == 5 and rep["quantum_value"] == "7/1"
    assert all(abs(s["value"] - 7) <= 1e-9 for s in rep["samples"])


def test_inequality_budget_error(capsys):
    code, _, err = run(capsys, "inequality", "--budget", "1000")
    assert code == 3 and "budget" in err


def test_env_var_sets_budget(monkeypatch, capsys):
    monkeypatch.setenv("KSCONTEXT_BUDGET", "1000")
    assert run(capsys, "inequality")[0] == 3
    # explicit flag wins over the environment
    assert run(capsys, "inequality", "--budget", str(1 << 21), "--samples", "1")[0] == 0


def test_bad_env_var(monkeypatch, capsys):
    monkeypatch.setenv("KSCONTEXT_TOL", "tiny")
    code, _, err = run(capsys, "theta", "pentagon")
    assert code == 2 and "KSCONTEXT_TOL" in err


@pytest.mark.parametrize("flag", [["--tol", "0"], ["--workers", "0"], ["--budget", "0"]])
def test_invalid_options(capsys, flag):
    assert run(capsys, "theta", "pentagon", *flag)[0] == 2


def test_theta(capsys):
    code, out, _ = run(capsys, "theta", "pentagon", "k6")
    a, b = json_lines(out)
    assert code == 0
    assert abs(a["value"] - 5 ** 0.5) < 1e-6 and abs(b["value"] - 1) < 1e-6


def test_export_dot_and_graph6(capsys):
    code, out, _ = run(capsys, "export", "seven-context")
    assert code == 0 and out.startswith("graph seven_context {") and out.count(" -- ") == 105
    assert '[label="67"]' in out
    code, out, _ = run(capsys, "export", "pentagon", "--to", "graph6")
    assert out.strip() == "Dhc"


def test_dim_bound_text(capsys):
    code, out, _ = run(capsys, "dim-bound", "1", "2", "3", "--format", "text")
    assert code == 0
    assert [line.split()[-1] for line in out.splitlines()] == ["5", "10", "15"]


def test_dim_bound_rejects_zero(capsys):
    assert run(capsys, "dim-bound", "0")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kscontext", "dim-bound", "2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["min_dimension"] == 10
