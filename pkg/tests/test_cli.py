import json

import pytest

from main import SgxApp


def run(capsys, *argv):
    code = SgxApp(list(argv)).run()
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_graph_dot(capsys):
    code, out, _err = run(capsys, "graph", "--order", "1,2", "--format", "dot")
    assert code == 0
    assert out.startswith('graph "G(1,2)" {')
    assert '  v0 -- v2 [label="c2"];' in out


def test_graph_rejects_bad_order(capsys):
    code, out, err = run(capsys, "graph", "--order", "1,1")
    assert code == 2
    assert out == ""
    assert "Invalid input" in err


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "graph")[0] == 2
    assert run(capsys, "sweep", "--coeffs", "1,2")[0] == 2


def test_zset_text_and_csv(capsys):
    code, out, _err = run(capsys, "zset", "--order", "2,1", "--coeffs", "2,1")
    assert code == 0
    assert "c1-c2; 0  = (1,0)" in out.splitlines()
    code, out, _err = run(capsys, "zset", "--order", "2,1", "--coeffs", "2,1", "--format", "csv")
    assert out == "x1,x2\n0,0\n0,1\n1,0\n2,1\n"


def test_polytope_json(capsys):
    code, out, _err = run(capsys, "polytope", "--order", "1,3,2", "--coeffs", "1,4,2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["inequalities"]) == 9
    assert len(payload["vertices"]) == 8
    assert payload["coeffs"] == "1,4,2"


@pytest.mark.parametrize("argv", [
    ("polytope", "--order", "1,2", "--coeffs", "4,1"),
    ("polytope", "--order", "1,2", "--coeffs", "1,2,3"),
    ("polytope", "--order", "1,2", "--coeffs", "1,2", "--variant", "3p", "--exclude-k", "2"),
    ("polytope", "--order", "1,2", "--coeffs", "1,2", "--variant", "7"),
])
def test_polytope_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_tableau_eval(capsys):
    code, out, _err = run(capsys, "tableau", "eval", "--heights", "3,2,1,3")
    assert code == 0
    assert "f_T = c1; c1+c2-c3; c1" in out
    assert "relations: 1<3, 3<2" in out


def test_tableau_eval_invalid_profile(capsys):
    code, out, _err = run(capsys, "tableau", "eval", "--heights", "0,2,1,1", "--format", "json")
    assert code == 1
    payload = json.loads(out)
    assert payload["valid"] is False
    assert payload["boundary_violation"] == {"row": 2, "column": 2}
    assert "boundary_even" in [d["clause"] for d in payload["diagnostics"]]


def test_tableau_reconstruct(capsys):
    code, out, _err = run(capsys, "tableau", "reconstruct", "c1; c1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["log"] == [{"k": 0, "j": 2, "parity": "odd"}]
    assert payload["replay_matches"] is True
    assert payload["rebuild"] == {"complete": True, "heights": [1, 0, 1]}


def test_tableau_reconstruct_from_heights(capsys):
    code, out, _err = run(capsys, "tableau", "reconstruct", "--heights", "2,1,2")
    assert code == 0
    assert out.startswith("f = c1-c2; 0")
    assert "log: [(2,0,even), (0,1,odd), (1,2,odd)]" in out


def test_tableau_reconstruct_not_representable(capsys):
    code, out, _err = run(capsys, "tableau", "reconstruct", "c1; c1+c2")
    assert code == 1
    assert "Not representable: ambiguous_extremal (step 1)" in out


@pytest.mark.parametrize("argv", [
    ("tableau", "reconstruct"),
    ("tableau", "reconstruct", "c1; c1*c2"),
    ("tableau", "eval", "--heights", "1,x"),
])
def test_tableau_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_count(capsys):
    code, out, _err = run(capsys, "count", "--n", "2", "--format", "json")
    assert code == 0
    assert json.loads(out)["functions"] == 5
    assert run(capsys, "count", "--n", "9")[0] == 2


def test_verify_single_order(capsys):
    code, out, _err = run(capsys, "verify", "theorem", "--order", "1,3,2", "--coeffs", "1,4,2")
    assert code == 0
    assert "theorem: PASS (1 units, 0 counterexamples)" in out
    assert out.rstrip().endswith("PASS")


def test_verify_coeffs_need_order(capsys):
    assert run(capsys, "verify", "theorem", "--coeffs", "1,2")[0] == 2


def test_sweep_failure_writes_report(capsys, tmp_path):
    report_path = tmp_path / "reports" / "sweep.json"
    code, out, _err = run(
        capsys, "sweep", "--n", "2", "--checks", "reconstruction", "--trials", "1",
        "--max-steps", "1", "--report", str(report_path),
    )
    assert code == 1
    assert "reconstruction: FAIL" in out
    report = json.loads(report_path.read_text(encoding="utf-8"))
    assert report["statuses"]["reconstruction"] == "fail"
    assert report["counterexamples"][0]["reason"] == "bound_exhausted"
    assert len(report["digest"]) == 64


def test_sweep_with_no_checks(capsys):
    code, out, _err = run(capsys, "sweep", "--checks", "", "--format", "json")
    assert code == 0
    assert set(json.loads(out)["statuses"].values()) == {"skipped"}


def test_sweep_json_is_reproducible(capsys):
    argv = ("sweep", "--n", "1,2", "--checks", "fusion,counts", "--trials", "2", "--format", "json")
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second


def test_out_file(capsys, tmp_path):
    target = tmp_path / "graph.json"
    code, out, _err = run(capsys, "graph", "--order", "2,1", "--format", "json", "--out", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["order"] == [2, 1]


def test_verbose_logs_to_stderr(capsys):
    code, _out, err = run(capsys, "-v", "verify", "fusion", "--order", "1,2", "--coeffs", "1,2")
    assert code == 0
    assert "Start: [Sweep]" in err


@pytest.mark.parametrize("heights", ["0,2,1,1", "1,0,0"])
def test_tableau_reconstruct_rejects_inadmissible_heights(capsys, heights):
    code, out, err = run(capsys, "tableau", "reconstruct", "--heights", heights)
    assert code == 2
    assert out == ""
    assert "not admissible" in err


@pytest.mark.parametrize("text", ["c1/c2; c2", "exp(c1); c2", "1/(c1+c2); 0"])
def test_tableau_reconstruct_rejects_non_linear_text(capsys, text):
    code, out, err = run(capsys, "tableau", "reconstruct", text)
    assert code == 2
    assert "Not a linear form" in err


def test_tableau_reconstruct_from_json_function(capsys, tmp_path):
    source = tmp_path / "f.json"
    source.write_text(json.dumps([{"c1": "1"}, {"c1": "1"}]), encoding="utf-8")
    code, out, _err = run(capsys, "tableau", "reconstruct", "--json", str(source))
    assert code == 0
    assert "log: [(0,2,odd)]" in out
    assert "heights: 1,0,1" in out


def test_tableau_reconstruct_replays_saved_result(capsys, tmp_path):
    saved = tmp_path / "saved.json"
    assert run(capsys, "tableau", "reconstruct", "c1; c1+c2-c3; c1", "--format", "json", "--out", str(saved))[0] == 0
    code, out, _err = run(capsys, "tableau", "reconstruct", "--json", str(saved), "--format", "json")
    assert code == 0
    assert json.loads(out) == json.loads(saved.read_text(encoding="utf-8"))

    payload = json.loads(saved.read_text(encoding="utf-8"))
    payload["log"] = payload["log"][1:]
    saved.write_text(json.dumps(payload), encoding="utf-8")
    code, out, _err = run(capsys, "tableau", "reconstruct", "--json", str(saved))
    assert code == 1
    assert "replay matches: False" in out


@pytest.mark.parametrize("content", [
    "not json",
    json.dumps({"function": [{"c1": "1"}], "log": [{"k": 0, "j": 5, "parity": "odd"}]}),
    json.dumps({"function": [{"c1": "1"}], "log": [{"k": 0, "j": 1, "parity": "sideways"}]}),
    json.dumps({"log": []}),
])
def test_tableau_reconstruct_rejects_bad_json(capsys, tmp_path, content):
    source = tmp_path / "bad.json"
    source.write_text(content, encoding="utf-8")
    assert run(capsys, "tableau", "reconstruct", "--json", str(source))[0] == 2


def test_tableau_reconstruct_needs_exactly_one_source(capsys, tmp_path):
    assert run(capsys, "tableau", "reconstruct", "c1", "--heights", "1,0")[0] == 2
    assert run(capsys, "tableau", "reconstruct", "--json", str(tmp_path / "missing.json"))[0] == 2


def test_polytope_rejects_exclude_k_out_of_range(capsys):
    code, _out, err = run(capsys, "polytope", "--order", "1,2", "--coeffs", "1,2", "--exclude-k", "5")
    assert code == 2
    assert "outside 1..2" in err
