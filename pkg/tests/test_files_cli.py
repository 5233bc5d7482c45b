import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from blaschke_interp import BlaschkeProduct
from blaschke_interp import cli
from blaschke_interp.files import ProblemError, dumps, parse_problem, product_from_record, product_record
from blaschke_interp.interpolation import TargetUnreachable

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"
EXAMPLE = PROBLEMS / "six_arcs.json"
PI = math.pi


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def run(*argv):
    return cli.main([str(a) for a in argv])


def test_parse_example_problem():
    problem = parse_problem(json.loads(EXAMPLE.read_text()))
    assert problem.mode == "partition"
    assert problem.N == 6
    assert problem.partition.lengths == pytest.approx([PI / 5, 3 * PI / 5, 3 * PI / 5, 3 * PI / 10, PI / 10, PI / 5])
    assert problem.config.R_override == 0.86


@pytest.mark.parametrize(
    "data, field",
    [
        ({"arcs": [{"start": 0, "end": 3}, {"start": 3, "end": 0}], "colour": 1}, "colour"),
        ({"arcs": []}, "arcs"),
        ({"arcs": [{"start": 0, "end": 7}]}, "arcs"),
        ({"arcs": [{"start": 0, "end": 1}, {"start": 1, "end": 0}], "C": 1.0}, "C"),
        ({"arcs": [{"start": 0, "end": 1}, {"start": 1, "end": 0}], "epsilon": -1}, "epsilon"),
        ({"arcs": [{"start": 0, "end": 1}, {"start": 1, "end": 0}], "anchors": [3.0, 4.0]}, "anchors"),
        ({"mode": "interpolation", "nodes": [0, 1, 2], "beta": {"re": 1, "im": 0}}, "beta"),
        ({"mode": "interpolation", "nodes": [0, 1, 2], "beta": {"re": 0, "im": 1}, "m": 2}, "s"),
        ({"mode": "fip", "nodes": [0, 0], "targets": [{"re": 1, "im": 0}] * 2}, "nodes"),
        ({"mode": "lsq"}, "mode"),
    ],
)
def test_parse_errors_name_the_field(data, field):
    with pytest.raises(ProblemError) as info:
        parse_problem(data)
    assert info.value.field.startswith(field)
    assert f"field '{info.value.field}'" in str(info.value)


def test_overlap_message():
    with pytest.raises(ProblemError, match="arcs overlap at angle"):
        parse_problem({"arcs": [{"start": 0, "end": 2}, {"start": 1.5, "end": 4}, {"start": 4, "end": 0}]})


finite = st.floats(allow_nan=False, allow_infinity=False)


@given(st.lists(st.tuples(finite, finite), max_size=5))
def test_dumps_round_trips_floats_exactly(pairs):
    obj = {"values": [list(p) for p in pairs], "n": len(pairs), "ok": True}
    assert json.loads(dumps(obj)) == obj
    assert json.loads(dumps(obj, indent=None)) == obj


def test_dumps_rejects_non_finite():
    with pytest.raises(ValueError):
        dumps([math.inf])


def test_product_record_round_trip():
    B = BlaschkeProduct((0.1 + 0.7j, -0.333333333333333, 0.9999999 * np.exp(2.1j)), rotation=np.exp(0.3j))
    again = product_from_record(json.loads(dumps(product_record(B))))
    assert again.zeros == B.zeros
    assert again.rotation == B.rotation


def test_solve_verify_plot_round_trip(tmp_path, capsys):
    out, trace = tmp_path / "result.json", tmp_path / "trace.jsonl"
    assert run("solve", EXAMPLE, "-o", out, "--trace", trace) == 0
    rec = json.loads(out.read_text())
    assert rec["converged"] is True
    assert len(rec["zeros"]) == 6
    lines = [json.loads(line) for line in trace.read_text().splitlines()]
    assert lines[0]["delta"] == pytest.approx(0.7025, abs=5e-4)
    assert lines[0]["moved_index"] is None
    assert lines[1]["moved_index"] == 4
    assert run("verify", out, EXAMPLE, "--tol", 1e-6 + 1e-9) == 0
    assert capsys.readouterr().out.startswith("PASS")
    assert run("verify", out, EXAMPLE, "--tol", 1e-3, "--format", "json") == 0
    report = json.loads(capsys.readouterr().out)
    assert report["passed"] is True
    svg = tmp_path / "plot.svg"
    assert run("plot", out, EXAMPLE, "--out", svg) == 0
    first = svg.read_bytes()
    assert first.count(b'class="zero"') == 6
    assert first.count(b'class="tick"') == 6
    assert run("plot", out, EXAMPLE, "--out", svg) == 0
    assert svg.read_bytes() == first


def test_verify_initial_product_fails(tmp_path, capsys):
    out = tmp_path / "b0.json"
    assert run("solve", EXAMPLE, "--epsilon", 1.0, "-o", out) == 0
    rec = json.loads(out.read_text())
    assert rec["iterations"] == 0
    assert [z["radius"] for z in rec["zeros"]] == pytest.approx([0.86] * 6, abs=1e-12)
    assert run("verify", out, EXAMPLE, "--tol", 1e-3, "--format", "json") == 4
    report = json.loads(capsys.readouterr().out)
    assert report["max_deviation"] == pytest.approx(0.3541, abs=5e-4)
    assert report["worst_arc"] == 4
    assert run("verify", out, EXAMPLE, "--tol", 10) == 0
    svg = tmp_path / "b0.svg"
    assert run("plot", out, EXAMPLE, "--out", svg) == 0
    text = svg.read_text()
    assert text.count('class="zero"') == 6
    assert 'class="annulus"' in text


def test_verify_degree_mismatch(tmp_path):
    other = write(tmp_path, "two.json", {"arcs": [{"start": 0, "end": 3}, {"start": 3, "end": 0}]})
    out = tmp_path / "r.json"
    assert run("solve", EXAMPLE, "-o", out) == 0
    assert run("verify", out, other) == 1


def test_forced_non_convergence(tmp_path):
    out, trace = tmp_path / "r.json", tmp_path / "t.jsonl"
    assert run("solve", EXAMPLE, "--epsilon", 1e-300, "--max-iter", 10, "-o", out, "--trace", trace) == 2
    assert len(trace.read_text().splitlines()) == 11
    assert json.loads(out.read_text())["converged"] is False


def test_input_errors_write_nothing(tmp_path, capsys):
    bad = write(tmp_path, "bad.json", {"arcs": [{"start": 0, "end": 2}, {"start": 1.5, "end": 4}, {"start": 4, "end": 0}]})
    out = tmp_path / "never.json"
    assert run("solve", bad, "-o", out, "--trace", tmp_path / "never.jsonl") == 1
    assert "arcs overlap at angle" in capsys.readouterr().err
    assert not out.exists()
    assert not (tmp_path / "never.jsonl").exists()
    assert run("solve", tmp_path / "missing.json") == 1
    assert run("frobnicate") == 1
    assert run("solve") == 1
    assert run("solve", EXAMPLE, "--epsilon", 0) == 1


def test_trace_command(tmp_path):
    out = tmp_path / "t.txt"
    assert run("trace", EXAMPLE, "--max-iter", 3, "--epsilon", 1e-300, "-o", out) == 2
    lines = out.read_text().splitlines()
    assert len(lines) == 4
    assert lines[1].startswith("k=1") and "moved=  4" in lines[1]


def test_interpolate_example(tmp_path, capsys):
    out = tmp_path / "i.json"
    problem = PROBLEMS / "interpolation_n2.json"
    assert run("interpolate", problem, "-o", out) == 0
    rec = json.loads(out.read_text())
    assert rec["degree"] == 2
    assert all(c["passed"] for c in rec["checks"].values())
    assert run("verify", out, problem, "--tol", 1e-6) == 0
    svg = tmp_path / "i.svg"
    assert run("plot", out, problem, "--out", svg) == 0
    assert svg.read_text().count('class="marked"') == 1


def test_interpolate_rejects_beta_one(tmp_path):
    bad = write(tmp_path, "b.json", {"mode": "interpolation", "nodes": [0, 1, 2], "beta": {"re": 1.0, "im": 0.0}})
    assert run("interpolate", bad) == 1


def test_interpolate_fip(tmp_path):
    out = tmp_path / "f.json"
    problem = PROBLEMS / "fip_n4.json"
    assert run("interpolate", problem, "-o", out) == 0
    rec = json.loads(out.read_text())
    assert rec["degree"] <= 12
    assert max(rec["node_residuals"]) < 1e-5
    assert run("verify", out, problem, "--tol", 1e-5) == 0


def test_interpolate_unreachable_exit_code(tmp_path, monkeypatch):
    def give_up(*args, **kwargs):
        raise TargetUnreachable("target unreachable at radius cap")

    monkeypatch.setattr(cli, "solve_with_target", give_up)
    out = tmp_path / "never.json"
    assert run("interpolate", PROBLEMS / "interpolation_n2.json", "-o", out) == 3
    assert not out.exists()


def test_plot_single_arc(tmp_path):
    problem = write(tmp_path, "one.json", {"arcs": [{"start": 0.5, "end": 0.5}]})
    out, svg = tmp_path / "one_r.json", tmp_path / "one.svg"
    assert run("solve", problem, "-o", out) == 0
    assert run("plot", out, problem, "--out", svg, "--no-annulus") == 0
    text = svg.read_text()
    assert text.count('class="zero"') == 1
    assert 'class="tick"' not in text
    assert 'class="annulus"' not in text


def test_plot_unwritable_path(tmp_path):
    out = tmp_path / "r.json"
    assert run("solve", EXAMPLE, "-o", out) == 0
    assert run("plot", out, EXAMPLE, "--out", tmp_path / "no" / "such" / "dir.svg") == 1


def test_text_format(tmp_path, capsys):
    assert run("solve", EXAMPLE, "--format", "text") == 0
    text = capsys.readouterr().out
    assert "converged=true" in text
    assert len(text.splitlines()) == 8
