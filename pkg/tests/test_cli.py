"""Command-line behaviors: output formats, exit codes, JSON round trips."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest

from qrac.cli import SCHEMA_VERSION, code_document, code_from_document, main
from qrac.codes import evaluate
from qrac.constructions import known_code, known_construction


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ----------------------------------------------------------------- classical


def test_classical_exact(capsys):
    code, out, _ = run(capsys, "classical", "--n", "3", "--exact")
    assert code == 0
    assert out.strip() == "3/4"


def test_classical_single_bit(capsys):
    code, out, _ = run(capsys, "classical", "--n", "1")
    assert code == 0
    fields = out.strip().split("\t")
    assert fields[0] == "1"
    assert fields[2] == "-" and fields[3] == "-"


def test_classical_table_row(capsys):
    code, out, _ = run(capsys, "classical", "--n", "4")
    assert code == 0
    fields = out.strip().split("\t")
    assert fields[0] == "0.6875"
    assert float(fields[2]) < 0.6875 < float(fields[3])


def test_classical_rejects_bad_n(capsys):
    code, _, err = run(capsys, "classical", "--n", "0")
    assert code == 2
    assert "error:" in err


# --------------------------------------------------------------------- bound


def test_bound_upper(capsys):
    code, out, _ = run(capsys, "bound", "--kind", "upper", "--n", "4")
    assert code == 0
    assert out.strip() == "0.75"


def test_bound_orthogonal(capsys):
    code, out, _ = run(capsys, "bound", "--kind", "orthogonal", "--n", "6")
    assert code == 0
    assert out.strip() == "0.686973 (2,2,2)"


def test_bound_random_asymptotic(capsys):
    code, out, err = run(capsys, "bound", "--kind", "random-asymptotic", "--n", "3")
    assert code == 0
    assert out.strip() == "0.765962"
    assert "approximation" in err  # small-n caveat goes to stderr
    code, _, err = run(capsys, "bound", "--kind", "random-asymptotic", "--n", "5")
    assert code == 0
    assert err == ""


def test_bound_validation_exit_code(capsys):
    code, _, err = run(capsys, "bound", "--kind", "orthogonal", "--n", "61")
    assert code == 2
    assert "error:" in err


# ---------------------------------------------------------------------- code


def test_code_show_qrac3(capsys):
    code, out, _ = run(capsys, "code", "show", "--name", "qrac3")
    assert code == 0
    assert "average: 0.788675" in out
    assert "worst_case: 0.788675" in out
    assert "neutral_strings: (none)" in out


def test_code_show_sym4(capsys):
    code, out, _ = run(capsys, "code", "show", "--name", "sym4")
    assert code == 0
    assert "average: 0.733253" in out
    assert "neutral_strings: 0000, 1111" in out


def test_code_show_unknown_name(capsys):
    code, _, _ = run(capsys, "code", "show", "--name", "qrac7")
    assert code == 2  # argparse choice failure


def test_code_round_trip_identical_report(capsys, tmp_path):
    path = tmp_path / "qrac5.json"
    code, show_out, _ = run(capsys, "code", "show", "--name", "qrac5", "--json", str(path))
    assert code == 0
    code, eval_out, _ = run(capsys, "code", "eval", "--json", str(path))
    assert code == 0
    assert eval_out == show_out


def test_round_trip_preserves_vectors_bitwise(tmp_path):
    original = known_code("qrac6")
    document = code_document(original, name="qrac6")
    rebuilt, metadata = code_from_document(json.loads(json.dumps(document)))
    assert metadata["name"] == "qrac6"
    assert np.array_equal(original.measurement_array(), rebuilt.measurement_array())
    assert np.array_equal(original.encoding_array(), rebuilt.encoding_array())
    before = evaluate(original)
    after = evaluate(rebuilt)
    assert before.average == after.average  # bitwise, not approx
    assert np.array_equal(before.per_input, after.per_input)


def test_document_schema_fields(tmp_path, capsys):
    path = tmp_path / "qrac2.json"
    run(capsys, "code", "show", "--name", "qrac2", "--json", str(path))
    document = json.loads(path.read_text())
    assert document["schema_version"] == SCHEMA_VERSION
    assert document["n"] == 2
    assert len(document["measurements"]) == 2
    assert list(document["encodings"]) == ["00", "10", "01", "11"]
    assert document["metadata"]["name"] == "qrac2"
    assert document["metadata"]["expected_probability"] == pytest.approx(
        known_construction("qrac2").expected_probability
    )


def test_eval_renormalizes_slightly_off_vectors(tmp_path, capsys):
    path = tmp_path / "code.json"
    document = code_document(known_code("qrac2"))
    document["measurements"][0] = [c * (1 + 5e-10) for c in document["measurements"][0]]
    path.write_text(json.dumps(document))
    code, out, _ = run(capsys, "code", "eval", "--json", str(path))
    assert code == 0
    assert "average: 0.853553" in out


def test_eval_rejects_far_from_unit_vectors(tmp_path, capsys):
    path = tmp_path / "code.json"
    document = code_document(known_code("qrac2"))
    document["measurements"][0] = [c * 1.001 for c in document["measurements"][0]]
    path.write_text(json.dumps(document))
    code, _, err = run(capsys, "code", "eval", "--json", str(path))
    assert code == 2
    assert "norm" in err


def test_eval_rejects_wrong_schema_version(tmp_path, capsys):
    path = tmp_path / "code.json"
    document = code_document(known_code("qrac2"))
    document["schema_version"] = 99
    path.write_text(json.dumps(document))
    code, _, err = run(capsys, "code", "eval", "--json", str(path))
    assert code == 2
    assert "schema_version" in err


def test_eval_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "code", "eval", "--json", str(tmp_path / "nope.json"))
    assert code == 2
    assert "error:" in err


def test_eval_malformed_json(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "code", "eval", "--json", str(path))
    assert code == 2


# ------------------------------------------------------------------ optimize


def test_optimize_small_case(capsys):
    code, out, _ = run(capsys, "optimize", "--n", "2", "--restarts", "10", "--seed", "1")
    assert code == 0
    probability = float(out.splitlines()[0].split(":")[1])
    assert probability >= 0.85345
    assert "direction 1: theta=" in out
    assert "best_restart:" in out


def test_optimize_five_bits(capsys):
    code, out, _ = run(capsys, "optimize", "--n", "5", "--restarts", "50", "--seed", "1")
    assert code == 0
    probability = float(out.splitlines()[0].split(":")[1])
    assert probability >= 0.71347


def test_optimize_deterministic(capsys):
    _, first, _ = run(capsys, "optimize", "--n", "3", "--restarts", "5", "--seed", "2")
    _, second, _ = run(capsys, "optimize", "--n", "3", "--restarts", "5", "--seed", "2")
    assert first == second


def test_optimize_json_is_simulatable(capsys, tmp_path):
    path = tmp_path / "best.json"
    code, _, _ = run(
        capsys, "optimize", "--n", "2", "--restarts", "5", "--seed", "0", "--json", str(path)
    )
    assert code == 0
    document = json.loads(path.read_text())
    assert document["metadata"]["name"] == "optimized-n2"
    code, out, _ = run(capsys, "simulate", "--json", str(path), "--trials", "2000", "--seed", "1")
    assert code == 0
    assert "average:" in out


def test_optimize_cost_guard_exit_code(capsys):
    code, _, err = run(capsys, "optimize", "--n", "13", "--restarts", "1")
    assert code == 3
    assert "error:" in err


def test_optimize_validation_exit_code(capsys):
    code, _, _ = run(capsys, "optimize", "--n", "1")
    assert code == 2


# ------------------------------------------------------------------ simulate


def test_simulate_randomized_spread(capsys, tmp_path):
    path = tmp_path / "qrac2.json"
    run(capsys, "code", "show", "--name", "qrac2", "--json", str(path))
    code, out, _ = run(
        capsys,
        "simulate",
        "--json",
        str(path),
        "--trials",
        "100000",
        "--seed",
        "0",
        "--randomize",
    )
    assert code == 0
    lines = dict(line.split(": ") for line in out.strip().splitlines())
    assert lines["randomize"] == "on"
    assert float(lines["spread"]) < 0.01
    assert abs(float(lines["average"]) - 0.853553) < 0.01


def test_simulate_unrandomized_worst_case(capsys, tmp_path):
    path = tmp_path / "qrac4.json"
    run(capsys, "code", "show", "--name", "qrac4", "--json", str(path))
    code, out, _ = run(capsys, "simulate", "--json", str(path), "--trials", "20000", "--seed", "2")
    assert code == 0
    lines = dict(line.split(": ") for line in out.strip().splitlines())
    assert lines["randomize"] == "off"
    assert abs(float(lines["worst_case"]) - 0.5) < 4 * math.sqrt(0.25 / 20000)


def test_simulate_zero_trials_exit_code(capsys, tmp_path):
    path = tmp_path / "qrac2.json"
    run(capsys, "code", "show", "--name", "qrac2", "--json", str(path))
    code, _, err = run(capsys, "simulate", "--json", str(path), "--trials", "0")
    assert code == 2
    assert "error:" in err


# ------------------------------------------------------------------- regions


def test_regions_named(capsys):
    for name, expected in (("qrac3", "8"), ("sym6", "32"), ("sym15", "120")):
        code, out, _ = run(capsys, "regions", "--name", name)
        assert code == 0
        assert out.strip() == expected


def test_regions_from_circles_file(capsys, tmp_path):
    path = tmp_path / "circles.json"
    path.write_text(json.dumps([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    code, out, _ = run(capsys, "regions", "--circles", str(path))
    assert code == 0
    assert out.strip() == "8"


def test_regions_duplicate_circles_rejected(capsys):
    # two bits of qrac4 share an axis, so its circles coincide
    code, _, err = run(capsys, "regions", "--name", "qrac4")
    assert code == 2
    assert "coincide" in err


def test_regions_export_geometry(capsys, tmp_path):
    out_path = tmp_path / "geometry.json"
    code, out, _ = run(capsys, "regions", "--name", "qrac3", "--export", str(out_path))
    assert code == 0
    assert out.strip() == "8"
    document = json.loads(out_path.read_text())
    assert document["schema_version"] == SCHEMA_VERSION
    assert len(document["circles"]) == 3
    kinds = {p["kind"] for p in document["points"]}
    assert kinds == {"measurement", "encoding"}
    assert len(document["points"]) == 3 + 8
    labels = [p["label"] for p in document["points"] if p["kind"] == "measurement"]
    assert labels == ["v1", "v2", "v3"]


def test_regions_requires_a_source(capsys):
    code, _, _ = run(capsys, "regions")
    assert code == 2


# ------------------------------------------------------------------- general


def test_no_arguments_is_usage_error(capsys):
    code, _, _ = run(capsys)
    assert code == 2


def test_unknown_command_is_usage_error(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2
