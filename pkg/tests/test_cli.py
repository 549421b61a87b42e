"""Command-line interface: exit codes, JSON/CSV shapes, determinism."""

import json

import pytest

from lacunary.cli import run


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def test_eval_json_fields(capsys):
    code = run(["eval", "--growth", "power:2", "--z", "1.0"])
    assert code == 0
    doc = _json_out(capsys)
    assert set(doc) == {"value_re", "value_im", "terms", "tail_bound"}
    assert doc["value_re"] == pytest.approx(0.386318602413326, abs=1e-12)
    assert doc["value_im"] == 0.0


def test_eval_complex_argument(capsys):
    # 'i' is accepted as the imaginary unit
    code = run(["eval", "--growth", "power:2", "--z", "0.5+0.5i"])
    assert code == 0
    doc = _json_out(capsys)
    assert doc["value_im"] != 0.0


def test_eval_missing_args_is_usage_error(capsys):
    assert run(["eval"]) == 2
    assert run(["eval", "--growth", "power:2", "--z", "not-a-number"]) == 2
    assert run(["eval", "--growth", "nonsense:2", "--z", "1.0"]) == 2


def test_eval_boundary_point_is_usage_error(capsys):
    # Re z <= 0 is a domain error -> exit 2
    assert run(["eval", "--growth", "power:2", "--z", "-1.0"]) == 2


def test_asympt_residual_small(capsys):
    code = run(["asympt", "--growth", "power:3", "--z", "0.4+0.2i"])
    assert code == 0
    doc = _json_out(capsys)
    assert {"integral_re", "half_term", "remainder_re", "direct_re",
            "residual"} <= set(doc)
    assert doc["residual"] < 1e-12
    assert doc["half_term"] == -0.5


def test_theta_residual(capsys):
    code = run(["theta", "--z", "0.05"])
    assert code == 0
    doc = _json_out(capsys)
    assert doc["residual"] < 1e-12


def test_geometric_representation(capsys):
    code = run(["geometric", "--a", "2", "--z", "0.7"])
    assert code == 0
    doc = _json_out(capsys)
    assert doc["residual"] < 1e-9


def test_transseries_json(capsys):
    code = run(["transseries", "--b", "3", "--blocks", "2", "--powers", "3"])
    assert code == 0
    doc = _json_out(capsys)
    assert doc["b"] == 3.0
    assert doc["sigma"] == -1
    assert len(doc["blocks"]) == 2


def test_transseries_rejects_unsupported_b(capsys):
    assert run(["transseries", "--b", "2"]) == 2


def test_borel_value(capsys):
    code = run(["borel", "--b", "3", "--z", "0.5"])
    assert code == 0
    doc = _json_out(capsys)
    assert {"value_re", "value_im", "correction_re", "correction_im",
            "direct_re", "direct_im", "rel_err"} <= set(doc)
    assert doc["rel_err"] < 1e-9


def test_duality(capsys):
    code = run(["duality", "--m", "2", "--n", "3"])
    assert code == 0
    doc = _json_out(capsys)
    assert doc["residual"] < 1e-12
    assert doc == {"m": 2, "n": 3, "residual": doc["residual"]}


def test_measure_csv(capsys):
    code = run(["measure", "--x-grid", "0.3,0.2"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "x,ratio,offdiag_ratio"
    assert len(lines) == 3


def test_qplot_csv(capsys):
    code = run(["qplot", "--qmax", "3"])
    assert code == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "x,Q"
    # 0, 1/3, 1/2, 2/3, 1
    assert len(lines) == 6
    assert lines[1].startswith("0,1")
    assert run(["qplot", "--qmax", "0"]) == 2


def test_julia_curve_csv(capsys, tmp_path):
    out = tmp_path / "curve.csv"
    code = run(["julia", "--lambda", "0.3", "--order", "4", "--samples", "64",
                "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "x,y"
    assert len(lines) == 65


def test_julia_requires_lambda(capsys):
    assert run(["julia"]) == 2
    assert run(["julia", "--lambda", "1.5"]) == 2


def test_profile_summary(capsys):
    code = run(["profile", "--b", "3", "--m", "0", "--n", "1",
                "--x-hi", "1e-2", "--x-lo", "1e-4", "--points", "4"])
    assert code == 0
    doc = _json_out(capsys)
    assert {"limit_re", "limit_im", "target_re", "target_im",
            "convergence_indicator"} <= set(doc)
    assert doc["limit_re"] == pytest.approx(0.8929795115692493, abs=1e-4)


def test_repeat_run_is_deterministic(capsys):
    run(["eval", "--growth", "power:3", "--z", "0.25+0.1i"])
    first = capsys.readouterr().out
    run(["eval", "--growth", "power:3", "--z", "0.25+0.1i"])
    second = capsys.readouterr().out
    assert first == second


def test_unknown_command(capsys):
    assert run(["definitely-not-a-command"]) == 2


def test_selftests_fast_subset(capsys):
    for cmd in ("eval", "theta", "duality", "qplot"):
        assert run([cmd, "--selftest"]) == 0, cmd
        out = capsys.readouterr().out
        assert "selftest PASS" in out
        assert "FAIL" not in out
