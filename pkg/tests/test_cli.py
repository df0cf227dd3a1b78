import csv
import json
import math

import numpy as np
import pytest

from dopplerspin import cli


def run_cli(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr()
    report = json.loads(out.out) if out.out.strip() else None
    return code, report, out.err


def write_cfg(tmp_path, cfg, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


def test_rep_lorentzian(capsys):
    code, rep, _ = run_cli(["rep", "--p", "1", "--q", "3"], capsys)
    assert code == 0
    assert rep["all_pass"]
    assert all(c["value"] <= 1e-12 for c in rep["checks"])
    assert rep["results"]["dim_spinor"] == 4


def test_rep_odd_dimension_rejected(capsys):
    code, rep, err = run_cli(["rep", "--p", "1", "--q", "2"], capsys)
    assert code == 2
    assert "even dimension only" in rep["error"]
    assert "even dimension only" in err


def test_rep_3_3_matrix_format(capsys):
    code, rep, _ = run_cli(["rep", "--p", "3", "--q", "3"], capsys)
    assert code == 0
    gammas = rep["results"]["gammas"]
    assert len(gammas) == 6
    g = np.array(gammas[0])
    assert g.shape == (8, 8, 2)  # row-major [re, im] pairs
    m = g[..., 0] + 1j * g[..., 1]
    np.testing.assert_allclose(m @ m, np.eye(8), atol=1e-12)


def test_dsf_identical_bases(tmp_path, capsys):
    cfg = {"command": "dsf", "metric": {"diag": [1, 1, -1, -1]},
           "basis1": [[0, 0], [0, 0], [1, 0], [0, 1]], "basis2": [[0, 0], [0, 0], [1, 0], [0, 1]]}
    code, rep, _ = run_cli(["dsf", "--config", write_cfg(tmp_path, cfg)], capsys)
    assert code == 0
    assert rep["results"]["dsf"] == pytest.approx(1.0, abs=1e-12)


def test_dsf_lorentz_ln2(tmp_path, capsys):
    x = math.log(2)
    cfg = {"metric": {"diag": [-1, 1]}, "basis1": [[1], [0]], "basis2": [[math.cosh(x)], [math.sinh(x)]]}
    code, rep, _ = run_cli(["dsf", "--config", write_cfg(tmp_path, cfg)], capsys)
    assert code == 0
    assert rep["results"]["dsf"] == pytest.approx(2.0, rel=1e-12)
    assert rep["results"]["rapidity"] == pytest.approx(x, rel=1e-12)
    assert rep["results"]["lorentzian_closed_form"] == pytest.approx(2.0, rel=1e-12)


def test_dsf_qboost(capsys):
    code, rep, _ = run_cli(["dsf", "--p", "2", "--q", "2", "--rapidities", "0.3,0.7"], capsys)
    assert code == 0
    assert rep["results"]["dsf"] == pytest.approx(math.exp(0.7), rel=1e-9)


def test_liftnorm_qboost(capsys):
    code, rep, _ = run_cli(["liftnorm", "--p", "2", "--q", "2", "--rapidities", "0.3,0.7"], capsys)
    assert code == 0
    lift = rep["results"]["lift"]
    assert lift["lift_norm"] == pytest.approx(math.exp(0.5), rel=1e-9)
    assert lift["lower_bound"] < lift["lift_norm"] < lift["upper_bound"]


def test_liftnorm_lorentzian(tmp_path, capsys):
    x = 1.1
    cfg = {"metric": {"diag": [-1, 1, 1, 1]}, "basis1": [[1], [0], [0], [0]],
           "basis2": [[math.cosh(x)], [0], [math.sinh(x)], [0]]}
    code, rep, _ = run_cli(["liftnorm", "--config", write_cfg(tmp_path, cfg)], capsys)
    assert code == 0
    assert rep["results"]["lift"]["lift_norm"] == pytest.approx(math.exp(x / 2), rel=1e-9)
    names = [c["name"] for c in rep["checks"]]
    assert "lorentzian_equality" in names


def test_liftnorm_requires_orthonormal_metric(tmp_path, capsys):
    cfg = {"metric": {"matrix": [[-2, 0], [0, 1]]}, "basis1": [[1], [0]], "basis2": [[1], [0]]}
    code, _, _ = run_cli(["liftnorm", "--config", write_cfg(tmp_path, cfg)], capsys)
    assert code == 2


def test_sweep_shear(capsys):
    code, rep, _ = run_cli(["sweep", "--preset", "minkowski-shear-vs-e0", "--x3", "-5:5:201"], capsys)
    assert code == 0
    sw = rep["results"]["sweep"]
    assert sw["verdict"] == "GROWTH_DETECTED"
    assert sw["sup_g_v1v2"] == pytest.approx(math.cosh(5), rel=1e-12)


def test_sweep_covariantly_constant(capsys):
    code, rep, _ = run_cli(["sweep", "--preset", "covariantly-constant-pair"], capsys)
    assert code == 0
    assert rep["results"]["sweep"]["verdict"] == "BOUNDED_ON_DOMAIN"


def test_sweep_schwarzschild_with_csv(tmp_path, capsys):
    path = tmp_path / "s.csv"
    code, rep, _ = run_cli(["sweep", "--preset", "schwarzschild-radial-in-out", "--rmin", "1.05",
                            "--csv", str(path)], capsys)
    assert code == 0
    assert rep["results"]["sweep"]["verdict"] == "GROWTH_DETECTED"
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["x0", "x1", "x2", "x3", "dsf", "rapidity"]
    assert len(rows) == 401
    r, d = float(rows[1][1]), float(rows[1][4])
    u = math.sqrt(1 / r)
    assert d == pytest.approx((1 + u) / (1 - u), rel=1e-10)


def test_sweep_custom_fields(tmp_path, capsys):
    cfg = {"command": "sweep", "metric": {"diag": [1, -1, -1, -1]},
           "fields": [{"type": "constant", "vector": [1, 0, 0, 0]}, {"type": "boost", "coordinate": 0}],
           "grid": {"axes": [{"axis": 0, "min": -3, "max": 3, "resolution": 61}]}}
    code, rep, _ = run_cli(["sweep", "--config", write_cfg(tmp_path, cfg)], capsys)
    assert code == 0
    sw = rep["results"]["sweep"]
    assert sw["verdict"] == "GROWTH_DETECTED"
    assert sw["sup_dsf"] == pytest.approx(math.exp(3), rel=1e-9)


def test_sweep_unknown_preset(capsys):
    code, _, _ = run_cli(["sweep", "--preset", "nope"], capsys)
    assert code == 2


def test_counterexample(capsys):
    code, rep, _ = run_cli(["counterexample", "--y0", "0,2", "--width", "0.01"], capsys)
    assert code == 0
    rows = rep["results"]["bump"]["rows"]
    assert [r["y0"] for r in rows] == [0.0, 2.0]
    assert abs(rows[1]["n_norm_sq"] / math.cosh(2) - 1) < 1e-2


def test_unknown_config_key_rejected(tmp_path, capsys):
    code, rep, err = run_cli(["rep", "--config", write_cfg(tmp_path, {"signature": {"p": 1, "q": 3}, "bogus": 1})],
                             capsys)
    assert code == 2
    assert rep is None
    assert "bogus" in err


def test_command_mismatch(tmp_path, capsys):
    code, _, err = run_cli(["dsf", "--config", write_cfg(tmp_path, {"command": "rep"})], capsys)
    assert code == 2
    assert "command" in err


def test_failed_check_exit_code(tmp_path, capsys):
    cfg = {"signature": {"p": 1, "q": 3}, "tolerances": {"clifford": -1.0}}
    code, rep, _ = run_cli(["rep", "--config", write_cfg(tmp_path, cfg)], capsys)
    assert code == 1
    assert not rep["all_pass"]


def test_every_check_carries_tolerance(capsys):
    _, rep, _ = run_cli(["liftnorm", "--p", "2", "--q", "2", "--rapidities", "0.3,0.7"], capsys)
    for c in rep["checks"]:
        assert set(c) == {"name", "value", "tolerance", "pass"}


def test_out_file_and_byte_stability(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert cli.main(["selfcheck", "--draws", "3", "--seed", "7", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    c = tmp_path / "c.json"
    cli.main(["selfcheck", "--draws", "3", "--seed", "8", "--out", str(c)])
    assert c.read_bytes() != a.read_bytes()


def test_timing_flag(capsys):
    _, rep, _ = run_cli(["rep", "--p", "1", "--q", "1", "--timing"], capsys)
    assert rep["wall_time_s"] >= 0
    _, rep, _ = run_cli(["rep", "--p", "1", "--q", "1"], capsys)
    assert "wall_time_s" not in rep
