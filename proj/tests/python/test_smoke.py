"""Smoke tests for the python module and the qi-oms CLI."""

import csv
import io
import json
import math
import os
import subprocess

import pytest

import qioms

FIG2 = dict(gamma=1e-3, delta=1.5, g1=1.0, g2=1.0, n_b=61.945)


def fig4_params():
    g = math.sqrt(0.5)
    return qioms.SystemParams(gamma=1e-3, delta=1.5, g1=g, g2=g, n_b=61.945)


def test_spectra_and_entanglement():
    p = qioms.SystemParams(**FIG2)
    pt = qioms.output_spectra(p, 0.0)
    assert pt.n_plus == pytest.approx(0.4719755, rel=1e-5)
    ref = qioms.closed_form_spectra(p, 0.0)
    assert pt.n_minus == pytest.approx(ref.n_minus, rel=1e-12)

    point = qioms.en_spectrum(p, [0.0])[0]
    assert point.e_n == pytest.approx(1.6874, rel=1e-3)
    assert point.ratio == pytest.approx(point.e_n / pt.n_plus, rel=1e-12)


def test_snr_chain():
    p = fig4_params()
    illum = qioms.IlluminationParams(eta=0.07, n_B=610.0, m_pairs=1)
    t_opt = qioms.optimal_delay_analytic(p)
    assert t_opt == pytest.approx(4.2194, rel=1e-4)
    report = qioms.figure_of_merit(p, illum, qioms.FilterSpec(sigma=1.0, t_delay=t_opt))
    assert report.f_merit == pytest.approx(1.481, rel=2e-3)
    assert report.p_qi <= report.p_coherent
    assert qioms.error_probability(0.0) == 0.5


def test_validation_and_errors():
    bad = qioms.SystemParams(gamma=-1.0)
    diags = qioms.validate(bad)
    assert any(field == "gamma" for _, field, _ in diags)
    with pytest.raises(ValueError):
        qioms.optimal_delay_analytic(
            qioms.SystemParams(gamma=1e-3, delta=1.5, g1=0.5, g2=0.2)
        )
    with pytest.raises(qioms.ConfigError):
        qioms.run_figure("fig1")


def test_covariance_roundtrip():
    p = fig4_params()
    v = qioms.project_covariance(p, qioms.FilterSpec(sigma=1.0))
    assert v.v11 == pytest.approx(0.08915, rel=1e-3)
    assert v.is_physical()
    assert qioms.log_negativity(v) > 0.0


def test_delay_optimization():
    p = fig4_params()
    illum = qioms.IlluminationParams(eta=0.07, n_B=610.0, m_pairs=1)
    report = qioms.delay_report(p, illum, 1.0, qioms.ScanSpec(0.0, 20.0, 300))
    assert report.snr_at_numeric >= report.snr_at_zero
    assert report.snr_at_numeric >= report.snr_at_analytic
    assert not report.numeric_at_boundary
    assert report.t_analytic == pytest.approx(qioms.phase_derivative_check(p), rel=1e-6)


def test_run_figure_dict():
    data = qioms.run_figure("fig5")
    assert data["columns"] == ["log10_m", "p_qi", "p_coh"]
    rows = data["rows"]
    assert len(rows) == 9
    assert all(r[1] <= r[2] for r in rows)
    meta = data["metadata"]
    assert meta["tool"] == "qi-oms"
    cfg = json.loads(meta["config"])
    assert cfg["illumination"]["n_B"] == 610.0


# ---------------------------------------------------------------------------
# CLI

CLI = os.environ.get("QI_OMS_BIN")
needs_cli = pytest.mark.skipif(CLI is None, reason="QI_OMS_BIN not set")


def run_cli(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


@needs_cli
def test_cli_snr_runs():
    res = run_cli("snr")
    assert res.returncode == 0
    body = [l for l in res.stdout.splitlines() if not l.startswith("#")]
    header = body[0].split(",")
    row = body[1].split(",")
    assert header[4] == "f_merit"
    assert float(row[4]) == pytest.approx(1.481, rel=2e-3)


@needs_cli
def test_cli_exit_codes():
    assert run_cli("figure", "fig7").returncode == 2          # unknown id
    assert run_cli("nope").returncode == 2                     # unknown subcommand
    assert run_cli("snr", "--set", "system.gamma=-1").returncode == 2
    res = run_cli("snr", "--set", "filter.delay=analytic", "--set", "system.c2=400")
    assert res.returncode == 2                                 # analytic delay off-diagonal


@needs_cli
def test_cli_determinism_and_roundtrip(tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    args = ("figure", "fig5", "--set", "workers=3")
    assert run_cli(*args, "--out", str(out1)).returncode == 0
    assert run_cli(*args, "--out", str(out2)).returncode == 0

    def body(path):
        return [l for l in path.read_text().splitlines() if not l.startswith("#")]

    assert body(out1) == body(out2)

    rows = list(csv.reader(io.StringIO("\n".join(body(out1)))))
    assert rows[0] == ["log10_m", "p_qi", "p_coh"]
    assert len(rows) == 10  # header + 9 rows


@needs_cli
def test_cli_bad_config_file(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{ not json")
    assert run_cli("snr", "--config", str(broken)).returncode == 2
    assert run_cli("snr", "--config", str(tmp_path / "missing.json")).returncode == 2

    # a figure rejects sweep axes it has no use for
    wrong_axis = tmp_path / "axis.json"
    wrong_axis.write_text(json.dumps({
        "sweep": {"axes": [{"name": "c1", "min": 1.0, "max": 10.0, "points": 3}]}
    }))
    res = run_cli("figure", "fig5", "--config", str(wrong_axis))
    assert res.returncode == 2
    assert "log10_m" in res.stderr


@needs_cli
def test_cli_sweep_with_config_file(tmp_path):
    cfg = tmp_path / "sweep.json"
    cfg.write_text(json.dumps({
        "filter": {"sigma": 0.0, "delay": "zero"},
        "sweep": {"axes": [
            {"name": "c1", "min": 10.0, "max": 1000.0, "points": 3, "scale": "log"},
            {"name": "c2", "min": 10.0, "max": 1000.0, "points": 3, "scale": "log"},
        ]},
    }))
    res = run_cli("sweep", "--config", str(cfg))
    assert res.returncode == 0
    body = [l for l in res.stdout.splitlines() if not l.startswith("#")]
    assert body[0].split(",")[:2] == ["c1", "c2"]
    assert len(body) == 10  # header + 3x3 grid

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"sweep": {"axes": []}}))
    assert run_cli("sweep", "--config", str(bad)).returncode == 2

    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"systen": {}}))
    assert run_cli("sweep", "--config", str(unknown)).returncode == 2


@needs_cli
def test_cli_json_output(tmp_path):
    out = tmp_path / "point.json"
    res = run_cli("spectrum", "--omega", "0", "--format", "json", "--out", str(out),
                  "--set", "system.g1=1.0", "--set", "system.g2=1.0")
    assert res.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["columns"][1] == "n_plus"
    assert doc["rows"][0][1] == pytest.approx(0.4719755, rel=1e-5)
