import math
import os
import subprocess

import numpy as np
import pytest

import sector_heat as sh


def test_reference_values():
    spec = sh.DomainSpec(2, 1, 1.0, 1.0)
    assert sh.psi0([1.0, 1.0], spec) == pytest.approx(2 ** -1.5)
    assert sh.weight([1.0, 1.0], spec) == pytest.approx(2 ** 1.5)
    assert sh.psi0_constant(2, 1.0) == pytest.approx(3.0)
    one = sh.DomainSpec(1, 1, 0.5, 1.0)
    expect = (1 - math.exp(-4)) / math.sqrt(math.pi)
    assert sh.kernel(0.25, [1.0], [1.0], one) == pytest.approx(expect, rel=1e-12)
    assert sh.erf_product(1.0, [2.0], one) == pytest.approx(math.erf(1.0))
    assert sh.absorption_flow(1.0, 1.0, 1.0) == pytest.approx(0.5)
    assert sh.absorption_flow(2.0, 1.0, 2.0) == pytest.approx(2.0 / 3.0)


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        sh.DomainSpec(1, 1, 2.0, 1.0)
    spec = sh.DomainSpec(2, 1, 1.0, 1.0)
    with pytest.raises(ValueError):
        sh.psi0([-1.0, 1.0], spec)
    with pytest.raises(ValueError):
        sh.parse_config("bogus = 1\n")


def test_regimes_and_bessel():
    assert sh.regime(sh.DomainSpec(2, 1, 1.0, 1.0)) == "critical"
    assert sh.regime(sh.DomainSpec(2, 1, 1.0, 2.0)) == "supercritical"
    assert sh.regime(sh.DomainSpec(2, 1, 1.0, 0.5)) == "subcritical"
    assert sh.bessel_oracle(3) == pytest.approx(math.pi ** 2)
    assert sh.bessel_first_zero(1.0) == pytest.approx(3.8317060, rel=1e-7)


def test_eigen_field_arrays():
    lam, (pts, vals) = sh.sector_ball_eigen(sh.DomainSpec(1, 1, 0.5, 1.0), 0.01)
    assert lam == pytest.approx(math.pi ** 2, rel=1e-3)
    assert pts.shape == (vals.shape[0], 1)
    assert np.all(vals > 0)
    assert np.max(vals) == pytest.approx(1.0)


def test_solver_snapshots_respect_universal_bound():
    spec = sh.DomainSpec(1, 1, 0.5, 1.0)
    snaps = sh.solve_psi0(spec, 0.1, 12.0, [0.5, 1.0], dt0=0.02)
    assert [t for t, _ in snaps] == pytest.approx([0.5, 1.0])
    for t, (pts, vals) in snaps:
        assert np.max(np.abs(vals)) <= 1.0 / t + 1e-12
        assert np.all(vals >= -1e-12)


def test_checks_pass():
    spec = sh.DomainSpec(2, 1, 1.0, 1.0)
    r = sh.kernel_domination_check(spec, 200, 3)
    assert r.passed and r.violation <= 0
    e = sh.elliptic_residual(spec, 0.01, tolerance=1e-2)
    assert e.passed
    assert "rel_error" in e.metrics


def test_config_round_trip():
    text, fp = sh.parse_config(sh.default_config())
    assert text == sh.default_config()
    assert len(fp) == 16
    text2, fp2 = sh.parse_config(text.replace("domain.alpha = 1", "domain.alpha = 2"))
    assert fp2 != fp


def test_run_in_process(tmp_path):
    cfg = tmp_path / "e.cfg"
    cfg.write_text("domain.N = 1\ndomain.m = 1\ndomain.gamma = 0.5\neigen.h = 0.01\n")
    code, log, err = sh.run("eigen", str(cfg), str(tmp_path / "out"))
    assert code == 0, err
    assert "eigen_identity" in log
    assert (tmp_path / "out" / "eigen_table.csv").read_text().startswith("# fingerprint=")
    bad = tmp_path / "bad.cfg"
    bad.write_text("domain.gamma = -1\n")
    code, _, err = sh.run("eigen", str(bad), str(tmp_path / "bad_out"))
    assert code == 2 and "config error" in err
    assert not (tmp_path / "bad_out").exists()


@pytest.mark.skipif("SECTOR_HEAT_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_exit_codes(tmp_path):
    cli = os.environ["SECTOR_HEAT_CLI"]
    cfg = os.path.join(os.environ["SECTOR_HEAT_CONFIGS"], "eigen.cfg")
    out = tmp_path / "cli"
    done = subprocess.run([cli, "eigen", "--config", cfg, "--out", str(out), "--jobs", "1"],
                          capture_output=True, text=True)
    assert done.returncode == 0, done.stderr
    table = (out / "eigen_table.csv").read_text().splitlines()
    assert table[1] == "N,m,h,lambda,oracle,rel_error,iterations,unknowns"
    done = subprocess.run([cli, "report", "--out", str(out)], capture_output=True, text=True)
    assert done.returncode == 0
    assert (out / "report_summary.csv").exists()
    done = subprocess.run([cli, "eigen", "--config", str(tmp_path / "missing.cfg")],
                          capture_output=True, text=True)
    assert done.returncode == 2
