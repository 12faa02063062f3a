import contextlib
import io
import json
import os
import re

import numpy as np
import pytest

from curvebound.cli import main


def run_cli(args, cwd):
    """Invoke the driver in cwd, returning (exit code, parsed summary)."""
    old = os.getcwd()
    os.chdir(cwd)
    buf = io.StringIO()
    try:
        with contextlib.redirect_stdout(buf):
            code = main(args)
    finally:
        os.chdir(old)
    text = buf.getvalue()
    try:
        summary = json.loads(text) if text.strip() else None
    except json.JSONDecodeError:
        summary = None  # help text or argparse noise
    return code, summary


def test_strip_harmonic_headline(tmp_path):
    code, out = run_cli(["strip", "--potential", "harmonic",
                         "--omega", "0.5", "--mq", "1"], tmp_path)
    assert code == 0
    assert out["status"] == "ok"
    assert out["units"] == "hbar=1, 2m=1"
    strip = out["strip"]
    assert strip["rho_lower"] == pytest.approx(1.0714, abs=3e-3)
    assert strip["rho_upper"] == pytest.approx(1.6016, abs=3e-3)
    assert strip["mq"] == 1
    assert strip["potential_kind"] == "harmonic"


def test_strip_mq_range_merged_in_order(tmp_path):
    code, out = run_cli(["strip", "--potential", "harmonic",
                         "--omega", "0.5", "--mq-range", "1..3"],
                        tmp_path)
    assert code == 0
    mqs = [s["mq"] for s in out["strips"]]
    assert mqs == [1, 2, 3]
    lowers = [s["rho_lower"] for s in out["strips"]]
    assert lowers == sorted(lowers)


def test_strip_free_mq0_no_result(tmp_path):
    code, out = run_cli(["strip", "--potential", "free", "--mq", "0"],
                        tmp_path)
    assert code == 1
    assert out["status"] == "no_result"


def test_spectrum_metrics_and_files(tmp_path):
    code, out = run_cli(["spectrum", "--surface", "gaussian",
                         "--a0", "1", "--sigma0", "1", "--mq", "0",
                         "--states", "2"], tmp_path)
    assert code == 0
    m = out["metrics"]
    assert m["bound_count"] == 1
    assert m["e0"] == pytest.approx(-0.0029480, abs=5e-6)
    # the shallow-well depth scale is reported next to E0, unjudged
    assert m["near_origin_depth"] == -1.0
    for name in out["outputs"]:
        assert (tmp_path / name).exists()
    eig = (tmp_path / "spectrum_eigenvalues.csv").read_text()
    assert eig.splitlines()[0] == "mq,index,energy"


def test_spectrum_unbound_exit_code(tmp_path):
    code, out = run_cli(["spectrum", "--surface", "gaussian",
                         "--a0", "1", "--sigma0", "1", "--mq", "1"],
                        tmp_path)
    assert code == 1
    assert out["status"] == "no_result"
    assert out["metrics"]["bound_count"] == 0


def test_density_ansatz_table(tmp_path):
    code, out = run_cli(["density", "--surface", "gaussian",
                         "--a0", "1", "--sigma0", "1", "--ansatz",
                         "--kprime", "5"], tmp_path)
    assert code == 0
    assert out["metrics"]["integral_2pi"] == pytest.approx(1.0,
                                                           abs=1e-6)
    rows = (tmp_path / "density.csv").read_text().splitlines()
    assert rows[0] == "rho,density"
    dens = np.array([float(r.split(",")[1]) for r in rows[1:]])
    assert dens[0] == 0.0
    peak = int(np.argmax(dens))
    assert np.all(np.diff(dens[:peak + 1]) >= 0.0)
    assert np.all(np.diff(dens[peak:]) <= 0.0)


def test_twelve_significant_digits(tmp_path):
    run_cli(["curvature", "--surface", "gaussian", "--nodes", "50"],
            tmp_path)
    rows = (tmp_path / "curvature.csv").read_text().splitlines()
    pat = re.compile(r"^-?\d\.\d{12}e[+-]\d{2}$")
    for cell in rows[1].split(","):
        assert pat.match(cell), cell


def test_byte_identical_reruns(tmp_path):
    d1 = tmp_path / "a"
    d2 = tmp_path / "b"
    d1.mkdir()
    d2.mkdir()
    args = ["spectrum", "--surface", "gaussian", "--a0", "1",
            "--sigma0", "1", "--mq", "0", "--states", "1"]
    _, s1 = run_cli(args, d1)
    _, s2 = run_cli(args, d2)
    assert s1 == s2
    for name in s1["outputs"]:
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()


def test_inverse_writes_design_table(tmp_path):
    code, out = run_cli(["inverse", "--potential", "harmonic",
                         "--omega", "0.5", "--mq", "1",
                         "--nodes", "150"], tmp_path)
    assert code == 0
    rows = (tmp_path / "inverse.csv").read_text().splitlines()
    assert rows[0] == "rho,A,f,df"
    assert len(rows) == 151
    meta = json.loads((tmp_path / "inverse_design.json").read_text())
    assert meta["strip"]["upper_criterion"] == "amplitude_one"
    assert out["metrics"]["round_trip_error_capped"] <= 1e-4


def test_roundtrip_metric(tmp_path):
    code, out = run_cli(["roundtrip", "--potential", "free",
                         "--mq", "1", "--rho-ref", "1"], tmp_path)
    assert code == 0
    assert out["metrics"]["round_trip_error"] <= 1e-6


def test_plot_files_created(tmp_path):
    code, out = run_cli(["potential", "--surface", "gaussian",
                         "--mq", "0", "--nodes", "200", "--plot"],
                        tmp_path)
    assert code == 0
    pngs = [f for f in out["outputs"] if f.endswith(".png")]
    assert pngs
    for name in pngs:
        assert (tmp_path / name).stat().st_size > 1000


def test_format_json(tmp_path):
    code, out = run_cli(["current", "--surface", "gaussian",
                         "--a0", "6", "--mq", "0",
                         "--format", "json"], tmp_path)
    assert code == 0
    data = json.loads((tmp_path / "current.json").read_text())
    assert data["columns"] == ["rho", "j_phi", "j_rho", "circulation"]
    assert all(len(row) == 4 for row in data["rows"])


def test_usage_errors(tmp_path):
    assert run_cli(["spectrum", "--mq", "banana"], tmp_path)[0] == 2
    assert run_cli(["nonsense"], tmp_path)[0] == 2
    assert run_cli(["strip", "--potential", "harmonic",
                    "--mq", "1"], tmp_path)[0] == 2  # missing omega
    assert run_cli(["strip", "--potential", "harmonic",
                    "--omega", "0.5", "--mq-range", "3..1"],
                   tmp_path)[0] == 2
    assert run_cli(["--help"], tmp_path)[0] == 0
    assert run_cli(["spectrum", "--help"], tmp_path)[0] == 0


def test_table_potential_via_csv(tmp_path):
    rows = ["rho,u"]
    for r in np.linspace(0.2, 3.0, 900):
        rows.append("%.12e,%.12e" % (r, 0.25 * r * r))
    (tmp_path / "u.csv").write_text("\n".join(rows) + "\n")
    code, out = run_cli(["strip", "--potential", "table",
                         "--potential-csv", "u.csv", "--mq", "0"],
                        tmp_path)
    assert code == 0
    assert out["strip"]["rho_lower"] == pytest.approx(1.0, abs=5e-3)
    assert out["strip"]["potential_kind"] == "custom"
