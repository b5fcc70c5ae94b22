# Copyright 2026 langevin-mimo contributors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the command-line tool (sweep, detect, exit codes)."""

import json
import os
import subprocess

import numpy as np
import pytest

import lmimo

CLI = os.environ.get("LMIMO_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="LMIMO_CLI not set")


def run_cli(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def small_config(tmp_path, **overrides):
    config = {
        "channel": {"n_rx": 2, "n_users": 2, "rho": 0.0},
        "modulation": {"order": 4},
        "langevin": {
            "steps_per_level": 5,
            "n_levels": 4,
            "n_trajectories": 2,
        },
        "sweep": {
            "snr_db_list": [10, 14],
            "detectors": ["zf", "mmse"],
            "n_trials": 40,
            "master_seed": 99,
        },
    }
    for section, values in overrides.items():
        config.setdefault(section, {}).update(values)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    return str(path)


def test_sweep_writes_csv_and_is_seed_deterministic(tmp_path):
    config = small_config(tmp_path)
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"

    ra = run_cli("sweep", "--config", config, "--output", str(out_a))
    assert ra.returncode == 0, ra.stderr
    rb = run_cli("sweep", "--config", config, "--output", str(out_b), "--threads", "2")
    assert rb.returncode == 0, rb.stderr

    header, *rows_a = out_a.read_text().splitlines()
    assert header == "detector,snr_db,n_symbols,n_symbol_errors,ser,ci_low,ci_high,wall_time_s"
    assert len(rows_a) == 4  # 2 detectors x 2 snr points

    # identical seed => identical statistics at any thread count; the wall
    # time column is measured, so compare everything but it
    strip = lambda text: [r.rsplit(",", 1)[0] for r in text.splitlines()]
    assert strip(out_a.read_text()) == strip(out_b.read_text())


def test_sweep_detector_override(tmp_path):
    config = small_config(tmp_path)
    out = tmp_path / "zf_only.csv"
    r = run_cli("sweep", "--config", config, "--output", str(out), "--detectors", "zf")
    assert r.returncode == 0, r.stderr
    rows = out.read_text().splitlines()[1:]
    assert all(row.startswith("zf,") for row in rows)


def test_sweep_rejects_bad_config(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"channel": {"n_rx": 2, "n_users": 2, "rho": 2.0}}')
    r = run_cli("sweep", "--config", str(bad), "--output", str(tmp_path / "x.csv"))
    assert r.returncode == 1
    assert "rho" in r.stderr or "modulation" in r.stderr


def test_sweep_exit_code_on_io_failure(tmp_path):
    config = small_config(tmp_path)
    r = run_cli("sweep", "--config", config, "--output", "/nonexistent/dir/out.csv")
    assert r.returncode == 2
    assert "error" in r.stderr


def test_sweep_exit_code_on_mass_exclusions(tmp_path):
    config = small_config(
        tmp_path,
        langevin={"epsilon": 1e12, "steps_per_level": 2, "n_levels": 2},
        sweep={"detectors": ["langevin"], "n_trials": 5, "snr_db_list": [10]},
    )
    r = run_cli("sweep", "--config", config, "--output", str(tmp_path / "div.csv"))
    assert r.returncode == 3
    assert "excluded" in r.stderr


def test_detect_on_instance_file(tmp_path):
    c = lmimo.make_qam(4)
    rng = lmimo.Rng(123)
    h = lmimo.sample_kronecker(lmimo.ChannelParams(4, 2, 0.0), rng)
    x = np.array([c.complex_points[3], c.complex_points[0]])
    y = h @ x  # noiseless

    instance = {
        "h_re": np.real(h).tolist(),
        "h_im": np.imag(h).tolist(),
        "y_re": np.real(y).tolist(),
        "y_im": np.imag(y).tolist(),
        "sigma0_sq": 1e-6,
        "order": 4,
    }
    path = tmp_path / "instance.json"
    path.write_text(json.dumps(instance))

    for detector in ["zf", "mmse", "ml", "langevin"]:
        r = run_cli("detect", "--instance", str(path), "--detector", detector, "--seed", "7")
        assert r.returncode == 0, r.stderr
        lines = r.stdout.strip().splitlines()
        assert len(lines) == 2
        decoded = np.array([complex(*map(float, line.split())) for line in lines])
        assert np.allclose(decoded, x, atol=1e-12), detector


def test_selftest_passes():
    r = run_cli("selftest")
    assert r.returncode == 0, r.stdout + r.stderr
    assert "selftest passed" in r.stdout
