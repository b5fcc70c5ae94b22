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

"""Smoke tests for the python module: end-to-end paths through the bindings."""

import math

import numpy as np
import pytest

import lmimo


def test_constellation_roundtrip():
    c = lmimo.make_qam(16)
    assert c.order == 16
    assert abs(c.average_power - 1.0) < 1e-12
    pts = np.asarray(c.complex_points)
    assert pts.shape == (16,)
    for p in pts:
        assert c.quantize(p) == p
    with pytest.raises(ValueError):
        lmimo.make_qam(6)


def test_channel_and_snr():
    params = lmimo.ChannelParams(n_rx=8, n_users=4, rho=0.6)
    assert lmimo.sigma0_sq_from_snr(0.0, params) == pytest.approx(4 / 8)
    rng = lmimo.Rng(1)
    h = lmimo.sample_kronecker(params, rng)
    assert h.shape == (8, 4)
    chan = lmimo.precompute_spectral(h, 0.1)
    s = np.asarray(chan.singular_values)
    assert s.shape == (8,)
    assert np.all(np.diff(s) <= 1e-15)


def test_scores_are_consistent():
    c = lmimo.make_qam(4)
    rng = lmimo.Rng(7)
    h = lmimo.sample_kronecker(lmimo.ChannelParams(4, 2, 0.0), rng)
    chan = lmimo.precompute_spectral(h, 0.05)
    state = lmimo.SpectralState(chi=np.zeros(4), eta=np.ones(8))
    sigma_l = 0.3
    post = np.asarray(lmimo.posterior_score(state, chan, sigma_l, c))
    lik = np.asarray(lmimo.likelihood_score(state, chan, sigma_l))
    assert post.shape == lik.shape == (4,)
    assert np.all(np.isfinite(post))
    # tweedie route: score = (denoise(x) - x) / (sigma_l^2 / 2)
    x = np.linspace(-1, 1, 4)
    den = np.asarray(lmimo.prior_denoiser(x, sigma_l, c))
    score = np.asarray(lmimo.prior_score(x, sigma_l, c))
    assert score == pytest.approx((den - x) / (0.5 * sigma_l**2))


def test_detect_recovers_clean_instance():
    c = lmimo.make_qam(4)
    rng = lmimo.Rng(42)
    params = lmimo.ChannelParams(4, 2, 0.0)
    h = lmimo.sample_kronecker(params, rng)
    x = np.array([c.complex_points[1], c.complex_points[2]])
    y = h @ x

    config = lmimo.LangevinConfig()
    config.schedule = lmimo.make_schedule(1.0, 0.01, 10)
    config.steps_per_level = 30
    config.n_trajectories = 5
    config.seed = 3

    result = lmimo.detect(y, h, 1e-6, config, c)
    assert np.array_equal(np.asarray(result.symbols), x)
    assert result.residual <= min(result.per_trajectory_residuals)

    # baselines agree on the clean instance
    assert np.array_equal(np.asarray(lmimo.detect_zf(y, h, c)), x)
    assert np.array_equal(np.asarray(lmimo.detect_ml(y, h, c)), x)


def test_detect_threads_bitwise_identical():
    c = lmimo.make_qam(16)
    rng = lmimo.Rng(11)
    h = lmimo.sample_kronecker(lmimo.ChannelParams(8, 4, 0.6), rng)
    x = np.array([c.complex_points[i] for i in (0, 5, 9, 15)])
    z = lmimo.sample_noise(8, 0.02, rng)
    y = h @ x + z

    config = lmimo.LangevinConfig()
    config.schedule = lmimo.make_schedule(1.0, 0.01, 8)
    config.steps_per_level = 15
    config.n_trajectories = 6
    config.seed = 17

    a = lmimo.detect(y, h, 0.02, config, c, 1)
    b = lmimo.detect(y, h, 0.02, config, c, 3)
    assert np.array_equal(np.asarray(a.symbols), np.asarray(b.symbols))
    assert a.per_trajectory_residuals == b.per_trajectory_residuals


def test_sweep_from_python():
    config = lmimo.SweepConfig()
    config.channel = lmimo.ChannelParams(2, 2, 0.0)
    config.modulation_order = 4
    config.snr_db_list = [30.0]
    config.detectors = ["zf", "mmse"]
    config.n_trials = 50
    config.master_seed = 5
    config.measure_time = False

    report = lmimo.run_sweep(config)
    assert len(report.rows) == 2
    for row in report.rows:
        assert row.n_symbols == 100
        assert 0.0 <= row.ci_low <= row.ser <= row.ci_high <= 1.0

    again = lmimo.to_csv(lmimo.run_sweep(config))
    assert again == lmimo.to_csv(report)


def test_parse_config_errors_name_keys():
    with pytest.raises(ValueError, match="rho"):
        lmimo.parse_config(
            '{"channel": {"n_rx": 2, "n_users": 2, "rho": 1.5},'
            ' "modulation": {"order": 4},'
            ' "sweep": {"snr_db_list": [10], "detectors": ["zf"],'
            ' "n_trials": 1, "master_seed": 0}}'
        )


def test_wilson_interval_brackets_the_estimate():
    for errors, total in [(0, 10), (3, 10), (10, 10), (7, 1000)]:
        lo, hi = lmimo.wilson_interval(errors, total)
        p = errors / total
        assert 0.0 <= lo <= p <= hi <= 1.0
