/*
 * Copyright 2026 langevin-mimo contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "lmimo/detector.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

namespace lmimo {
namespace {

constexpr double kDivergenceBound = 1e3;

enum class Branch : unsigned char { kPriorOnly, kLikelihoodOnly, kBoth };

void check_config(const LangevinConfig& config) {
  if (!(config.epsilon >= 0.0))
    throw std::invalid_argument("langevin: epsilon must be >= 0");
  if (config.steps_per_level < 1)
    throw std::invalid_argument("langevin: steps_per_level must be >= 1");
  if (config.n_trajectories < 1)
    throw std::invalid_argument("langevin: n_trajectories must be >= 1");
  const AnnealingSchedule& sched = config.effective_schedule();
  if (sched.n_levels() < 1) throw std::invalid_argument("langevin: empty schedule");
  for (int l = 0; l < sched.n_levels(); ++l) {
    if (!(sched.sigmas[l] > 0.0))
      throw std::invalid_argument("langevin: schedule sigmas must be > 0");
    if (l > 0 && !(sched.sigmas[l] < sched.sigmas[l - 1]))
      throw std::invalid_argument("langevin: schedule must be strictly decreasing");
  }
}

}  // namespace

const AnnealingSchedule& LangevinConfig::effective_schedule() const {
  static const AnnealingSchedule kDefault = make_schedule(1.0, 0.01, 20);
  return schedule.n_levels() > 0 ? schedule : kDefault;
}

AnnealingSchedule make_schedule(double sigma_first, double sigma_last, int n_levels) {
  if (!(sigma_first > sigma_last && sigma_last > 0.0))
    throw std::invalid_argument("make_schedule: need sigma_first > sigma_last > 0");
  if (n_levels < 2) throw std::invalid_argument("make_schedule: need at least 2 levels");

  AnnealingSchedule s;
  s.sigmas.resize(n_levels);
  const double ratio = sigma_last / sigma_first;
  for (int l = 0; l < n_levels; ++l)
    s.sigmas[l] = sigma_first * std::pow(ratio, static_cast<double>(l) / (n_levels - 1));
  // Exact endpoints regardless of pow() rounding.
  s.sigmas[0] = sigma_first;
  s.sigmas[n_levels - 1] = sigma_last;
  return s;
}

Eigen::VectorXd step_size_diag(double sigma_l, const Eigen::VectorXd& singular_values,
                               double sigma0, double epsilon, double sigma_last) {
  if (!(sigma_l > 0.0) || !(sigma0 > 0.0) || !(sigma_last > 0.0))
    throw std::invalid_argument("step_size_diag: sigmas must be > 0");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("step_size_diag: epsilon must be >= 0");

  // Normalized by sigma_last^2, the standard annealed-Langevin scaling: the
  // per-step contraction of the final level is then epsilon / sigma_last^2
  // independent of the schedule, which is what lets the reference
  // hyperparameters (epsilon 3e-5, 70 steps per level) mix in time.
  const double base = epsilon * sigma_l * sigma_l / (sigma_last * sigma_last);
  Eigen::VectorXd lambda(singular_values.size());
  for (Eigen::Index j = 0; j < lambda.size(); ++j) {
    // Writing both branches through u = sigma_l s_j / sigma0 makes them meet
    // at exactly zero on the boundary u = 1.
    const double u = sigma_l * singular_values[j] / sigma0;
    lambda[j] = u <= 1.0 ? base * (1.0 - u * u) : base * (1.0 - 1.0 / (u * u));
  }
  return lambda;
}

Eigen::VectorXd run_trajectory(const Eigen::VectorXd& eta, const ChannelRealization& chan,
                               const LangevinConfig& config, const Constellation& c, Rng& rng) {
  check_config(config);
  if (eta.size() != chan.h_real.rows())
    throw std::invalid_argument("run_trajectory: eta length does not match channel");

  const AnnealingSchedule& sched = config.effective_schedule();
  const Eigen::Index n = chan.h_real.cols();      // 2 N_u
  const Eigen::Index n_eta = eta.size();          // 2 N_r
  const double sigma0 = std::sqrt(chan.sigma0_sq);
  const double sigma_last = sched.sigmas[sched.n_levels() - 1];

  Eigen::VectorXd chi(n);
  for (Eigen::Index j = 0; j < n; ++j) chi[j] = rng.uniform(-1.0, 1.0);

  Eigen::VectorXd lambda(n), noise_scale(n), pinv(n);
  Eigen::VectorXd x_tilde(n), denoised(n), prior(n), prior_spectral(n);
  std::vector<Branch> branch(static_cast<size_t>(n));
  detail::DenoiserWorkspace ws;

  for (int l = 0; l < sched.n_levels(); ++l) {
    const double sigma_l = sched.sigmas[l];
    const double sig_eff_sq = 0.5 * sigma_l * sigma_l;

    lambda = step_size_diag(sigma_l, chan.singular_values, sigma0, config.epsilon, sigma_last);
    noise_scale = (2.0 * lambda.array()).sqrt();
    detail::pinv_diag_into(chan.singular_values, chan.sigma0_sq, sigma_l, pinv);

    bool need_prior = false;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double s = chan.singular_values[j];
      if (s == 0.0)
        branch[j] = Branch::kPriorOnly;
      else if (sigma0 < sigma_l * s)
        branch[j] = Branch::kLikelihoodOnly;
      else
        branch[j] = Branch::kBoth;
      need_prior |= branch[j] != Branch::kLikelihoodOnly;
    }

    for (int t = 0; t < config.steps_per_level; ++t) {
      if (need_prior) {
        x_tilde.noalias() = chan.svd_v * chi;
        detail::denoise_into(x_tilde, sig_eff_sq, c.pam_levels, ws, denoised);
        prior = (denoised - x_tilde) / sig_eff_sq;
        prior_spectral.noalias() = chan.svd_v.transpose() * prior;
      }

      double max_abs = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        const double s = chan.singular_values[j];
        const double lik =
            (j < n_eta && s != 0.0) ? s * pinv[j] * (eta[j] - s * chi[j]) : 0.0;
        double g;
        switch (branch[j]) {
          case Branch::kPriorOnly: g = prior_spectral[j]; break;
          case Branch::kLikelihoodOnly: g = lik; break;
          default: g = lik + prior_spectral[j]; break;
        }
        chi[j] += lambda[j] * g + noise_scale[j] * rng.normal();
        max_abs = std::max(max_abs, std::abs(chi[j]));
      }
      if (!(max_abs <= kDivergenceBound)) throw DivergenceError(l + 1, t);
    }
  }
  return chi;
}

DetectionResult detect(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h, double sigma0_sq,
                       const LangevinConfig& config, const Constellation& c, int n_threads) {
  check_config(config);
  if (y.size() != h.rows())
    throw std::invalid_argument("detect: y length does not match H rows");
  if (n_threads < 1) throw std::invalid_argument("detect: n_threads must be >= 1");

  const ChannelRealization chan = precompute_spectral(h, sigma0_sq);
  const Eigen::VectorXd eta = spectral_observation(chan, y);
  const int n_traj = config.n_trajectories;
  const Rng base(config.seed);

  std::vector<Eigen::VectorXcd> candidates(static_cast<size_t>(n_traj));
  std::vector<double> residuals(static_cast<size_t>(n_traj), 0.0);
  std::vector<std::exception_ptr> failures(static_cast<size_t>(n_traj));

  auto run_one = [&](int m) {
    try {
      Rng traj_rng = base.substream(static_cast<std::uint64_t>(m));
      const Eigen::VectorXd chi = run_trajectory(eta, chan, config, c, traj_rng);
      const Eigen::VectorXcd x = to_complex_vector(chan.svd_v * chi);
      Eigen::VectorXcd symbols(x.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) symbols[i] = c.quantize(x[i]);
      residuals[static_cast<size_t>(m)] = (y - h * symbols).squaredNorm();
      candidates[static_cast<size_t>(m)] = std::move(symbols);
    } catch (...) {
      failures[static_cast<size_t>(m)] = std::current_exception();
    }
  };

  const int workers = std::min(n_threads, n_traj);
  if (workers <= 1) {
    for (int m = 0; m < n_traj; ++m) run_one(m);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int m = w; m < n_traj; m += workers) run_one(m);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Failures and the min-residual reduction are resolved in trajectory order
  // so the outcome does not depend on scheduling.
  for (int m = 0; m < n_traj; ++m)
    if (failures[static_cast<size_t>(m)]) std::rethrow_exception(failures[static_cast<size_t>(m)]);

  int best = 0;
  for (int m = 1; m < n_traj; ++m)
    if (residuals[static_cast<size_t>(m)] < residuals[static_cast<size_t>(best)]) best = m;

  DetectionResult result;
  result.symbols = candidates[static_cast<size_t>(best)];
  result.residual = residuals[static_cast<size_t>(best)];
  result.trajectory_index = best;
  result.per_trajectory_residuals = std::move(residuals);
  return result;
}

}  // namespace lmimo
