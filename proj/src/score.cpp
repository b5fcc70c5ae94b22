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
#include "lmimo/score.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lmimo {
namespace {

void check_sigma_l(double sigma_l) {
  if (!(sigma_l > 0.0)) throw std::invalid_argument("score: sigma_l must be > 0");
}

void check_state(const SpectralState& state, const ChannelRealization& chan) {
  if (state.chi.size() != chan.h_real.cols())
    throw std::invalid_argument("score: chi length does not match channel");
  if (state.eta.size() != chan.h_real.rows())
    throw std::invalid_argument("score: eta length does not match channel");
  if (!state.chi.allFinite() || !state.eta.allFinite())
    throw std::invalid_argument("score: non-finite spectral state");
}

}  // namespace

namespace detail {

void denoise_into(const Eigen::VectorXd& x, double sig_eff_sq, const Eigen::VectorXd& pam_levels,
                  DenoiserWorkspace& ws, Eigen::VectorXd& out) {
  const Eigen::Index n = x.size();
  const Eigen::Index m = pam_levels.size();
  ws.resize(n, m);
  out.resize(n);

  const double inv_two_var = 0.5 / sig_eff_sq;
  for (Eigen::Index k = 0; k < m; ++k)
    ws.logw.col(k) = -(x.array() - pam_levels[k]).square() * inv_two_var;

  // Max-subtraction keeps the largest exponent at zero, so the normalizer is
  // always >= 1 and the ratio never overflows or becomes 0/0.
  ws.rowmax = ws.logw.rowwise().maxCoeff();
  ws.logw.colwise() -= ws.rowmax;
  ws.logw = ws.logw.exp();

  out.array() = (ws.logw.matrix() * pam_levels).array() / ws.logw.rowwise().sum();
}

void pinv_diag_into(const Eigen::VectorXd& singular_values, double sigma0_sq, double sigma_l,
                    Eigen::VectorXd& out) {
  const Eigen::Index n = singular_values.size();
  out.resize(n);
  const double tol = kPinvTolFactor * sigma0_sq;
  const double sig_l_sq = sigma_l * sigma_l;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double s = singular_values[j];
    const double d = std::abs(sigma0_sq - sig_l_sq * s * s);
    out[j] = d > tol ? 1.0 / d : 0.0;
  }
}

}  // namespace detail

Eigen::VectorXd likelihood_score(const SpectralState& state, const ChannelRealization& chan,
                                 double sigma_l) {
  check_sigma_l(sigma_l);
  check_state(state, chan);

  const Eigen::Index n = state.chi.size();   // 2 N_u
  const Eigen::Index rows = state.eta.size();  // 2 N_r
  Eigen::VectorXd pinv;
  detail::pinv_diag_into(chan.singular_values, chan.sigma0_sq, sigma_l, pinv);

  // Sigma is diagonal-rectangular, so the product collapses elementwise.
  // Coordinates beyond min(2N_r, 2N_u) carry s_j = 0 and contribute nothing.
  Eigen::VectorXd score = Eigen::VectorXd::Zero(n);
  const Eigen::Index active = std::min(n, rows);
  for (Eigen::Index j = 0; j < active; ++j) {
    const double s = chan.singular_values[j];
    score[j] = s * pinv[j] * (state.eta[j] - s * state.chi[j]);
  }
  return score;
}

Eigen::VectorXd prior_denoiser(const Eigen::VectorXd& x_tilde, double sigma_l,
                               const Constellation& c) {
  check_sigma_l(sigma_l);
  if (!x_tilde.allFinite()) throw std::invalid_argument("prior_denoiser: non-finite input");
  detail::DenoiserWorkspace ws;
  Eigen::VectorXd out;
  // Complex perturbation variance sigma_l^2 splits evenly across the two
  // real dimensions.
  detail::denoise_into(x_tilde, 0.5 * sigma_l * sigma_l, c.pam_levels, ws, out);
  return out;
}

Eigen::VectorXd prior_score(const Eigen::VectorXd& x_tilde, double sigma_l,
                            const Constellation& c) {
  const double sig_eff_sq = 0.5 * sigma_l * sigma_l;
  return (prior_denoiser(x_tilde, sigma_l, c) - x_tilde) / sig_eff_sq;
}

Eigen::VectorXd posterior_score(const SpectralState& state, const ChannelRealization& chan,
                                double sigma_l, const Constellation& c) {
  check_sigma_l(sigma_l);
  check_state(state, chan);

  const Eigen::VectorXd lik = likelihood_score(state, chan, sigma_l);
  const Eigen::VectorXd x_tilde = chan.svd_v * state.chi;
  const Eigen::VectorXd prior_spectral = chan.svd_v.transpose() * prior_score(x_tilde, sigma_l, c);

  const double sigma0 = std::sqrt(chan.sigma0_sq);
  Eigen::VectorXd score(state.chi.size());
  for (Eigen::Index j = 0; j < score.size(); ++j) {
    const double s = chan.singular_values[j];
    if (s == 0.0) {
      score[j] = prior_spectral[j];
    } else if (sigma0 < sigma_l * s) {
      score[j] = lik[j];
    } else {
      score[j] = lik[j] + prior_spectral[j];
    }
  }
  return score;
}

}  // namespace lmimo
