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
#pragma once

#include <Eigen/Dense>

#include "lmimo/channel.hpp"
#include "lmimo/constellation.hpp"

namespace lmimo {

/// Iterate of the sampler in spectral coordinates: chi = V^T x_tilde over the
/// symbol space, eta = U^T y over the observation space.
struct SpectralState {
  Eigen::VectorXd chi;  // length 2 N_u
  Eigen::VectorXd eta;  // length 2 N_r
  int level_index = 1;  // 1-based position in the annealing schedule
};

/// Relative tolerance for the diagonal pseudo-inverse |sigma0^2 - sigma_l^2 s_j^2|^+.
/// Entries below kPinvTolFactor * sigma0^2 are treated as singular and zeroed.
inline constexpr double kPinvTolFactor = 1e-12;

/// Gradient of the spectral likelihood log-density with respect to chi:
/// Sigma^T |sigma0^2 I - sigma_l^2 Sigma Sigma^T|^+ (eta - Sigma chi).
Eigen::VectorXd likelihood_score(const SpectralState& state, const ChannelRealization& chan,
                                 double sigma_l);

/// Elementwise posterior mean of the noiseless PAM symbol given a perturbed
/// observation x_tilde with per-real-dimension noise sigma_l^2 / 2. Computed
/// with max-subtracted exponentials, so it stays finite for extreme inputs.
Eigen::VectorXd prior_denoiser(const Eigen::VectorXd& x_tilde, double sigma_l,
                               const Constellation& c);

/// Score of the annealed prior via the denoiser: (denoise(x) - x) / (sigma_l^2 / 2).
Eigen::VectorXd prior_score(const Eigen::VectorXd& x_tilde, double sigma_l,
                            const Constellation& c);

/// Combined posterior score in spectral coordinates. Elementwise the branch
/// is selected by (sigma0, sigma_l s_j): prior only when s_j = 0, likelihood
/// only when sigma0 < sigma_l s_j, and the sum otherwise.
Eigen::VectorXd posterior_score(const SpectralState& state, const ChannelRealization& chan,
                                double sigma_l, const Constellation& c);

namespace detail {

/// Scratch buffers for the elementwise mixture denoiser; reused across the
/// sampler's inner loop to keep the hot path allocation-free.
struct DenoiserWorkspace {
  Eigen::ArrayXXd logw;  // n x m exponent table
  Eigen::ArrayXd rowmax;

  void resize(Eigen::Index n, Eigen::Index m) {
    if (logw.rows() != n || logw.cols() != m) {
      logw.resize(n, m);
      rowmax.resize(n);
    }
  }
};

/// out = E[pam | x] elementwise, with variance sig_eff_sq per real dimension.
void denoise_into(const Eigen::VectorXd& x, double sig_eff_sq, const Eigen::VectorXd& pam_levels,
                  DenoiserWorkspace& ws, Eigen::VectorXd& out);

/// Diagonal pseudo-inverse entries of |sigma0^2 I - sigma_l^2 Sigma Sigma^T|
/// restricted to the first 2 N_u coordinates.
void pinv_diag_into(const Eigen::VectorXd& singular_values, double sigma0_sq, double sigma_l,
                    Eigen::VectorXd& out);

}  // namespace detail
}  // namespace lmimo
