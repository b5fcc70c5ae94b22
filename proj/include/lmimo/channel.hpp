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

#include <optional>

#include <Eigen/Dense>

#include "lmimo/rng.hpp"

namespace lmimo {

struct ChannelParams {
  int n_rx = 1;      // receive antennas
  int n_users = 1;   // single-antenna transmitters
  double rho = 0.0;  // exponential correlation coefficient, in [0, 1)
};

/// A channel instance prepared for spectral-domain detection: the complex
/// matrix, its real-equivalent stacked form, and the SVD of the latter.
/// Immutable after construction; safe to share across threads.
struct ChannelRealization {
  Eigen::MatrixXcd h_complex;       // N_r x N_u
  Eigen::MatrixXd h_real;           // 2N_r x 2N_u stacked form
  Eigen::MatrixXd svd_u;            // 2N_r x 2N_r orthogonal
  Eigen::MatrixXd svd_v;            // 2N_u x 2N_u orthogonal
  Eigen::VectorXd singular_values;  // length 2N_u, descending, zero-padded
  double sigma0_sq = 0.0;           // measurement noise variance, complex convention

  int n_rx() const { return static_cast<int>(h_complex.rows()); }
  int n_users() const { return static_cast<int>(h_complex.cols()); }
};

/// Exponential correlation matrix, entry (i,j) = rho^|i-j|.
Eigen::MatrixXd exp_corr_matrix(int n, double rho);

/// Symmetric PSD square root via eigendecomposition; negative eigenvalues
/// from roundoff are clamped at zero.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& a);

/// Kronecker-correlated Rayleigh draw H = Rr^(1/2) He Ru^(1/2), with He
/// entries i.i.d. circular complex Gaussian of per-entry variance 1/N_r.
/// Entries are drawn row-major, real part before imaginary part.
Eigen::MatrixXcd sample_kronecker(const ChannelParams& params, Rng& rng);

/// Same draw with correlation square roots precomputed by the caller.
Eigen::MatrixXcd sample_kronecker_with(const Eigen::MatrixXd& sqrt_r_rx,
                                       const Eigen::MatrixXd& sqrt_r_user, int n_rx, Rng& rng);

/// Noise variance that realizes a target SNR: N_u / (10^(snr/10) N_r).
double sigma0_sq_from_snr(double snr_db, const ChannelParams& params);

/// n_rx i.i.d. circular complex Gaussian entries of variance sigma0_sq
/// (each real dimension carries sigma0_sq / 2).
Eigen::VectorXcd sample_noise(int n_rx, double sigma0_sq, Rng& rng);

/// Real-equivalent stacked forms: [[Re H, -Im H], [Im H, Re H]] and
/// [Re v; Im v]. The forward model is preserved exactly.
Eigen::MatrixXd to_real_matrix(const Eigen::MatrixXcd& h);
Eigen::VectorXd to_real_vector(const Eigen::VectorXcd& v);
Eigen::VectorXcd to_complex_vector(const Eigen::VectorXd& v);

struct RealModel {
  Eigen::MatrixXd h;
  Eigen::VectorXd y;
  std::optional<Eigen::VectorXd> x;
};

RealModel to_real_model(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& y,
                        const std::optional<Eigen::VectorXcd>& x = std::nullopt);

/// Full SVD of the real-equivalent matrix, packaged with the noise variance.
ChannelRealization precompute_spectral(const Eigen::MatrixXcd& h, double sigma0_sq);

/// Spectral observation eta = U^T [Re y; Im y].
Eigen::VectorXd spectral_observation(const ChannelRealization& chan, const Eigen::VectorXcd& y);

}  // namespace lmimo
