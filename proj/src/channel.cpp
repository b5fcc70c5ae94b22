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
#include "lmimo/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lmimo {
namespace {

void check_params(const ChannelParams& p) {
  if (p.n_rx < 1 || p.n_users < 1)
    throw std::invalid_argument("channel: n_rx and n_users must be >= 1");
  if (!(p.rho >= 0.0 && p.rho < 1.0))
    throw std::invalid_argument("channel: rho must lie in [0, 1)");
}

}  // namespace

Eigen::MatrixXd exp_corr_matrix(int n, double rho) {
  if (n < 1) throw std::invalid_argument("exp_corr_matrix: n must be >= 1");
  if (!(rho >= 0.0 && rho < 1.0))
    throw std::invalid_argument("exp_corr_matrix: rho must lie in [0, 1), got " +
                                std::to_string(rho));
  Eigen::MatrixXd r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = std::pow(rho, std::abs(i - j));
  return r;
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("psd_sqrt: eigendecomposition failed");
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

Eigen::MatrixXcd sample_kronecker(const ChannelParams& params, Rng& rng) {
  check_params(params);
  const Eigen::MatrixXd sqrt_rx = psd_sqrt(exp_corr_matrix(params.n_rx, params.rho));
  const Eigen::MatrixXd sqrt_user = psd_sqrt(exp_corr_matrix(params.n_users, params.rho));
  return sample_kronecker_with(sqrt_rx, sqrt_user, params.n_rx, rng);
}

Eigen::MatrixXcd sample_kronecker_with(const Eigen::MatrixXd& sqrt_r_rx,
                                       const Eigen::MatrixXd& sqrt_r_user, int n_rx, Rng& rng) {
  const int n_users = static_cast<int>(sqrt_r_user.rows());
  // Per-entry variance 1/N_r so that E||Hx||^2 / E||z||^2 matches the
  // configured SNR exactly for unit-power symbols.
  const double dim_sigma = std::sqrt(0.5 / static_cast<double>(n_rx));
  Eigen::MatrixXcd he(n_rx, n_users);
  for (int i = 0; i < n_rx; ++i)
    for (int j = 0; j < n_users; ++j)
      he(i, j) = std::complex<double>(dim_sigma * rng.normal(), dim_sigma * rng.normal());
  return sqrt_r_rx * he * sqrt_r_user;
}

double sigma0_sq_from_snr(double snr_db, const ChannelParams& params) {
  check_params(params);
  if (!std::isfinite(snr_db))
    throw std::invalid_argument("sigma0_sq_from_snr: snr_db must be finite");
  return static_cast<double>(params.n_users) /
         (std::pow(10.0, snr_db / 10.0) * static_cast<double>(params.n_rx));
}

Eigen::VectorXcd sample_noise(int n_rx, double sigma0_sq, Rng& rng) {
  if (n_rx < 1) throw std::invalid_argument("sample_noise: n_rx must be >= 1");
  if (!(sigma0_sq > 0.0)) throw std::invalid_argument("sample_noise: sigma0_sq must be > 0");
  const double dim_sigma = std::sqrt(0.5 * sigma0_sq);
  Eigen::VectorXcd z(n_rx);
  for (int i = 0; i < n_rx; ++i)
    z[i] = std::complex<double>(dim_sigma * rng.normal(), dim_sigma * rng.normal());
  return z;
}

Eigen::MatrixXd to_real_matrix(const Eigen::MatrixXcd& h) {
  const Eigen::Index r = h.rows(), c = h.cols();
  Eigen::MatrixXd out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = h.real();
  out.topRightCorner(r, c) = -h.imag();
  out.bottomLeftCorner(r, c) = h.imag();
  out.bottomRightCorner(r, c) = h.real();
  return out;
}

Eigen::VectorXd to_real_vector(const Eigen::VectorXcd& v) {
  Eigen::VectorXd out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

Eigen::VectorXcd to_complex_vector(const Eigen::VectorXd& v) {
  if (v.size() % 2 != 0)
    throw std::invalid_argument("to_complex_vector: length must be even");
  const Eigen::Index n = v.size() / 2;
  Eigen::VectorXcd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = std::complex<double>(v[i], v[i + n]);
  return out;
}

RealModel to_real_model(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& y,
                        const std::optional<Eigen::VectorXcd>& x) {
  if (y.size() != h.rows())
    throw std::invalid_argument("to_real_model: y length " + std::to_string(y.size()) +
                                " does not match H rows " + std::to_string(h.rows()));
  if (x && x->size() != h.cols())
    throw std::invalid_argument("to_real_model: x length " + std::to_string(x->size()) +
                                " does not match H cols " + std::to_string(h.cols()));
  RealModel m;
  m.h = to_real_matrix(h);
  m.y = to_real_vector(y);
  if (x) m.x = to_real_vector(*x);
  return m;
}

ChannelRealization precompute_spectral(const Eigen::MatrixXcd& h, double sigma0_sq) {
  if (!h.allFinite()) throw std::invalid_argument("precompute_spectral: H has non-finite entries");
  if (!(sigma0_sq > 0.0))
    throw std::invalid_argument("precompute_spectral: sigma0_sq must be > 0");

  ChannelRealization chan;
  chan.h_complex = h;
  chan.h_real = to_real_matrix(h);
  chan.sigma0_sq = sigma0_sq;

  Eigen::BDCSVD<Eigen::MatrixXd> svd(chan.h_real, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success)
    throw std::runtime_error("precompute_spectral: SVD did not converge");
  chan.svd_u = svd.matrixU();
  chan.svd_v = svd.matrixV();

  // Pad to 2 N_u entries; trailing zeros appear when N_r < N_u and select the
  // prior-only branch of the posterior score.
  const Eigen::Index n = chan.h_real.cols();
  chan.singular_values = Eigen::VectorXd::Zero(n);
  chan.singular_values.head(svd.singularValues().size()) = svd.singularValues();
  return chan;
}

Eigen::VectorXd spectral_observation(const ChannelRealization& chan, const Eigen::VectorXcd& y) {
  if (y.size() != chan.h_complex.rows())
    throw std::invalid_argument("spectral_observation: y length does not match channel");
  return chan.svd_u.transpose() * to_real_vector(y);
}

}  // namespace lmimo
