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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "lmimo/baselines.hpp"
#include "lmimo/channel.hpp"
#include "lmimo/detector.hpp"
#include "lmimo/rng.hpp"

using namespace lmimo;

namespace {

Eigen::MatrixXcd random_matrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXcd h(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) h(i, j) = std::complex<double>(rng.normal(), rng.normal());
  return h;
}

Eigen::VectorXcd random_symbols(const Constellation& c, int n, Rng& rng) {
  Eigen::VectorXcd x(n);
  for (int j = 0; j < n; ++j) x[j] = c.complex_points[rng.uniform_int(c.order)];
  return x;
}

// SVD-based minimum-norm least-squares solve, independent of the
// decomposition used inside zf_estimate.
Eigen::VectorXcd svd_pinv_solve(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& y) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.solve(y);
}

}  // namespace

TEST_CASE("zf: identity channel and noiseless inversion") {
  const Constellation c = make_qam(16);
  Rng rng(3);

  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(3, 3);
  const Eigen::VectorXcd x = random_symbols(c, 3, rng);
  CHECK(detect_zf(x, eye, c) == x);

  const Eigen::MatrixXcd h = random_matrix(4, 2, rng);
  const Eigen::VectorXcd x2 = random_symbols(c, 2, rng);
  CHECK(detect_zf(h * x2, h, c) == x2);
}

TEST_CASE("zf on a rank-deficient channel matches the minimum-norm solve") {
  const Constellation c = make_qam(4);
  Rng rng(5);
  // duplicate column makes H rank 1
  Eigen::MatrixXcd h(3, 2);
  const Eigen::MatrixXcd col = random_matrix(3, 1, rng);
  h.col(0) = col;
  h.col(1) = col;
  const Eigen::VectorXcd y = random_matrix(3, 1, rng);

  const Eigen::VectorXcd est = zf_estimate(y, h);
  const Eigen::VectorXcd oracle = svd_pinv_solve(h, y);
  CHECK((est - oracle).norm() < 1e-10);

  const Eigen::VectorXcd detected = detect_zf(y, h, c);
  for (int j = 0; j < 2; ++j) CHECK(detected[j] == c.quantize(oracle[j]));
}

TEST_CASE("mmse estimate matches an independent dense solve") {
  Rng rng(7);
  const Eigen::MatrixXcd h = random_matrix(4, 2, rng);
  const Eigen::VectorXcd y = random_matrix(4, 1, rng);
  const double sigma0_sq = 0.37;

  const Eigen::VectorXcd est = mmse_estimate(y, h, sigma0_sq);

  // oracle: explicit full-pivot LU inverse of the regularized Gram matrix
  const Eigen::MatrixXcd a =
      h.adjoint() * h + sigma0_sq * Eigen::MatrixXcd::Identity(2, 2);
  const Eigen::VectorXcd oracle = a.fullPivLu().inverse() * (h.adjoint() * y);
  CHECK((est - oracle).norm() < 1e-10);
}

TEST_CASE("mmse limits") {
  const Constellation c = make_qam(16);
  Rng rng(9);

  SUBCASE("vanishing noise recovers zero forcing on well-conditioned channels") {
    for (int rep = 0; rep < 20; ++rep) {
      const Eigen::MatrixXcd h = random_matrix(4, 2, rng);
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
      const double cond =
          svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
      if (cond >= 1e3) continue;
      const Eigen::VectorXcd y = random_matrix(4, 1, rng);
      CHECK(detect_mmse(y, h, 1e-12, c) == detect_zf(y, h, c));
    }
  }

  SUBCASE("overwhelming regularization drives the estimate to zero") {
    const Eigen::MatrixXcd h = random_matrix(4, 2, rng);
    const Eigen::VectorXcd y = random_matrix(4, 1, rng);
    CHECK(mmse_estimate(y, h, 1e12).norm() < 1e-9);
    // and the limit point quantizes to the canonical tie-break symbol: for
    // 16-qam the origin ties between the middle levels, lower index wins
    const int mid = c.pam_size() / 2 - 1;
    CHECK(c.quantize_index({0.0, 0.0}) == mid * c.pam_size() + mid);
  }
}

TEST_CASE("ml: exact recovery, scalar agreement, and the tractability guard") {
  const Constellation c = make_qam(4);
  Rng rng(11);

  SUBCASE("noiseless instances are recovered exactly") {
    for (int rep = 0; rep < 50; ++rep) {
      const Eigen::MatrixXcd h = random_matrix(4, 2, rng);
      const Eigen::VectorXcd x = random_symbols(c, 2, rng);
      CHECK(detect_ml(h * x, h, c) == x);
    }
  }

  SUBCASE("positive real scalar channel agrees with quantized zero forcing") {
    Eigen::MatrixXcd h(1, 1);
    h << std::complex<double>(1.7, 0.0);
    for (int rep = 0; rep < 50; ++rep) {
      Eigen::VectorXcd y(1);
      y << std::complex<double>(rng.normal(), rng.normal());
      const Eigen::VectorXcd ml = detect_ml(y, h, c);
      CHECK(ml[0] == c.quantize(y[0] / h(0, 0)));
    }
  }

  SUBCASE("guard rejects oversized search spaces") {
    CHECK(ml_is_tractable(4, 10));     // 4^10 = 2^20 exactly
    CHECK_FALSE(ml_is_tractable(4, 11));
    CHECK_FALSE(ml_is_tractable(16, 32));
    const Eigen::MatrixXcd h = random_matrix(16, 11, rng);
    const Eigen::VectorXcd y = random_matrix(16, 1, rng);
    CHECK_THROWS_AS(detect_ml(y, h, c), std::invalid_argument);
  }
}

TEST_CASE("ml dominance: no detector beats the exhaustive residual") {
  const Constellation c = make_qam(4);
  Rng rng(13);
  LangevinConfig langevin;
  langevin.steps_per_level = 20;
  langevin.schedule = make_schedule(1.0, 0.01, 8);
  langevin.n_trajectories = 4;

  for (int rep = 0; rep < 25; ++rep) {
    const Eigen::MatrixXcd h = random_matrix(4, 2, rng);
    const Eigen::VectorXcd x = random_symbols(c, 2, rng);
    Rng noise(rep);
    const double sigma0_sq = 0.1;
    const Eigen::VectorXcd y = h * x + sample_noise(4, sigma0_sq, noise);

    const double ml_residual = (y - h * detect_ml(y, h, c)).squaredNorm();
    CHECK(ml_residual <= (y - h * detect_zf(y, h, c)).squaredNorm() + 1e-12);
    CHECK(ml_residual <=
          (y - h * detect_mmse(y, h, sigma0_sq, c)).squaredNorm() + 1e-12);

    langevin.seed = static_cast<std::uint64_t>(rep);
    const DetectionResult lang = detect(y, h, sigma0_sq, langevin, c);
    CHECK(ml_residual <= lang.residual + 1e-12);
  }
}

TEST_CASE("all detectors return alphabet members") {
  const Constellation c = make_qam(16);
  Rng rng(15);
  const Eigen::MatrixXcd h = random_matrix(3, 2, rng);
  const Eigen::VectorXcd y = random_matrix(3, 1, rng);

  auto in_alphabet = [&](const Eigen::VectorXcd& v) {
    for (int j = 0; j < v.size(); ++j) {
      bool found = false;
      for (int k = 0; k < c.order; ++k)
        if (v[j] == c.complex_points[k]) found = true;
      if (!found) return false;
    }
    return true;
  };

  CHECK(in_alphabet(detect_zf(y, h, c)));
  CHECK(in_alphabet(detect_mmse(y, h, 0.2, c)));
  CHECK(in_alphabet(detect_ml(y, h, c)));
}
