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
#include "lmimo/baselines.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lmimo {
namespace {

void check_instance(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h) {
  if (y.size() != h.rows())
    throw std::invalid_argument("baseline detector: y length does not match H rows");
  if (h.cols() < 1) throw std::invalid_argument("baseline detector: H has no columns");
}

Eigen::VectorXcd quantize_all(const Eigen::VectorXcd& v, const Constellation& c) {
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = c.quantize(v[i]);
  return out;
}

}  // namespace

Eigen::VectorXcd zf_estimate(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h) {
  check_instance(y, h);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(h);
  return cod.solve(y);
}

Eigen::VectorXcd mmse_estimate(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h,
                               double sigma0_sq) {
  check_instance(y, h);
  if (!(sigma0_sq > 0.0)) throw std::invalid_argument("detect_mmse: sigma0_sq must be > 0");
  Eigen::MatrixXcd gram = h.adjoint() * h;
  gram.diagonal().array() += sigma0_sq;
  return gram.ldlt().solve(h.adjoint() * y);
}

Eigen::VectorXcd detect_zf(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h,
                           const Constellation& c) {
  return quantize_all(zf_estimate(y, h), c);
}

Eigen::VectorXcd detect_mmse(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h,
                             double sigma0_sq, const Constellation& c) {
  return quantize_all(mmse_estimate(y, h, sigma0_sq), c);
}

bool ml_is_tractable(int order, int n_users) {
  if (n_users < 1 || order < 2) return false;
  long long candidates = 1;
  for (int i = 0; i < n_users; ++i) {
    if (candidates > kMaxMlCandidates / order) return false;
    candidates *= order;
  }
  return candidates <= kMaxMlCandidates;
}

Eigen::VectorXcd detect_ml(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h,
                           const Constellation& c) {
  check_instance(y, h);
  const int n_users = static_cast<int>(h.cols());
  if (!ml_is_tractable(c.order, n_users))
    throw std::invalid_argument("detect_ml: search space exceeds " +
                                std::to_string(kMaxMlCandidates) + " candidates");

  // Odometer over canonical symbol indices, user 0 most significant, so the
  // strict running minimum lands on the lexicographically smallest argmin.
  std::vector<int> digits(static_cast<size_t>(n_users), 0);
  Eigen::VectorXcd candidate(n_users);
  for (int j = 0; j < n_users; ++j) candidate[j] = c.complex_points[0];

  Eigen::VectorXcd best = candidate;
  double best_cost = (y - h * candidate).squaredNorm();

  while (true) {
    // advance the odometer (least significant digit is the last user)
    int pos = n_users - 1;
    while (pos >= 0) {
      if (++digits[static_cast<size_t>(pos)] < c.order) {
        candidate[pos] = c.complex_points[digits[static_cast<size_t>(pos)]];
        break;
      }
      digits[static_cast<size_t>(pos)] = 0;
      candidate[pos] = c.complex_points[0];
      --pos;
    }
    if (pos < 0) break;

    const double cost = (y - h * candidate).squaredNorm();
    if (cost < best_cost) {
      best_cost = cost;
      best = candidate;
    }
  }
  return best;
}

}  // namespace lmimo
