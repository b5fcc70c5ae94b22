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
#include "lmimo/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lmimo {

double Constellation::min_pam_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 1; i < pam_size(); ++i) gap = std::min(gap, pam_levels[i] - pam_levels[i - 1]);
  return gap;
}

int Constellation::quantize_pam_index(double v) const {
  if (!std::isfinite(v)) throw std::invalid_argument("quantize: non-finite input");
  int best = 0;
  double best_dist = std::abs(v - pam_levels[0]);
  for (int i = 1; i < pam_size(); ++i) {
    const double d = std::abs(v - pam_levels[i]);
    if (d < best_dist) {  // strict: ties keep the lower index
      best_dist = d;
      best = i;
    }
  }
  return best;
}

int Constellation::quantize_index(std::complex<double> p) const {
  const int re = quantize_pam_index(p.real());
  const int im = quantize_pam_index(p.imag());
  return re * pam_size() + im;
}

std::complex<double> Constellation::quantize(std::complex<double> p) const {
  return complex_points[quantize_index(p)];
}

Constellation make_qam(int order) {
  int m = 0;
  switch (order) {
    case 4: m = 2; break;
    case 16: m = 4; break;
    case 64: m = 8; break;
    case 256: m = 16; break;
    default:
      throw std::invalid_argument("make_qam: order " + std::to_string(order) +
                                  " is not square QAM (supported: 4, 16, 64, 256)");
  }

  Constellation c;
  c.order = order;
  c.pam_levels.resize(m);

  // Odd-integer grid {-(m-1), ..., -1, +1, ..., m-1} scaled so that the
  // complex alphabet has unit average power: E|x|^2 = 2 (m^2 - 1) / 3 * scale^2.
  const double scale = std::sqrt(3.0 / (2.0 * (static_cast<double>(m) * m - 1.0)));
  for (int i = 0; i < m; ++i) c.pam_levels[i] = scale * static_cast<double>(2 * i - (m - 1));

  c.complex_points.resize(order);
  double power = 0.0;
  for (int re = 0; re < m; ++re) {
    for (int im = 0; im < m; ++im) {
      const std::complex<double> pt(c.pam_levels[re], c.pam_levels[im]);
      c.complex_points[re * m + im] = pt;
      power += std::norm(pt);
    }
  }
  c.average_power = power / static_cast<double>(order);
  return c;
}

std::pair<long long, long long> count_symbol_errors(const Eigen::VectorXcd& estimate,
                                                    const Eigen::VectorXcd& truth) {
  if (estimate.size() != truth.size())
    throw std::invalid_argument("count_symbol_errors: length mismatch (" +
                                std::to_string(estimate.size()) + " vs " +
                                std::to_string(truth.size()) + ")");
  if (estimate.size() == 0)
    throw std::invalid_argument("count_symbol_errors: empty symbol vectors");
  long long errors = 0;
  for (Eigen::Index i = 0; i < estimate.size(); ++i)
    if (estimate[i] != truth[i]) ++errors;
  return {errors, static_cast<long long>(estimate.size())};
}

}  // namespace lmimo
