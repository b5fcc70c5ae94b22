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

#include <complex>
#include <utility>

#include <Eigen/Dense>

namespace lmimo {

/// Unit-average-power square QAM alphabet.
///
/// The alphabet factorizes into two identical PAM dimensions. Complex points
/// are stored in canonical row-major order over (real level index, imaginary
/// level index), both ascending; quantization ties resolve to the smallest
/// canonical index. Immutable after construction.
struct Constellation {
  int order = 0;                     // K complex symbols
  Eigen::VectorXd pam_levels;        // sqrt(K) levels, ascending, symmetric
  Eigen::VectorXcd complex_points;   // K points, canonical order
  double average_power = 0.0;        // mean |point|^2, equals 1

  int pam_size() const { return static_cast<int>(pam_levels.size()); }
  double min_pam_gap() const;

  /// Nearest PAM level index; equidistant ties go to the lower index.
  int quantize_pam_index(double v) const;

  /// Canonical index of the nearest complex point (separable search).
  int quantize_index(std::complex<double> p) const;

  /// Nearest complex point. Returns the stored point value, so exact
  /// equality against other quantized symbols is meaningful.
  std::complex<double> quantize(std::complex<double> p) const;
};

/// Builds the normalized alphabet for order in {4, 16, 64, 256}.
Constellation make_qam(int order);

/// Elementwise exact comparison; returns (mismatches, length).
/// Rejects empty and length-mismatched inputs.
std::pair<long long, long long> count_symbol_errors(const Eigen::VectorXcd& estimate,
                                                    const Eigen::VectorXcd& truth);

}  // namespace lmimo
