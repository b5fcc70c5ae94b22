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

#include "lmimo/constellation.hpp"

namespace lmimo {

/// Exhaustive-search budget: K^(N_u) candidates at most.
inline constexpr long long kMaxMlCandidates = 1LL << 20;

/// Unquantized linear estimates, exposed so the equalizer outputs can be
/// checked against independent solves.
Eigen::VectorXcd zf_estimate(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h);
Eigen::VectorXcd mmse_estimate(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h,
                               double sigma0_sq);

/// Zero forcing: quantize(H^+ y). Falls back to the minimum-norm
/// least-squares solution when H is rank deficient.
Eigen::VectorXcd detect_zf(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h,
                           const Constellation& c);

/// Linear MMSE for unit-power symbols: quantize((H^H H + sigma0^2 I)^-1 H^H y).
Eigen::VectorXcd detect_mmse(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h,
                             double sigma0_sq, const Constellation& c);

/// Exhaustive maximum likelihood over the full symbol lattice, iterating in
/// canonical lexicographic order with a strict running minimum, so ties
/// resolve to the lexicographically smallest candidate. Rejects search
/// spaces above kMaxMlCandidates.
Eigen::VectorXcd detect_ml(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h,
                           const Constellation& c);

/// True when K^(n_users) fits the exhaustive-search budget.
bool ml_is_tractable(int order, int n_users);

}  // namespace lmimo
