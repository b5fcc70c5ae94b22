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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lmimo/channel.hpp"
#include "lmimo/constellation.hpp"
#include "lmimo/rng.hpp"
#include "lmimo/score.hpp"

namespace lmimo {

/// Strictly decreasing noise levels sigma_1 > ... > sigma_L > 0.
struct AnnealingSchedule {
  Eigen::VectorXd sigmas;
  int n_levels() const { return static_cast<int>(sigmas.size()); }
};

/// Geometric sequence with exact endpoints.
AnnealingSchedule make_schedule(double sigma_first, double sigma_last, int n_levels);

/// Sampler parameters. Defaults follow the reference configuration:
/// epsilon 3e-5, 70 steps per level, 20 levels from 1 to 0.01, 40 trajectories.
struct LangevinConfig {
  double epsilon = 3e-5;
  int steps_per_level = 70;
  AnnealingSchedule schedule;  // empty means make_schedule(1.0, 0.01, 20)
  int n_trajectories = 40;
  std::uint64_t seed = 0;

  const AnnealingSchedule& effective_schedule() const;
};

struct DetectionResult {
  Eigen::VectorXcd symbols;                     // length N_u, members of the alphabet
  double residual = 0.0;                        // ||y - H x_hat||^2 of the winner
  int trajectory_index = 0;
  std::vector<double> per_trajectory_residuals; // length M
};

/// A trajectory whose iterate left the admissible region; unit-power
/// constellations make such iterates unrecoverable.
struct DivergenceError : std::runtime_error {
  DivergenceError(int level, int step)
      : std::runtime_error("langevin trajectory diverged at level " + std::to_string(level) +
                           ", step " + std::to_string(step)),
        level(level),
        step(step) {}
  int level;
  int step;
};

/// Level-dependent diagonal step sizes of the annealed update. Entry j is
///   eps sigma_l^2 / sigma_last^2 (1 - sigma_l^2 s_j^2 / sigma0^2)  when sigma_l s_j <= sigma0,
///   eps / sigma_last^2 (sigma_l^2 - sigma0^2 / s_j^2)              otherwise.
/// Both branches vanish exactly at the boundary and never go negative.
Eigen::VectorXd step_size_diag(double sigma_l, const Eigen::VectorXd& singular_values,
                               double sigma0, double epsilon, double sigma_last);

/// One annealed Langevin pass. Initializes chi uniformly on [-1, 1], runs
/// steps_per_level updates at every level, carrying the iterate across
/// levels, and returns the final spectral iterate. Draw order is fixed:
/// 2 N_u init uniforms, then 2 N_u injected normals per step.
Eigen::VectorXd run_trajectory(const Eigen::VectorXd& eta, const ChannelRealization& chan,
                               const LangevinConfig& config, const Constellation& c, Rng& rng);

/// Full detector: M independent trajectories from substreams of config.seed,
/// each quantized to the alphabet, keeping the candidate with the smallest
/// complex residual ||y - H x_hat||^2. Trajectories may run on n_threads
/// threads; the result is bitwise-identical at any thread count.
DetectionResult detect(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& h, double sigma0_sq,
                       const LangevinConfig& config, const Constellation& c, int n_threads = 1);

}  // namespace lmimo
