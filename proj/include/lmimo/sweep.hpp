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
#include <utility>
#include <vector>

#include "lmimo/channel.hpp"
#include "lmimo/detector.hpp"

namespace lmimo {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Known detector identifiers: "zf", "mmse", "ml", "langevin".
const std::vector<std::string>& known_detectors();

struct SweepConfig {
  ChannelParams channel;
  int modulation_order = 4;
  std::vector<double> snr_db_list;        // emitted ascending
  std::vector<std::string> detectors;
  LangevinConfig langevin;
  long long n_trials = 1;                 // transmitted vectors per SNR point
  std::uint64_t master_seed = 0;
  std::string output_path;
  int n_threads = 1;                      // trial-level parallelism
  bool measure_time = true;               // false pins wall_time_s to 0 for
                                          // reproducibility comparisons
};

/// Throws ConfigError (see config.hpp) on any invariant violation.
void validate(const SweepConfig& config);

struct SerRow {
  std::string detector;
  double snr_db = 0.0;
  long long n_symbols = 0;
  long long n_symbol_errors = 0;
  double ser = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  double wall_time_s = 0.0;
  long long n_excluded_trials = 0;  // detector failures; not part of the CSV
};

struct SerReport {
  std::vector<SerRow> rows;  // detector-major, SNR ascending
  long long n_trials_per_point = 0;

  double max_exclusion_fraction() const;
};

/// 95% Wilson score interval for errors out of total; z is the normal
/// quantile. Valid at zero error counts, where the lower bound is 0.
std::pair<double, double> wilson_interval(long long errors, long long total,
                                          double z = 1.959963984540054);

/// Seeded Monte-Carlo SER sweep. Every trial draws a fresh channel, a
/// uniform symbol vector and noise from substreams of master_seed, then runs
/// all configured detectors on the identical instance. Counts are integer
/// sums over trials, so the report is identical at any thread count.
SerReport run_sweep(const SweepConfig& config);

std::string to_csv(const SerReport& report);

/// Writes to_csv(report) to path; throws on I/O failure.
void emit_csv(const SerReport& report, const std::string& path);

/// Parses a CSV produced by to_csv back into rows (numeric fields only).
/// Used by tests and the round-trip check.
SerReport parse_csv(const std::string& text);

}  // namespace lmimo
