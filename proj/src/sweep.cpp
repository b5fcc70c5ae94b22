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
#include "lmimo/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "lmimo/baselines.hpp"

namespace lmimo {
namespace {

constexpr const char* kCsvHeader =
    "detector,snr_db,n_symbols,n_symbol_errors,ser,ci_low,ci_high,wall_time_s";

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

struct DetectorAccumulator {
  long long errors = 0;
  long long symbols = 0;
  long long excluded_trials = 0;
  double seconds = 0.0;

  void merge(const DetectorAccumulator& other) {
    errors += other.errors;
    symbols += other.symbols;
    excluded_trials += other.excluded_trials;
    seconds += other.seconds;
  }
};

Eigen::VectorXcd run_detector(const std::string& name, const Eigen::VectorXcd& y,
                              const Eigen::MatrixXcd& h, double sigma0_sq,
                              const LangevinConfig& langevin, const Constellation& c) {
  if (name == "zf") return detect_zf(y, h, c);
  if (name == "mmse") return detect_mmse(y, h, sigma0_sq, c);
  if (name == "ml") return detect_ml(y, h, c);
  if (name == "langevin") return detect(y, h, sigma0_sq, langevin, c).symbols;
  throw ConfigError("unknown detector \"" + name + "\"");
}

}  // namespace

const std::vector<std::string>& known_detectors() {
  static const std::vector<std::string> kNames = {"zf", "mmse", "ml", "langevin"};
  return kNames;
}

void validate(const SweepConfig& config) {
  if (config.channel.n_rx < 1) throw ConfigError("channel.n_rx: must be >= 1");
  if (config.channel.n_users < 1) throw ConfigError("channel.n_users: must be >= 1");
  if (!(config.channel.rho >= 0.0 && config.channel.rho < 1.0))
    throw ConfigError("channel.rho: must lie in [0, 1)");
  switch (config.modulation_order) {
    case 4: case 16: case 64: case 256: break;
    default:
      throw ConfigError("modulation.order: must be one of 4, 16, 64, 256");
  }
  if (config.snr_db_list.empty()) throw ConfigError("sweep.snr_db_list: must be nonempty");
  for (double snr : config.snr_db_list)
    if (!std::isfinite(snr)) throw ConfigError("sweep.snr_db_list: entries must be finite");
  if (config.detectors.empty()) throw ConfigError("sweep.detectors: must be nonempty");
  for (const std::string& d : config.detectors) {
    if (std::find(known_detectors().begin(), known_detectors().end(), d) ==
        known_detectors().end())
      throw ConfigError("sweep.detectors: unknown detector \"" + d + "\"");
  }
  const bool wants_ml =
      std::find(config.detectors.begin(), config.detectors.end(), "ml") != config.detectors.end();
  if (wants_ml && !ml_is_tractable(config.modulation_order, config.channel.n_users))
    throw ConfigError("sweep.detectors: ml is intractable for this system (K^n_users exceeds " +
                      std::to_string(kMaxMlCandidates) + " candidates)");
  if (config.n_trials < 1) throw ConfigError("sweep.n_trials: must be >= 1");
  if (config.n_threads < 1) throw ConfigError("threads: must be >= 1");
  if (!(config.langevin.epsilon >= 0.0)) throw ConfigError("langevin.epsilon: must be >= 0");
  if (config.langevin.steps_per_level < 1)
    throw ConfigError("langevin.steps_per_level: must be >= 1");
  if (config.langevin.n_trajectories < 1)
    throw ConfigError("langevin.n_trajectories: must be >= 1");
  const AnnealingSchedule& sched = config.langevin.effective_schedule();
  for (int l = 1; l < sched.n_levels(); ++l)
    if (!(sched.sigmas[l] < sched.sigmas[l - 1]) || !(sched.sigmas[l] > 0.0))
      throw ConfigError("langevin schedule: must be strictly decreasing and positive");
}

double SerReport::max_exclusion_fraction() const {
  if (n_trials_per_point <= 0) return 0.0;
  double worst = 0.0;
  for (const SerRow& row : rows)
    worst = std::max(worst, static_cast<double>(row.n_excluded_trials) /
                                static_cast<double>(n_trials_per_point));
  return worst;
}

std::pair<double, double> wilson_interval(long long errors, long long total, double z) {
  if (total < 0 || errors < 0 || errors > total)
    throw std::invalid_argument("wilson_interval: need 0 <= errors <= total");
  if (total == 0) return {0.0, 1.0};
  const double n = static_cast<double>(total);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  // roundoff can push the bounds a few ulps past p; the interval must
  // bracket the point estimate
  const double low = std::min(p, std::max(0.0, center - half));
  const double high = std::max(p, std::min(1.0, center + half));
  return {low, high};
}

SerReport run_sweep(const SweepConfig& config) {
  validate(config);

  const Constellation c = make_qam(config.modulation_order);
  const Eigen::MatrixXd sqrt_rx =
      psd_sqrt(exp_corr_matrix(config.channel.n_rx, config.channel.rho));
  const Eigen::MatrixXd sqrt_user =
      psd_sqrt(exp_corr_matrix(config.channel.n_users, config.channel.rho));

  std::vector<double> snrs = config.snr_db_list;
  std::sort(snrs.begin(), snrs.end());

  const int n_det = static_cast<int>(config.detectors.size());
  const Rng master(config.master_seed);
  const int n_users = config.channel.n_users;

  // accumulators indexed [snr][detector]
  std::vector<std::vector<DetectorAccumulator>> acc(
      snrs.size(), std::vector<DetectorAccumulator>(static_cast<size_t>(n_det)));

  for (size_t si = 0; si < snrs.size(); ++si) {
    const double sigma0_sq = sigma0_sq_from_snr(snrs[si], config.channel);
    const Rng snr_rng = master.substream(static_cast<std::uint64_t>(si));

    const int workers =
        static_cast<int>(std::min<long long>(config.n_threads, config.n_trials));
    std::atomic<long long> next_trial{0};
    std::vector<std::vector<DetectorAccumulator>> locals(
        static_cast<size_t>(workers), std::vector<DetectorAccumulator>(static_cast<size_t>(n_det)));
    std::vector<std::exception_ptr> worker_failure(static_cast<size_t>(workers));

    auto work = [&](int w) {
      try {
        std::vector<DetectorAccumulator>& local = locals[static_cast<size_t>(w)];
        Eigen::VectorXcd x(n_users);
        while (true) {
          const long long trial = next_trial.fetch_add(1, std::memory_order_relaxed);
          if (trial >= config.n_trials) break;

          // All randomness for a trial flows from a stateless substream, so
          // results do not depend on which worker picks the trial up.
          const Rng trial_rng = snr_rng.substream(static_cast<std::uint64_t>(trial));
          Rng rng_h = trial_rng.substream(0);
          Rng rng_x = trial_rng.substream(1);
          Rng rng_z = trial_rng.substream(2);

          const Eigen::MatrixXcd h =
              sample_kronecker_with(sqrt_rx, sqrt_user, config.channel.n_rx, rng_h);
          for (int j = 0; j < n_users; ++j)
            x[j] = c.complex_points[rng_x.uniform_int(c.order)];
          const Eigen::VectorXcd z = sample_noise(config.channel.n_rx, sigma0_sq, rng_z);
          const Eigen::VectorXcd y = h * x + z;

          LangevinConfig langevin = config.langevin;
          langevin.seed = trial_rng.substream(3).seed();

          for (int d = 0; d < n_det; ++d) {
            const auto t0 = std::chrono::steady_clock::now();
            try {
              const Eigen::VectorXcd estimate = run_detector(
                  config.detectors[static_cast<size_t>(d)], y, h, sigma0_sq, langevin, c);
              const auto [errors, total] = count_symbol_errors(estimate, x);
              local[static_cast<size_t>(d)].errors += errors;
              local[static_cast<size_t>(d)].symbols += total;
            } catch (const DivergenceError&) {
              local[static_cast<size_t>(d)].excluded_trials += 1;
            }
            if (config.measure_time) {
              const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
              local[static_cast<size_t>(d)].seconds += dt.count();
            }
          }
        }
      } catch (...) {
        worker_failure[static_cast<size_t>(w)] = std::current_exception();
      }
    };

    if (workers <= 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<size_t>(workers));
      for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& th : pool) th.join();
    }
    for (int w = 0; w < workers; ++w)
      if (worker_failure[static_cast<size_t>(w)])
        std::rethrow_exception(worker_failure[static_cast<size_t>(w)]);

    for (int w = 0; w < workers; ++w)
      for (int d = 0; d < n_det; ++d)
        acc[si][static_cast<size_t>(d)].merge(locals[static_cast<size_t>(w)][static_cast<size_t>(d)]);
  }

  SerReport report;
  report.n_trials_per_point = config.n_trials;
  for (int d = 0; d < n_det; ++d) {
    for (size_t si = 0; si < snrs.size(); ++si) {
      const DetectorAccumulator& a = acc[si][static_cast<size_t>(d)];
      SerRow row;
      row.detector = config.detectors[static_cast<size_t>(d)];
      row.snr_db = snrs[si];
      row.n_symbols = a.symbols;
      row.n_symbol_errors = a.errors;
      row.ser = a.symbols > 0 ? static_cast<double>(a.errors) / static_cast<double>(a.symbols)
                              : 0.0;
      std::tie(row.ci_low, row.ci_high) = wilson_interval(a.errors, a.symbols);
      row.wall_time_s = a.seconds;
      row.n_excluded_trials = a.excluded_trials;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string to_csv(const SerReport& report) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const SerRow& row : report.rows) {
    out += row.detector;
    out += ',';
    out += format_number(row.snr_db);
    out += ',';
    out += std::to_string(row.n_symbols);
    out += ',';
    out += std::to_string(row.n_symbol_errors);
    out += ',';
    out += format_number(row.ser);
    out += ',';
    out += format_number(row.ci_low);
    out += ',';
    out += format_number(row.ci_high);
    out += ',';
    out += format_number(row.wall_time_s);
    out += '\n';
  }
  return out;
}

void emit_csv(const SerReport& report, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("emit_csv: cannot open \"" + path + "\" for writing");
  file << to_csv(report);
  file.flush();
  if (!file) throw std::runtime_error("emit_csv: write to \"" + path + "\" failed");
}

SerReport parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("parse_csv: bad or missing header");

  SerReport report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    SerRow row;
    std::getline(fields, row.detector, ',');
    auto next_field = [&]() {
      if (!std::getline(fields, field, ',')) throw std::runtime_error("parse_csv: short row");
      return field;
    };
    row.snr_db = std::stod(next_field());
    row.n_symbols = std::stoll(next_field());
    row.n_symbol_errors = std::stoll(next_field());
    row.ser = std::stod(next_field());
    row.ci_low = std::stod(next_field());
    row.ci_high = std::stod(next_field());
    row.wall_time_s = std::stod(next_field());
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace lmimo
