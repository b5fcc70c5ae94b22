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

// Command-line front end: `sweep` runs a Monte-Carlo SER sweep from a JSON
// config, `detect` decodes a single instance file, `selftest` replays the
// core invariants. Exit codes: 0 success, 1 config error, 2 runtime error,
// 3 excessive trial exclusions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lmimo/baselines.hpp"
#include "lmimo/channel.hpp"
#include "lmimo/config.hpp"
#include "lmimo/constellation.hpp"
#include "lmimo/detector.hpp"
#include "lmimo/rng.hpp"
#include "lmimo/score.hpp"
#include "lmimo/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;
constexpr int kExitExcessiveExclusions = 3;
constexpr double kMaxExclusionFraction = 1e-3;

struct Instance {
  Eigen::MatrixXcd h;
  Eigen::VectorXcd y;
  double sigma0_sq = 0.0;
  int order = 4;
};

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& re, const nlohmann::json& im,
                                  const std::string& name) {
  if (!re.is_array() || !im.is_array() || re.empty() || re.size() != im.size())
    throw lmimo::ConfigError(name + ": expected matching nonempty arrays");
  const size_t rows = re.size();
  const size_t cols = re[0].size();
  Eigen::MatrixXcd m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!re[i].is_array() || re[i].size() != cols || im[i].size() != cols)
      throw lmimo::ConfigError(name + ": ragged rows");
    for (size_t j = 0; j < cols; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::complex<double>(re[i][j].get<double>(), im[i][j].get<double>());
  }
  return m;
}

Instance load_instance(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw lmimo::ConfigError("cannot read instance file \"" + path + "\"");
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(file);
  } catch (const nlohmann::json::parse_error& e) {
    throw lmimo::ConfigError(std::string("instance file is not valid JSON: ") + e.what());
  }
  for (const char* key : {"h_re", "h_im", "y_re", "y_im", "sigma0_sq", "order"})
    if (!root.contains(key))
      throw lmimo::ConfigError(std::string("instance: missing key \"") + key + "\"");

  Instance inst;
  inst.h = matrix_from_json(root["h_re"], root["h_im"], "instance.h");
  const nlohmann::json& yre = root["y_re"];
  const nlohmann::json& yim = root["y_im"];
  if (!yre.is_array() || yre.size() != yim.size())
    throw lmimo::ConfigError("instance.y: expected matching arrays");
  inst.y.resize(static_cast<Eigen::Index>(yre.size()));
  for (size_t i = 0; i < yre.size(); ++i)
    inst.y[static_cast<Eigen::Index>(i)] =
        std::complex<double>(yre[i].get<double>(), yim[i].get<double>());
  inst.sigma0_sq = root["sigma0_sq"].get<double>();
  inst.order = root["order"].get<int>();
  return inst;
}

int run_sweep_command(const std::string& config_path, std::optional<std::uint64_t> seed,
                      std::optional<std::string> output, int threads,
                      const std::vector<std::string>& detectors) {
  lmimo::SweepConfig config = lmimo::parse_config_file(config_path);
  if (seed) config.master_seed = *seed;
  if (output) config.output_path = *output;
  if (!detectors.empty()) config.detectors = detectors;
  config.n_threads = threads;
  lmimo::validate(config);
  if (config.output_path.empty())
    throw lmimo::ConfigError("sweep.output_path: set it in the config or pass --output");

  const lmimo::SerReport report = lmimo::run_sweep(config);
  lmimo::emit_csv(report, config.output_path);
  std::cerr << "wrote " << config.output_path << " (" << report.rows.size() << " rows)\n";

  if (report.max_exclusion_fraction() > kMaxExclusionFraction) {
    std::cerr << "warning: " << 100.0 * report.max_exclusion_fraction()
              << "% of trials were excluded for at least one detector\n";
    return kExitExcessiveExclusions;
  }
  return kExitOk;
}

int run_detect_command(const std::string& instance_path, const std::string& detector,
                       std::uint64_t seed, int threads, const std::string& config_path) {
  const Instance inst = load_instance(instance_path);

  lmimo::LangevinConfig langevin;
  int order = inst.order;
  if (!config_path.empty()) {
    const lmimo::SweepConfig config = lmimo::parse_config_file(config_path);
    langevin = config.langevin;
    order = config.modulation_order;
  }
  langevin.seed = seed;
  const lmimo::Constellation c = lmimo::make_qam(order);

  Eigen::VectorXcd symbols;
  if (detector == "zf") {
    symbols = lmimo::detect_zf(inst.y, inst.h, c);
  } else if (detector == "mmse") {
    symbols = lmimo::detect_mmse(inst.y, inst.h, inst.sigma0_sq, c);
  } else if (detector == "ml") {
    symbols = lmimo::detect_ml(inst.y, inst.h, c);
  } else if (detector == "langevin") {
    symbols = lmimo::detect(inst.y, inst.h, inst.sigma0_sq, langevin, c, threads).symbols;
  } else {
    throw lmimo::ConfigError("unknown detector \"" + detector + "\"");
  }

  for (Eigen::Index j = 0; j < symbols.size(); ++j) {
    std::printf("%.17g %.17g\n", symbols[j].real(), symbols[j].imag());
  }
  return kExitOk;
}

// ---- selftest ---------------------------------------------------------------

bool report_check(const char* name, bool ok) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAIL", name);
  return ok;
}

double mixture_log_density(double x, const Eigen::VectorXd& levels, double sig_eff_sq) {
  double max_t = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < levels.size(); ++k) {
    const double d = x - levels[k];
    max_t = std::max(max_t, -d * d / (2.0 * sig_eff_sq));
  }
  double sum = 0.0;
  for (Eigen::Index k = 0; k < levels.size(); ++k) {
    const double d = x - levels[k];
    sum += std::exp(-d * d / (2.0 * sig_eff_sq) - max_t);
  }
  return max_t + std::log(sum);
}

bool selftest_constellation() {
  lmimo::Rng rng(1);
  for (int order : {4, 16, 64, 256}) {
    const lmimo::Constellation c = lmimo::make_qam(order);
    if (std::abs(c.average_power - 1.0) > 1e-12) return false;
    for (int rep = 0; rep < 500; ++rep) {
      const std::complex<double> p(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
      int best = 0;
      double best_dist = std::norm(p - c.complex_points[0]);
      for (int k = 1; k < c.order; ++k) {
        const double d = std::norm(p - c.complex_points[k]);
        if (d < best_dist) {
          best_dist = d;
          best = k;
        }
      }
      if (c.quantize_index(p) != best) return false;
      if (c.quantize(c.quantize(p)) != c.quantize(p)) return false;
    }
  }
  return true;
}

bool selftest_schedule_and_steps() {
  const lmimo::AnnealingSchedule sched = lmimo::make_schedule(1.0, 0.01, 20);
  if (sched.sigmas[0] != 1.0 || sched.sigmas[19] != 0.01) return false;
  for (int l = 1; l < 20; ++l)
    if (!(sched.sigmas[l] < sched.sigmas[l - 1])) return false;

  lmimo::Rng rng(2);
  for (int rep = 0; rep < 2000; ++rep) {
    Eigen::VectorXd s(1);
    s << rng.uniform(0.0, 3.0);
    const double sigma_l = std::exp(rng.uniform(std::log(1e-3), std::log(2.0)));
    const double sigma0 = std::exp(rng.uniform(std::log(1e-3), std::log(2.0)));
    if (lmimo::step_size_diag(sigma_l, s, sigma0, 3e-5, 0.01)[0] < 0.0) return false;
  }
  Eigen::VectorXd s(1);
  s << 1.5;
  return lmimo::step_size_diag(0.4, s, 0.4 * 1.5, 3e-5, 0.01)[0] == 0.0;
}

bool selftest_tweedie() {
  lmimo::Rng rng(3);
  const lmimo::Constellation c = lmimo::make_qam(16);
  for (int rep = 0; rep < 200; ++rep) {
    const double sig_eff = rng.uniform(0.05, 1.0);
    const double sigma_l = sig_eff * std::sqrt(2.0);
    Eigen::VectorXd x(1);
    x << rng.uniform(-2.0, 2.0);
    const double via_denoiser = lmimo::prior_score(x, sigma_l, c)[0];

    double max_t = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < c.pam_size(); ++k) {
      const double d = x[0] - c.pam_levels[k];
      max_t = std::max(max_t, -d * d / (2.0 * sig_eff * sig_eff));
    }
    double den = 0.0, num = 0.0;
    for (int k = 0; k < c.pam_size(); ++k) {
      const double d = x[0] - c.pam_levels[k];
      const double w = std::exp(-d * d / (2.0 * sig_eff * sig_eff) - max_t);
      den += w;
      num += w * (c.pam_levels[k] - x[0]) / (sig_eff * sig_eff);
    }
    if (std::abs(via_denoiser - num / den) > 1e-8 * std::max(1.0, std::abs(num / den)))
      return false;
  }
  return true;
}

bool selftest_score_gradients() {
  lmimo::Rng rng(4);
  const lmimo::Constellation c = lmimo::make_qam(16);
  const double h = 1e-6;

  // prior score against central differences of the mixture log density
  for (int rep = 0; rep < 40; ++rep) {
    const double sig_eff = rep % 2 == 0 ? 0.1 : 0.5;
    const double sigma_l = sig_eff * std::sqrt(2.0);
    Eigen::VectorXd x(1);
    x << rng.uniform(-1.5, 1.5);
    const double score = lmimo::prior_score(x, sigma_l, c)[0];
    const double fd = (mixture_log_density(x[0] + h, c.pam_levels, sig_eff * sig_eff) -
                       mixture_log_density(x[0] - h, c.pam_levels, sig_eff * sig_eff)) /
                      (2.0 * h);
    if (std::abs(score - fd) > 1e-4 * std::max(1.0, std::abs(fd))) return false;
  }

  // likelihood score against central differences of its gaussian log density
  for (int rep = 0; rep < 40; ++rep) {
    Eigen::MatrixXcd hm(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) hm(i, j) = std::complex<double>(rng.normal(), rng.normal());
    const double sigma0_sq = 0.3;
    const lmimo::ChannelRealization chan = lmimo::precompute_spectral(hm, sigma0_sq);
    double sigma_l = 0.0;
    bool separated = false;
    for (int attempt = 0; attempt < 50 && !separated; ++attempt) {
      sigma_l = std::exp(rng.uniform(std::log(0.05), std::log(2.0)));
      separated = true;
      for (int j = 0; j < 4; ++j) {
        const double s = chan.singular_values[j];
        if (std::abs(sigma0_sq - sigma_l * sigma_l * s * s) < 5e-2 * sigma0_sq)
          separated = false;
      }
    }
    if (!separated) continue;
    lmimo::SpectralState state;
    state.chi = Eigen::VectorXd::NullaryExpr(4, [&](Eigen::Index) { return rng.normal(); });
    state.eta = Eigen::VectorXd::NullaryExpr(4, [&](Eigen::Index) { return rng.normal(); });
    const Eigen::VectorXd score = lmimo::likelihood_score(state, chan, sigma_l);
    for (int j = 0; j < 4; ++j) {
      const double s = chan.singular_values[j];
      const double d = std::abs(sigma0_sq - sigma_l * sigma_l * s * s);
      auto logp = [&](double chi_j) {
        const double r = state.eta[j] - s * chi_j;
        return -0.5 * r * r / d;
      };
      const double fd = (logp(state.chi[j] + h) - logp(state.chi[j] - h)) / (2.0 * h);
      if (std::abs(score[j] - fd) > 1e-5 * std::max(1.0, std::abs(fd))) return false;
    }
  }
  return true;
}

bool selftest_determinism() {
  const lmimo::Constellation c = lmimo::make_qam(4);
  lmimo::Rng rng(5);
  Eigen::MatrixXcd h(4, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) h(i, j) = std::complex<double>(rng.normal(), rng.normal());
  Eigen::VectorXcd y(4);
  for (int i = 0; i < 4; ++i) y[i] = std::complex<double>(rng.normal(), rng.normal());

  lmimo::LangevinConfig config;
  config.steps_per_level = 10;
  config.schedule = lmimo::make_schedule(1.0, 0.01, 5);
  config.n_trajectories = 4;
  config.seed = 99;

  const lmimo::DetectionResult a = lmimo::detect(y, h, 0.05, config, c, 1);
  const lmimo::DetectionResult b = lmimo::detect(y, h, 0.05, config, c, 3);
  if (a.trajectory_index != b.trajectory_index) return false;
  if (a.residual != b.residual) return false;
  for (int j = 0; j < 2; ++j)
    if (a.symbols[j] != b.symbols[j]) return false;
  return true;
}

bool selftest_ml_dominance() {
  const lmimo::Constellation c = lmimo::make_qam(4);
  lmimo::Rng rng(6);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::MatrixXcd h(4, 2);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 2; ++j) h(i, j) = std::complex<double>(rng.normal(), rng.normal());
    Eigen::VectorXcd x(2);
    for (int j = 0; j < 2; ++j) x[j] = c.complex_points[rng.uniform_int(4)];
    lmimo::Rng noise(rep);
    const Eigen::VectorXcd y = h * x + lmimo::sample_noise(4, 0.1, noise);
    const double ml = (y - h * lmimo::detect_ml(y, h, c)).squaredNorm();
    if (ml > (y - h * lmimo::detect_zf(y, h, c)).squaredNorm() + 1e-12) return false;
    if (ml > (y - h * lmimo::detect_mmse(y, h, 0.1, c)).squaredNorm() + 1e-12) return false;
  }
  return true;
}

int run_selftest_command() {
  bool all = true;
  all &= report_check("constellation normalization and quantization", selftest_constellation());
  all &= report_check("annealing schedule and step sizes", selftest_schedule_and_steps());
  all &= report_check("tweedie identity (two routes)", selftest_tweedie());
  all &= report_check("score gradients vs finite differences", selftest_score_gradients());
  all &= report_check("detector determinism across thread counts", selftest_determinism());
  all &= report_check("ml residual dominance", selftest_ml_dominance());
  std::printf("%s\n", all ? "selftest passed" : "selftest FAILED");
  return all ? kExitOk : kExitRuntimeError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"annealed-Langevin MIMO detection toolkit"};
  app.require_subcommand(1);

  // sweep
  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> output_override;
  int threads = 1;
  std::vector<std::string> detector_override;

  CLI::App* sweep = app.add_subcommand("sweep", "run a Monte-Carlo SER sweep from a config file");
  sweep->add_option("--config", config_path, "JSON sweep configuration")->required();
  sweep->add_option("--seed", seed_override, "override sweep.master_seed");
  sweep->add_option("--output", output_override, "override sweep.output_path");
  sweep->add_option("--threads", threads, "trial-level worker threads")->default_val(1);
  sweep->add_option("--detectors", detector_override, "override sweep.detectors")
      ->delimiter(',');

  // detect
  std::string instance_path;
  std::string detector = "langevin";
  std::uint64_t detect_seed = 0;
  int detect_threads = 1;
  std::string detect_config;

  CLI::App* detect =
      app.add_subcommand("detect", "decode one instance file and print the symbols");
  detect->add_option("--instance", instance_path, "JSON instance (h, y, sigma0_sq, order)")
      ->required();
  detect->add_option("--detector", detector, "zf | mmse | ml | langevin")
      ->default_val("langevin");
  detect->add_option("--seed", detect_seed, "langevin seed")->default_val(0);
  detect->add_option("--threads", detect_threads, "trajectory threads")->default_val(1);
  detect->add_option("--config", detect_config,
                     "optional sweep config supplying langevin parameters and order");

  // selftest
  CLI::App* selftest = app.add_subcommand("selftest", "run the built-in invariant checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed())
      return run_sweep_command(config_path, seed_override, output_override, threads,
                               detector_override);
    if (detect->parsed())
      return run_detect_command(instance_path, detector, detect_seed, detect_threads,
                                detect_config);
    if (selftest->parsed()) return run_selftest_command();
  } catch (const lmimo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
  return kExitOk;
}
