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
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lmimo/baselines.hpp"
#include "lmimo/channel.hpp"
#include "lmimo/config.hpp"
#include "lmimo/constellation.hpp"
#include "lmimo/detector.hpp"
#include "lmimo/rng.hpp"
#include "lmimo/score.hpp"
#include "lmimo/sweep.hpp"

namespace py = pybind11;
using namespace lmimo;

PYBIND11_MODULE(lmimo, m) {
  m.doc() = "Massive MIMO detection via annealed Langevin sampling, with classical "
            "baselines and a seeded Monte-Carlo SER harness";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("substream", &Rng::substream, py::arg("id"))
      .def("uniform", py::overload_cast<>(&Rng::uniform))
      .def("normal", &Rng::normal)
      .def("uniform_int", &Rng::uniform_int, py::arg("n"))
      .def_property_readonly("seed", &Rng::seed);

  py::class_<Constellation>(m, "Constellation")
      .def_readonly("order", &Constellation::order)
      .def_readonly("pam_levels", &Constellation::pam_levels)
      .def_readonly("complex_points", &Constellation::complex_points)
      .def_readonly("average_power", &Constellation::average_power)
      .def("quantize", &Constellation::quantize, py::arg("point"))
      .def("quantize_index", &Constellation::quantize_index, py::arg("point"));

  m.def("make_qam", &make_qam, py::arg("order"));
  m.def("count_symbol_errors", &count_symbol_errors, py::arg("estimate"), py::arg("truth"));

  py::class_<ChannelParams>(m, "ChannelParams")
      .def(py::init([](int n_rx, int n_users, double rho) {
             return ChannelParams{n_rx, n_users, rho};
           }),
           py::arg("n_rx"), py::arg("n_users"), py::arg("rho") = 0.0)
      .def_readwrite("n_rx", &ChannelParams::n_rx)
      .def_readwrite("n_users", &ChannelParams::n_users)
      .def_readwrite("rho", &ChannelParams::rho);

  py::class_<ChannelRealization>(m, "ChannelRealization")
      .def_readonly("h_complex", &ChannelRealization::h_complex)
      .def_readonly("h_real", &ChannelRealization::h_real)
      .def_readonly("svd_u", &ChannelRealization::svd_u)
      .def_readonly("svd_v", &ChannelRealization::svd_v)
      .def_readonly("singular_values", &ChannelRealization::singular_values)
      .def_readonly("sigma0_sq", &ChannelRealization::sigma0_sq);

  m.def("exp_corr_matrix", &exp_corr_matrix, py::arg("n"), py::arg("rho"));
  m.def("sample_kronecker", &sample_kronecker, py::arg("params"), py::arg("rng"));
  m.def("sigma0_sq_from_snr", &sigma0_sq_from_snr, py::arg("snr_db"), py::arg("params"));
  m.def("sample_noise", &sample_noise, py::arg("n_rx"), py::arg("sigma0_sq"), py::arg("rng"));
  m.def("to_real_matrix", &to_real_matrix, py::arg("h"));
  m.def("to_real_vector", &to_real_vector, py::arg("v"));
  m.def("to_complex_vector", &to_complex_vector, py::arg("v"));
  m.def("precompute_spectral", &precompute_spectral, py::arg("h"), py::arg("sigma0_sq"));
  m.def("spectral_observation", &spectral_observation, py::arg("chan"), py::arg("y"));

  py::class_<SpectralState>(m, "SpectralState")
      .def(py::init([](Eigen::VectorXd chi, Eigen::VectorXd eta, int level_index) {
             return SpectralState{std::move(chi), std::move(eta), level_index};
           }),
           py::arg("chi"), py::arg("eta"), py::arg("level_index") = 1)
      .def_readwrite("chi", &SpectralState::chi)
      .def_readwrite("eta", &SpectralState::eta)
      .def_readwrite("level_index", &SpectralState::level_index);

  m.def("likelihood_score", &likelihood_score, py::arg("state"), py::arg("chan"),
        py::arg("sigma_l"));
  m.def("prior_denoiser", &prior_denoiser, py::arg("x_tilde"), py::arg("sigma_l"), py::arg("c"));
  m.def("prior_score", &prior_score, py::arg("x_tilde"), py::arg("sigma_l"), py::arg("c"));
  m.def("posterior_score", &posterior_score, py::arg("state"), py::arg("chan"),
        py::arg("sigma_l"), py::arg("c"));

  py::class_<AnnealingSchedule>(m, "AnnealingSchedule")
      .def_readonly("sigmas", &AnnealingSchedule::sigmas)
      .def_property_readonly("n_levels", &AnnealingSchedule::n_levels);

  m.def("make_schedule", &make_schedule, py::arg("sigma_first"), py::arg("sigma_last"),
        py::arg("n_levels"));

  py::class_<LangevinConfig>(m, "LangevinConfig")
      .def(py::init<>())
      .def_readwrite("epsilon", &LangevinConfig::epsilon)
      .def_readwrite("steps_per_level", &LangevinConfig::steps_per_level)
      .def_readwrite("schedule", &LangevinConfig::schedule)
      .def_readwrite("n_trajectories", &LangevinConfig::n_trajectories)
      .def_readwrite("seed", &LangevinConfig::seed);

  py::class_<DetectionResult>(m, "DetectionResult")
      .def_readonly("symbols", &DetectionResult::symbols)
      .def_readonly("residual", &DetectionResult::residual)
      .def_readonly("trajectory_index", &DetectionResult::trajectory_index)
      .def_readonly("per_trajectory_residuals", &DetectionResult::per_trajectory_residuals);

  m.def("step_size_diag", &step_size_diag, py::arg("sigma_l"), py::arg("singular_values"),
        py::arg("sigma0"), py::arg("epsilon"), py::arg("sigma_last"));
  m.def("run_trajectory", &run_trajectory, py::arg("eta"), py::arg("chan"), py::arg("config"),
        py::arg("c"), py::arg("rng"));
  m.def("detect", &detect, py::arg("y"), py::arg("h"), py::arg("sigma0_sq"), py::arg("config"),
        py::arg("c"), py::arg("n_threads") = 1,
        py::call_guard<py::gil_scoped_release>());

  m.def("detect_zf", &detect_zf, py::arg("y"), py::arg("h"), py::arg("c"));
  m.def("detect_mmse", &detect_mmse, py::arg("y"), py::arg("h"), py::arg("sigma0_sq"),
        py::arg("c"));
  m.def("detect_ml", &detect_ml, py::arg("y"), py::arg("h"), py::arg("c"));
  m.def("zf_estimate", &zf_estimate, py::arg("y"), py::arg("h"));
  m.def("mmse_estimate", &mmse_estimate, py::arg("y"), py::arg("h"), py::arg("sigma0_sq"));
  m.def("ml_is_tractable", &ml_is_tractable, py::arg("order"), py::arg("n_users"));

  py::class_<SerRow>(m, "SerRow")
      .def_readonly("detector", &SerRow::detector)
      .def_readonly("snr_db", &SerRow::snr_db)
      .def_readonly("n_symbols", &SerRow::n_symbols)
      .def_readonly("n_symbol_errors", &SerRow::n_symbol_errors)
      .def_readonly("ser", &SerRow::ser)
      .def_readonly("ci_low", &SerRow::ci_low)
      .def_readonly("ci_high", &SerRow::ci_high)
      .def_readonly("wall_time_s", &SerRow::wall_time_s)
      .def_readonly("n_excluded_trials", &SerRow::n_excluded_trials);

  py::class_<SerReport>(m, "SerReport")
      .def_readonly("rows", &SerReport::rows)
      .def_readonly("n_trials_per_point", &SerReport::n_trials_per_point)
      .def("max_exclusion_fraction", &SerReport::max_exclusion_fraction);

  py::class_<SweepConfig>(m, "SweepConfig")
      .def(py::init<>())
      .def_readwrite("channel", &SweepConfig::channel)
      .def_readwrite("modulation_order", &SweepConfig::modulation_order)
      .def_readwrite("snr_db_list", &SweepConfig::snr_db_list)
      .def_readwrite("detectors", &SweepConfig::detectors)
      .def_readwrite("langevin", &SweepConfig::langevin)
      .def_readwrite("n_trials", &SweepConfig::n_trials)
      .def_readwrite("master_seed", &SweepConfig::master_seed)
      .def_readwrite("output_path", &SweepConfig::output_path)
      .def_readwrite("n_threads", &SweepConfig::n_threads)
      .def_readwrite("measure_time", &SweepConfig::measure_time);

  m.def("wilson_interval", &wilson_interval, py::arg("errors"), py::arg("total"),
        py::arg("z") = 1.959963984540054);
  m.def("run_sweep", &run_sweep, py::arg("config"), py::call_guard<py::gil_scoped_release>());
  m.def("to_csv", &to_csv, py::arg("report"));
  m.def("emit_csv", &emit_csv, py::arg("report"), py::arg("path"));
  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("parse_config_file", &parse_config_file, py::arg("path"));
}
