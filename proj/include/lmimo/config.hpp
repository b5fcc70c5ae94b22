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

#include <string>

#include "lmimo/sweep.hpp"

namespace lmimo {

/// Parses a JSON sweep configuration with sections channel / modulation /
/// langevin / sweep. Unknown keys, type errors, and invariant violations are
/// reported with the offending key path. Langevin keys omitted from the file
/// fall back to the defaults (epsilon 3e-5, 70 steps, 20 levels from 1 to
/// 0.01, 40 trajectories).
SweepConfig parse_config(const std::string& text);

/// Convenience wrapper: reads the file and parses it.
SweepConfig parse_config_file(const std::string& path);

}  // namespace lmimo
