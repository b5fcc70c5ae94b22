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

#include <array>
#include <cstdint>

namespace lmimo {

/// Deterministic random stream with stateless substream derivation.
///
/// The core generator is xoshiro256++ seeded through a SplitMix64 expansion
/// of a 64-bit key. Substreams are derived from (key, stream id) only, never
/// from generator state, so a parent can hand out children in any order and
/// from any thread and always obtain the same streams. This is what makes
/// trial- and trajectory-parallel runs bitwise-reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Child stream fully determined by (this stream's seed, id).
  Rng substream(std::uint64_t id) const;

  std::uint64_t next_u64();

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform();

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller. Pairs are cached, so draw counts of
  /// consecutive calls alternate between two and zero raw outputs.
  double normal();

  /// Uniform integer in {0, ..., n-1}, n >= 1.
  int uniform_int(int n);

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lmimo
