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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <vector>

#include "lmimo/rng.hpp"

using lmimo::Rng;

TEST_CASE("identical seeds give identical streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.normal() == b.normal());
    CHECK(a.uniform() == b.uniform());
  }
}

TEST_CASE("different seeds diverge") {
  Rng a(1), b(2);
  int same = 0;
  for (int i = 0; i < 64; ++i)
    if (a.next_u64() == b.next_u64()) ++same;
  CHECK(same == 0);
}

TEST_CASE("substreams are stateless and order independent") {
  Rng parent(7);
  // consuming the parent must not change what children look like
  parent.next_u64();
  parent.normal();
  Rng child_a = parent.substream(3);
  Rng child_b = Rng(7).substream(3);
  for (int i = 0; i < 100; ++i) CHECK(child_a.next_u64() == child_b.next_u64());

  // distinct ids give distinct streams
  std::set<std::uint64_t> firsts;
  for (std::uint64_t id = 0; id < 256; ++id) firsts.insert(parent.substream(id).next_u64());
  CHECK(firsts.size() == 256);
}

TEST_CASE("uniform lies in [0,1) and has the right first moments") {
  Rng rng(123);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum_sq += u * u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(sum_sq / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));
}

TEST_CASE("normal moments") {
  Rng rng(99);
  const int n = 400000;
  double sum = 0.0, sum_sq = 0.0, sum_4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.normal();
    sum += g;
    sum_sq += g * g;
    sum_4 += g * g * g * g;
  }
  CHECK(std::abs(sum / n) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(sum_4 / n == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("uniform_int is in range and roughly uniform") {
  Rng rng(2024);
  const int n = 160000, k = 16;
  std::vector<int> counts(k, 0);
  for (int i = 0; i < n; ++i) {
    const int v = rng.uniform_int(k);
    REQUIRE(v >= 0);
    REQUIRE(v < k);
    ++counts[v];
  }
  for (int c : counts) CHECK(std::abs(c - n / k) < 600);  // ~6 sigma
  CHECK_THROWS_AS(rng.uniform_int(0), std::invalid_argument);
}
