// Copyright 2026 The rampmatch Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "doctest.h"
#include "rampmatch/model.hpp"
#include "rampmatch/pwl.hpp"

namespace rampmatch {
namespace {

TEST_CASE("uniform breakpoints cover the interval") {
  const auto xs = uniform_breakpoints(0.0, 1.0, 0.1);
  REQUIRE(xs.size() == 11);
  CHECK(xs.front() == 0.0);
  CHECK(xs.back() == 1.0);
  for (std::size_t i = 1; i < xs.size(); ++i) CHECK(xs[i] > xs[i - 1]);
  // A spacing that does not divide the range still ends at hi.
  const auto ys = uniform_breakpoints(0.0, 1.0, 0.3);
  CHECK(ys.back() == 1.0);
  for (std::size_t i = 1; i < ys.size(); ++i) {
    CHECK(ys[i] - ys[i - 1] <= 0.3 + 1e-12);
  }
  CHECK_THROWS_AS(uniform_breakpoints(0.0, 0.05, 0.1), Error);
  CHECK_THROWS_AS(uniform_breakpoints(0.0, 1.0, 0.0), Error);
}

TEST_CASE("interpolation error of x - b x^2 stays within b delta^2 / 4") {
  for (double b : {0.1, 0.5, 1.0}) {
    for (double delta : {0.1, 0.05, 0.3}) {
      CAPTURE(b);
      CAPTURE(delta);
      const auto f = [b](double x) { return x - b * x * x; };
      const PiecewiseLinear g = interpolate(f, 0.0, 1.0, delta);
      double worst = 0.0;
      for (int i = 0; i <= 10000; ++i) {
        const double x = i / 10000.0;
        worst = std::max(worst, std::fabs(g(x) - f(x)));
        // Interpolant of a concave function lies below it.
        CHECK(g(x) <= f(x) + 1e-15);
        CHECK(g.envelope(x) == doctest::Approx(g(x)).epsilon(1e-12));
      }
      CHECK(worst <= b * delta * delta / 4.0 + 1e-15);
    }
  }
}

TEST_CASE("interpolation is exact at breakpoints") {
  const auto f = [](double x) { return 2.0 * x - 0.7 * x * x; };
  const PiecewiseLinear g = interpolate(f, 0.0, 2.0, 0.25);
  for (std::size_t i = 0; i < g.xs.size(); ++i) {
    CHECK(g(g.xs[i]) == doctest::Approx(f(g.xs[i])).epsilon(1e-14));
  }
  CHECK(g.num_segments() == 8);
  const auto chords = g.chords();
  REQUIRE(chords.size() == 8);
  for (std::size_t j = 1; j < chords.size(); ++j) {
    CHECK(chords[j].slope < chords[j - 1].slope);  // concave
  }
}

}  // namespace
}  // namespace rampmatch
