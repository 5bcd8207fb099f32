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

#include "rampmatch/pwl.hpp"

#include <algorithm>
#include <cmath>

#include "rampmatch/model.hpp"

namespace rampmatch {

Chord PiecewiseLinear::chord(std::size_t j) const {
  const double slope = (ys[j + 1] - ys[j]) / (xs[j + 1] - xs[j]);
  return {slope, ys[j] - slope * xs[j]};
}

std::vector<Chord> PiecewiseLinear::chords() const {
  std::vector<Chord> out;
  out.reserve(num_segments());
  for (std::size_t j = 0; j < num_segments(); ++j) out.push_back(chord(j));
  return out;
}

double PiecewiseLinear::operator()(double v) const {
  v = std::clamp(v, xs.front(), xs.back());
  const auto it = std::upper_bound(xs.begin(), xs.end(), v);
  std::size_t j = static_cast<std::size_t>(it - xs.begin());
  j = j == 0 ? 0 : std::min(j - 1, num_segments() - 1);
  const double w = (v - xs[j]) / (xs[j + 1] - xs[j]);
  return ys[j] + w * (ys[j + 1] - ys[j]);
}

double PiecewiseLinear::envelope(double v) const {
  double best = chord(0)(v);
  for (std::size_t j = 1; j < num_segments(); ++j) {
    best = std::min(best, chord(j)(v));
  }
  return best;
}

std::vector<double> uniform_breakpoints(double lo, double hi, double delta) {
  if (!(delta > 0.0)) throw Error("PWL step must be positive");
  if (delta > hi - lo) throw Error("PWL step exceeds the variable range");
  std::vector<double> xs;
  const double merge = delta * 1e-9;
  for (long k = 0;; ++k) {
    const double v = lo + static_cast<double>(k) * delta;
    if (v >= hi - merge) break;
    xs.push_back(v);
  }
  xs.push_back(hi);
  return xs;
}

PiecewiseLinear interpolate(const std::function<double(double)>& h, double lo,
                            double hi, double delta) {
  PiecewiseLinear g;
  g.xs = uniform_breakpoints(lo, hi, delta);
  g.ys.reserve(g.xs.size());
  for (double v : g.xs) g.ys.push_back(h(v));
  return g;
}

}  // namespace rampmatch
