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

#ifndef RAMPMATCH_PWL_HPP_
#define RAMPMATCH_PWL_HPP_

// Piecewise-linear interpolation of univariate concave functions on uniform
// breakpoints.

#include <functional>
#include <vector>

namespace rampmatch {

struct Chord {
  double slope;
  double intercept;
  double operator()(double v) const { return slope * v + intercept; }
};

struct PiecewiseLinear {
  std::vector<double> xs;  // strictly increasing breakpoints
  std::vector<double> ys;

  std::size_t num_segments() const { return xs.size() - 1; }
  Chord chord(std::size_t j) const;
  std::vector<Chord> chords() const;
  // Linear interpolation; v is clamped to [xs.front(), xs.back()].
  double operator()(double v) const;
  // min over chords; equals operator() for concave data.
  double envelope(double v) const;
};

// lo, lo + delta, lo + 2 delta, ... and finally hi exactly. A last step
// shorter than delta is kept; one that would be shorter than delta * 1e-9
// (floating-point drift) is merged into its predecessor.
// Throws Error if delta <= 0 or delta > hi - lo.
std::vector<double> uniform_breakpoints(double lo, double hi, double delta);

PiecewiseLinear interpolate(const std::function<double(double)>& h, double lo,
                            double hi, double delta);

}  // namespace rampmatch

#endif  // RAMPMATCH_PWL_HPP_
