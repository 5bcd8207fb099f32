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

#include <algorithm>
#include <cmath>

#include "rampmatch/kernels.hpp"

namespace rampmatch::kernels {
namespace {

double Dot(const double* a, const double* b, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) lane[i & 3] += a[i] * b[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double SumSquares(const double* a, std::size_t n) { return Dot(a, a, n); }

double MaxAbs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}

void Spmv(const std::int64_t* row_start, const std::int32_t* col,
          const double* val, std::size_t row_begin, std::size_t row_end,
          const double* x, double* y) {
  for (std::size_t r = row_begin; r < row_end; ++r) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    const std::int64_t begin = row_start[r];
    const std::int64_t len = row_start[r + 1] - begin;
    for (std::int64_t k = 0; k < len; ++k) {
      lane[k & 3] += val[begin + k] * x[col[begin + k]];
    }
    y[r] = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  }
}

void BoxStep(const double* x, const double* g, const double* c, double tau,
             const double* lo, const double* hi, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i] - tau * (c[i] + g[i]);
    out[i] = std::min(std::max(v, lo[i]), hi[i]);
  }
}

void DualStep(const double* y, const double* a, double sigma, const double* lo,
              const double* hi, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double v = y[i] + sigma * a[i];
    out[i] = std::max(v - sigma * hi[i], 0.0) + std::min(v - sigma * lo[i], 0.0);
  }
}

void Extrapolate(const double* a, const double* b, double* out,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = 2.0 * a[i] - b[i];
}

void Accumulate(double* acc, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += x[i];
}

void Scale(const double* x, double s, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * s;
}

void IntervalViolation(const double* v, const double* lo, const double* hi,
                       double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::max(lo[i] - v[i], 0.0) + std::max(v[i] - hi[i], 0.0);
  }
}

}  // namespace

const Table& scalar_table() {
  static const Table table{Backend::kScalar, "scalar",  Dot,         SumSquares,
                           MaxAbs,           Spmv,      BoxStep,     DualStep,
                           Extrapolate,      Accumulate, Scale,      IntervalViolation};
  return table;
}

}  // namespace rampmatch::kernels
