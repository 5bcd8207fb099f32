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

#ifndef RAMPMATCH_KERNELS_HPP_
#define RAMPMATCH_KERNELS_HPP_

// Data-parallel inner loops of the first-order solver and the metrics.
//
// Every kernel exists as a scalar reference and, where the CPU supports it,
// an AVX2 variant. The backend is chosen once at runtime. Reductions
// accumulate into four interleaved partial sums (element i goes to lane
// i % 4) and combine them as (l0 + l1) + (l2 + l3); the scalar reference
// follows the same order, so all backends produce bit-identical results.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace rampmatch::kernels {

enum class Backend { kScalar, kAvx2 };

struct Table {
  Backend backend;
  const char* name;

  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_squares)(const double* a, std::size_t n);
  double (*max_abs)(const double* a, std::size_t n);

  // y[i] = sum_k val[k] * x[col[k]] for rows [row_begin, row_end).
  void (*spmv)(const std::int64_t* row_start, const std::int32_t* col,
               const double* val, std::size_t row_begin, std::size_t row_end,
               const double* x, double* y);

  // out = clamp(x - tau * (c + g), lo, hi)
  void (*box_step)(const double* x, const double* g, const double* c,
                   double tau, const double* lo, const double* hi, double* out,
                   std::size_t n);

  // v = y + sigma * a;  out = max(v - sigma*hi, 0) + min(v - sigma*lo, 0)
  void (*dual_step)(const double* y, const double* a, double sigma,
                    const double* lo, const double* hi, double* out,
                    std::size_t n);

  // out = 2 * a - b
  void (*extrapolate)(const double* a, const double* b, double* out,
                      std::size_t n);

  // acc += x
  void (*accumulate)(double* acc, const double* x, std::size_t n);

  // out = x * s
  void (*scale)(const double* x, double s, double* out, std::size_t n);

  // Interval violation: out = max(lo - v, 0) + max(v - hi, 0)
  void (*interval_violation)(const double* v, const double* lo,
                             const double* hi, double* out, std::size_t n);
};

const Table& scalar_table();

// nullptr when the binary was built without AVX2 or the CPU lacks it.
const Table* avx2_table();

// The backend used by the solver and metrics. Defaults to the fastest
// supported one; RAMPMATCH_SIMD=scalar|avx2 in the environment overrides.
const Table& active();

// Forces a backend. Returns false (and changes nothing) when unsupported.
bool select(Backend backend);

std::string_view backend_name(Backend backend);

}  // namespace rampmatch::kernels

#endif  // RAMPMATCH_KERNELS_HPP_
