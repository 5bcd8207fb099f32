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

// AVX2 variants. This translation unit is the only one compiled with -mavx2;
// nothing here may run before dispatch.cpp has checked the CPU.
//
// Operand order of the min/max intrinsics is deliberate: std::max(a, b)
// equals _mm256_max_pd(b, a) bit for bit, including signed zeros.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "rampmatch/kernels.hpp"

namespace rampmatch::kernels {
namespace {

double Dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                           _mm256_loadu_pd(b + i)));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (std::size_t i = n4; i < n; ++i) lane[i & 3] += a[i] * b[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double SumSquares(const double* a, std::size_t n) { return Dot(a, a, n); }

double MaxAbs(const double* a, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    m = _mm256_max_pd(_mm256_andnot_pd(sign, _mm256_loadu_pd(a + i)), m);
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, m);
  double r = std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
  for (std::size_t i = n4; i < n; ++i) r = std::max(r, std::fabs(a[i]));
  return r;
}

void Spmv(const std::int64_t* row_start, const std::int32_t* col,
          const double* val, std::size_t row_begin, std::size_t row_end,
          const double* x, double* y) {
  for (std::size_t r = row_begin; r < row_end; ++r) {
    const std::int64_t begin = row_start[r];
    const std::int64_t len = row_start[r + 1] - begin;
    const std::int64_t len4 = len & ~std::int64_t{3};
    __m256d acc = _mm256_setzero_pd();
    for (std::int64_t k = 0; k < len4; k += 4) {
      const __m128i idx = _mm_loadu_si128(
          reinterpret_cast<const __m128i*>(col + begin + k));
      const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(val + begin + k), xv));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    for (std::int64_t k = len4; k < len; ++k) {
      lane[k & 3] += val[begin + k] * x[col[begin + k]];
    }
    y[r] = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  }
}

void BoxStep(const double* x, const double* g, const double* c, double tau,
             const double* lo, const double* hi, double* out, std::size_t n) {
  const __m256d t = _mm256_set1_pd(tau);
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d grad =
        _mm256_add_pd(_mm256_loadu_pd(c + i), _mm256_loadu_pd(g + i));
    const __m256d v = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_mul_pd(t, grad));
    const __m256d lower = _mm256_max_pd(_mm256_loadu_pd(lo + i), v);
    _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_loadu_pd(hi + i), lower));
  }
  for (std::size_t i = n4; i < n; ++i) {
    const double v = x[i] - tau * (c[i] + g[i]);
    out[i] = std::min(std::max(v, lo[i]), hi[i]);
  }
}

void DualStep(const double* y, const double* a, double sigma, const double* lo,
              const double* hi, double* out, std::size_t n) {
  const __m256d s = _mm256_set1_pd(sigma);
  const __m256d zero = _mm256_setzero_pd();
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d v =
        _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(s, _mm256_loadu_pd(a + i)));
    const __m256d up = _mm256_sub_pd(v, _mm256_mul_pd(s, _mm256_loadu_pd(hi + i)));
    const __m256d down = _mm256_sub_pd(v, _mm256_mul_pd(s, _mm256_loadu_pd(lo + i)));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_max_pd(zero, up),
                                            _mm256_min_pd(zero, down)));
  }
  for (std::size_t i = n4; i < n; ++i) {
    const double v = y[i] + sigma * a[i];
    out[i] = std::max(v - sigma * hi[i], 0.0) + std::min(v - sigma * lo[i], 0.0);
  }
}

void Extrapolate(const double* a, const double* b, double* out,
                 std::size_t n) {
  const __m256d two = _mm256_set1_pd(2.0);
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_mul_pd(two, _mm256_loadu_pd(a + i)),
                                            _mm256_loadu_pd(b + i)));
  }
  for (std::size_t i = n4; i < n; ++i) out[i] = 2.0 * a[i] - b[i];
}

void Accumulate(double* acc, const double* x, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    _mm256_storeu_pd(acc + i,
                     _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(x + i)));
  }
  for (std::size_t i = n4; i < n; ++i) acc[i] += x[i];
}

void Scale(const double* x, double s, double* out, std::size_t n) {
  const __m256d sv = _mm256_set1_pd(s);
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), sv));
  }
  for (std::size_t i = n4; i < n; ++i) out[i] = x[i] * s;
}

void IntervalViolation(const double* v, const double* lo, const double* hi,
                       double* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t i = 0; i < n4; i += 4) {
    const __m256d vv = _mm256_loadu_pd(v + i);
    const __m256d below = _mm256_max_pd(zero, _mm256_sub_pd(_mm256_loadu_pd(lo + i), vv));
    const __m256d above = _mm256_max_pd(zero, _mm256_sub_pd(vv, _mm256_loadu_pd(hi + i)));
    _mm256_storeu_pd(out + i, _mm256_add_pd(below, above));
  }
  for (std::size_t i = n4; i < n; ++i) {
    out[i] = std::max(lo[i] - v[i], 0.0) + std::max(v[i] - hi[i], 0.0);
  }
}

}  // namespace

const Table& avx2_table_impl() {
  static const Table table{Backend::kAvx2, "avx2",     Dot,         SumSquares,
                           MaxAbs,         Spmv,       BoxStep,     DualStep,
                           Extrapolate,    Accumulate, Scale,       IntervalViolation};
  return table;
}

}  // namespace rampmatch::kernels
