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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "rampmatch/kernels.hpp"

namespace rampmatch::kernels {

#if defined(RAMPMATCH_HAVE_AVX2)
const Table& avx2_table_impl();
#endif

namespace {

bool CpuHasAvx2() {
#if defined(RAMPMATCH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Table* Initial() {
  const Table* avx2 = avx2_table();
  const char* env = std::getenv("RAMPMATCH_SIMD");
  if (env != nullptr) {
    const std::string_view want(env);
    if (want == "scalar") return &scalar_table();
    if (want == "avx2" && avx2 != nullptr) return avx2;
  }
  return avx2 != nullptr ? avx2 : &scalar_table();
}

std::atomic<const Table*>& Current() {
  static std::atomic<const Table*> current{Initial()};
  return current;
}

}  // namespace

const Table* avx2_table() {
#if defined(RAMPMATCH_HAVE_AVX2)
  static const bool ok = CpuHasAvx2();
  return ok ? &avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const Table& active() { return *Current().load(std::memory_order_acquire); }

bool select(Backend backend) {
  const Table* t = nullptr;
  switch (backend) {
    case Backend::kScalar:
      t = &scalar_table();
      break;
    case Backend::kAvx2:
      t = avx2_table();
      break;
  }
  if (t == nullptr) return false;
  Current().store(t, std::memory_order_release);
  return true;
}

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace rampmatch::kernels
