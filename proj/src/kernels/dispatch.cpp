// Copyright 2026 The vibadapt Authors
//
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
#include <string>

#include "vibadapt/kernels/kernels.hpp"

namespace vibadapt::kernels {

#ifdef VIBADAPT_HAVE_AVX2
const KernelTable& avx2_table_impl();
#endif

const KernelTable* avx2_table() {
#ifdef VIBADAPT_HAVE_AVX2
  return &avx2_table_impl();
#else
  return nullptr;
#endif
}

bool cpu_supports_avx2() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const KernelTable* detect() {
  if (const char* env = std::getenv("VIBADAPT_SIMD")) {
    if (std::string(env) == "scalar") return &scalar_table();
  }
  if (avx2_table() != nullptr && cpu_supports_avx2()) return avx2_table();
  return &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{detect()};
  return current;
}

}  // namespace

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  if (name == "scalar") {
    slot().store(&scalar_table(), std::memory_order_release);
    return true;
  }
  if (name == "avx2" && avx2_table() != nullptr && cpu_supports_avx2()) {
    slot().store(avx2_table(), std::memory_order_release);
    return true;
  }
  return false;
}

}  // namespace vibadapt::kernels
