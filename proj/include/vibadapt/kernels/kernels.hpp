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
#pragma once

#include <cstddef>
#include <string_view>

/// Low-level vector kernels used by the statevector engine.
///
/// Every kernel has a portable scalar reference implementation and, where
/// the build and the running CPU allow it, a vectorized variant. The variant
/// is chosen once at startup (see `active()`); the environment variable
/// `VIBADAPT_SIMD=scalar|avx2` overrides the choice.
namespace vibadapt::kernels {

struct KernelTable {
  const char* name;
  /// sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  /// y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  /// Plane rotation of the pair (x[i], y[i]):
  ///   x' = c x - s y,  y' = s x + c y
  void (*rot)(double* x, double* y, std::size_t n, double c, double s);
};

const KernelTable& scalar_table();

/// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table();

bool cpu_supports_avx2();

/// Kernel table in use by the engine.
const KernelTable& active();

/// Force a specific variant ("scalar" or "avx2"). Returns false if the
/// variant is unavailable on this build or CPU; the active table is then
/// left unchanged.
bool select(std::string_view name);

}  // namespace vibadapt::kernels
