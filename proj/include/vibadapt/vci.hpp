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
#include <vector>

#include "vibadapt/engine.hpp"
#include "vibadapt/hamiltonian.hpp"

namespace vibadapt {

struct VciResult {
  /// Excitation-rank cap; -1 for the full space.
  int level = -1;
  double energy = 0.0;
  /// Ground vector embedded in the full configuration space (zero outside
  /// the subspace), sign fixed so the reference amplitude is nonnegative.
  StateVector ground_vector;
  std::size_t subspace_dim = 0;
  /// ||P(H v - E v)|| over the subspace.
  double residual = 0.0;
};

inline constexpr std::size_t kVciCap = 4096;

VciResult solve_fvci(const NModeHamiltonian& h, std::size_t cap = kVciCap);

/// Lowest eigenpair of H projected on configurations that differ from the
/// reference in at most max_rank modes.
VciResult solve_vci(const NModeHamiltonian& h, int max_rank, std::size_t cap = kVciCap);

/// sum_{r <= max_rank} sum_{|S| = r} prod_{m in S} (N_m - 1)
std::size_t vci_subspace_dimension(const std::vector<int>& modal_counts, int max_rank);

}  // namespace vibadapt
