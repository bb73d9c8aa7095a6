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
#include "vibadapt/vci.hpp"

#include <string>

#include "vibadapt/errors.hpp"

namespace vibadapt {
namespace {

VciResult solve_in_subspace(const NModeHamiltonian& h, int level, std::size_t cap) {
  const ConfigurationSpace space = configuration_space(h);
  if (space.dimension() > cap) {
    throw NumericalError("VCI: configuration dimension " + std::to_string(space.dimension()) +
                         " exceeds the dense cap of " + std::to_string(cap));
  }
  const Eigen::MatrixXd full = dense_matrix(h, cap);
  std::vector<Eigen::Index> keep;
  const auto configs = space.enumerate();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (level < 0 || ConfigurationSpace::excitation_rank(configs[i]) <= level) {
      keep.push_back(static_cast<Eigen::Index>(i));
    }
  }
  const auto n = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd sub(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) sub(i, j) = full(keep[i], keep[j]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (sub + sub.transpose()));
  if (eig.info() != Eigen::Success) throw NumericalError("VCI: eigensolver failed");

  VciResult r;
  r.level = level;
  r.energy = eig.eigenvalues()(0);
  r.subspace_dim = keep.size();
  Eigen::VectorXd v = eig.eigenvectors().col(0);
  if (v(0) < 0) v = -v;  // keep[0] is always the reference
  r.residual = (sub * v - r.energy * v).norm();
  r.ground_vector = StateVector::Zero(static_cast<Eigen::Index>(space.dimension()));
  for (Eigen::Index i = 0; i < n; ++i) r.ground_vector(keep[i]) = v(i);
  return r;
}

}  // namespace

VciResult solve_fvci(const NModeHamiltonian& h, std::size_t cap) {
  return solve_in_subspace(h, -1, cap);
}

VciResult solve_vci(const NModeHamiltonian& h, int max_rank, std::size_t cap) {
  if (max_rank < 0 || max_rank > h.mode_count()) {
    throw ValidationError("VCI rank cap must lie in [0, mode_count]");
  }
  VciResult r = solve_in_subspace(h, max_rank, cap);
  if (max_rank == h.mode_count()) r.level = max_rank;
  return r;
}

std::size_t vci_subspace_dimension(const std::vector<int>& modal_counts, int max_rank) {
  // Coefficients of prod_m (1 + (N_m - 1) x), truncated at x^max_rank.
  std::vector<std::size_t> poly{1};
  for (int n : modal_counts) {
    std::vector<std::size_t> next(poly.size() + 1, 0);
    for (std::size_t r = 0; r < poly.size(); ++r) {
      next[r] += poly[r];
      next[r + 1] += poly[r] * static_cast<std::size_t>(n - 1);
    }
    poly = std::move(next);
  }
  std::size_t total = 0;
  for (std::size_t r = 0; r < poly.size() && static_cast<int>(r) <= max_rank; ++r) total += poly[r];
  return total;
}

}  // namespace vibadapt
