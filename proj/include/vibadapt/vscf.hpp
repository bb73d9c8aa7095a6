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

#include <vector>

#include <Eigen/Dense>

#include "vibadapt/hamiltonian.hpp"

namespace vibadapt {

struct VscfOptions {
  int max_iter = 200;
  double tol = 1e-12;
  /// Mode update order within a sweep; empty means 0, 1, ..., M-1.
  std::vector<int> sweep_order;
  /// Starting modal coefficients; empty means the primitive functions.
  std::vector<Eigen::MatrixXd> initial_coefficients;
};

struct VscfResult {
  /// Per mode, primitive -> modal coefficients; columns ordered by the
  /// eigenvalue of the effective one-mode operator.
  std::vector<Eigen::MatrixXd> modal_coefficients;
  std::vector<Eigen::VectorXd> modal_energies;
  double vscf_energy = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Cyclic mean-field sweeps until the energy change drops below tol.
/// Non-convergence is reported through `converged`, not an exception.
VscfResult solve_vscf(const NModeHamiltonian& h, const VscfOptions& options = {});

/// Mean-field energy of the Hartree product built from column 0 of each
/// coefficient matrix.
double hartree_energy(const NModeHamiltonian& h, const std::vector<Eigen::MatrixXd>& coefficients);

/// Conjugate every factor by its mode's coefficient matrix and keep the
/// leading modal_counts[m] modals. The input must be in the primitive basis.
NModeHamiltonian to_modal_basis(const NModeHamiltonian& h, const VscfResult& r,
                                const std::vector<int>& modal_counts);

}  // namespace vibadapt
