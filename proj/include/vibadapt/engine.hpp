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

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vibadapt/configuration.hpp"
#include "vibadapt/excitation.hpp"
#include "vibadapt/hamiltonian.hpp"

namespace vibadapt {

/// Real amplitudes c_mu over the canonical configuration ordering.
using StateVector = Eigen::VectorXd;

/// Largest dimension for which dense matrix paths (exponentials, oracles)
/// are used.
inline constexpr std::size_t kDenseCap = 1000;

ConfigurationSpace configuration_space(const NModeHamiltonian& h);

/// Basis vector of the reference configuration (index 0).
StateVector reference_state(const ConfigurationSpace& space);

/// H|psi> by applying each term's factors along their mode axes.
StateVector apply_hamiltonian(const NModeHamiltonian& h, const StateVector& psi);

/// <psi|H|psi>.
double energy(const NModeHamiltonian& h, const StateVector& psi);

/// psi <- exp(t kappa) psi, as independent plane rotations on the
/// configuration pairs coupled by kappa.
void rotate_inplace(const ConfigurationSpace& space, const ExcitationOperator& op, double t,
                    StateVector& psi);

StateVector apply_excitation_rotation(const ConfigurationSpace& space,
                                      const ExcitationOperator& op, double t,
                                      const StateVector& psi);

/// kappa|psi>.
StateVector apply_kappa(const ConfigurationSpace& space, const ExcitationOperator& op,
                        const StateVector& psi);

/// 2 <sigma|kappa|psi>; with sigma = H psi this is <psi|[H, kappa]|psi>.
double commutator_expectation(const ConfigurationSpace& space, const ExcitationOperator& op,
                              const StateVector& psi, const StateVector& sigma);

/// Energy gradient d/dt <psi|exp(-t kappa) H exp(t kappa)|psi> at t = 0.
double pool_gradient(const NModeHamiltonian& h, const StateVector& psi,
                     const ExcitationOperator& op);

/// Dense kappa in the configuration basis.
Eigen::MatrixXd dense_kappa(const ConfigurationSpace& space, const ExcitationOperator& op,
                            std::size_t cap = kDenseCap);

/// exp(sum_mu t_mu kappa_mu)|psi> through one dense matrix exponential.
StateVector apply_cluster_exponential(
    const ConfigurationSpace& space,
    const std::vector<std::pair<ExcitationOperator, double>>& amplitudes, const StateVector& psi,
    std::size_t cap = kDenseCap);

/// Dense matrix exponential (scaling and squaring with Pade approximants).
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a);

}  // namespace vibadapt
