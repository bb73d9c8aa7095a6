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
#include "vibadapt/engine.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "pair_blocks.hpp"
#include "vibadapt/errors.hpp"
#include "vibadapt/kernels/kernels.hpp"

namespace vibadapt {
namespace {

void check_dimension(const ConfigurationSpace& space, const StateVector& psi) {
  if (static_cast<std::size_t>(psi.size()) != space.dimension()) {
    throw ValidationError("state vector length " + std::to_string(psi.size()) +
                          " does not match configuration dimension " +
                          std::to_string(space.dimension()));
  }
}

// out = F applied along one mode axis of `in`.
void apply_along_axis(const kernels::KernelTable& k, const Eigen::MatrixXd& factor,
                      std::size_t inner, std::size_t total, const double* in, double* out) {
  const auto n = static_cast<std::size_t>(factor.rows());
  const std::size_t block = n * inner;
  for (std::size_t base = 0; base < total; base += block) {
    double* dst = out + base;
    const double* src = in + base;
    std::fill(dst, dst + block, 0.0);
    if (inner == 1) {
      for (std::size_t q = 0; q < n; ++q) {
        if (src[q] != 0.0) k.axpy(src[q], factor.col(static_cast<Eigen::Index>(q)).data(), dst, n);
      }
      continue;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        const double f = factor(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
        if (f != 0.0) k.axpy(f, src + q * inner, dst + p * inner, inner);
      }
    }
  }
}

}  // namespace

ConfigurationSpace configuration_space(const NModeHamiltonian& h) {
  return ConfigurationSpace(h.space().modal_counts);
}

StateVector reference_state(const ConfigurationSpace& space) {
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(space.dimension()));
  psi(0) = 1.0;
  return psi;
}

StateVector apply_hamiltonian(const NModeHamiltonian& h, const StateVector& psi) {
  const ConfigurationSpace space = configuration_space(h);
  check_dimension(space, psi);
  const auto& k = kernels::active();
  const std::size_t dim = space.dimension();
  StateVector out = StateVector::Zero(psi.size());
  StateVector a(psi.size());
  StateVector b(psi.size());
  for (const auto& term : h.terms()) {
    if (term.coefficient == 0.0) continue;
    const double* src = psi.data();
    double* dst = a.data();
    for (std::size_t i = 0; i < term.modes.size(); ++i) {
      apply_along_axis(k, term.factors[i], space.stride(term.modes[i]), dim, src, dst);
      src = dst;
      dst = (dst == a.data()) ? b.data() : a.data();
    }
    k.axpy(term.coefficient, src, out.data(), dim);
  }
  return out;
}

double energy(const NModeHamiltonian& h, const StateVector& psi) {
  const StateVector sigma = apply_hamiltonian(h, psi);
  return kernels::active().dot(psi.data(), sigma.data(), static_cast<std::size_t>(psi.size()));
}

void rotate_inplace(const ConfigurationSpace& space, const ExcitationOperator& op, double t,
                    StateVector& psi) {
  check_dimension(space, psi);
  op.check(space);
  if (t == 0.0) return;
  const double c = std::cos(t);
  const double s = std::sin(t);
  const auto& k = kernels::active();
  double* data = psi.data();
  detail::for_each_pair_run(detail::pair_layout(space, op),
                            [&](std::size_t from, std::size_t to, std::size_t run) {
                              k.rot(data + from, data + to, run, c, s);
                            });
}

StateVector apply_excitation_rotation(const ConfigurationSpace& space,
                                      const ExcitationOperator& op, double t,
                                      const StateVector& psi) {
  StateVector out = psi;
  rotate_inplace(space, op, t, out);
  return out;
}

StateVector apply_kappa(const ConfigurationSpace& space, const ExcitationOperator& op,
                        const StateVector& psi) {
  check_dimension(space, psi);
  op.check(space);
  StateVector out = StateVector::Zero(psi.size());
  const double* in = psi.data();
  double* dst = out.data();
  detail::for_each_pair_run(detail::pair_layout(space, op),
                            [&](std::size_t from, std::size_t to, std::size_t run) {
                              for (std::size_t i = 0; i < run; ++i) {
                                dst[to + i] = in[from + i];
                                dst[from + i] = -in[to + i];
                              }
                            });
  return out;
}

double commutator_expectation(const ConfigurationSpace& space, const ExcitationOperator& op,
                              const StateVector& psi, const StateVector& sigma) {
  check_dimension(space, psi);
  check_dimension(space, sigma);
  op.check(space);
  const auto& k = kernels::active();
  double acc = 0.0;
  detail::for_each_pair_run(detail::pair_layout(space, op),
                            [&](std::size_t from, std::size_t to, std::size_t run) {
                              acc += k.dot(sigma.data() + to, psi.data() + from, run) -
                                     k.dot(sigma.data() + from, psi.data() + to, run);
                            });
  return 2.0 * acc;
}

double pool_gradient(const NModeHamiltonian& h, const StateVector& psi,
                     const ExcitationOperator& op) {
  return commutator_expectation(configuration_space(h), op, psi, apply_hamiltonian(h, psi));
}

Eigen::MatrixXd dense_kappa(const ConfigurationSpace& space, const ExcitationOperator& op,
                            std::size_t cap) {
  if (space.dimension() > cap) {
    throw NumericalError("dense kappa above the dimension cap of " + std::to_string(cap));
  }
  op.check(space);
  const auto dim = static_cast<Eigen::Index>(space.dimension());
  Eigen::MatrixXd kappa = Eigen::MatrixXd::Zero(dim, dim);
  // Entry-wise from the definition: <c'|tau|c> = 1 when c matches the
  // from-modals and c' is c with the to-modals substituted.
  const auto configs = space.enumerate();
  for (std::size_t col = 0; col < configs.size(); ++col) {
    Configuration target = configs[col];
    bool matches = true;
    for (const Move& mv : op.moves()) {
      if (target[static_cast<std::size_t>(mv.mode)] != mv.from) {
        matches = false;
        break;
      }
      target[static_cast<std::size_t>(mv.mode)] = mv.to;
    }
    if (!matches) continue;
    const auto row = static_cast<Eigen::Index>(space.index(target));
    kappa(row, static_cast<Eigen::Index>(col)) += 1.0;
    kappa(static_cast<Eigen::Index>(col), row) -= 1.0;
  }
  return kappa;
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a) { return a.exp(); }

StateVector apply_cluster_exponential(
    const ConfigurationSpace& space,
    const std::vector<std::pair<ExcitationOperator, double>>& amplitudes, const StateVector& psi,
    std::size_t cap) {
  check_dimension(space, psi);
  if (space.dimension() > cap) {
    throw NumericalError("cluster exponential above the dense cap of " + std::to_string(cap));
  }
  const auto dim = static_cast<Eigen::Index>(space.dimension());
  Eigen::MatrixXd generator = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& [op, t] : amplitudes) generator += t * dense_kappa(space, op, cap);
  return matrix_exponential(generator) * psi;
}

}  // namespace vibadapt
