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
#include "vibadapt/vscf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vibadapt/errors.hpp"

namespace vibadapt {
namespace {

// Flip column signs so the largest-magnitude entry of each column is
// positive (first such entry on ties).
void fix_signs(Eigen::MatrixXd& c) {
  for (Eigen::Index j = 0; j < c.cols(); ++j) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < c.rows(); ++i) {
      if (std::abs(c(i, j)) > std::abs(c(best, j)) + 1e-12) best = i;
    }
    if (c(best, j) < 0) c.col(j) *= -1.0;
  }
}

double expectation(const Eigen::MatrixXd& f, const Eigen::VectorXd& phi) {
  return phi.dot(f * phi);
}

}  // namespace

double hartree_energy(const NModeHamiltonian& h, const std::vector<Eigen::MatrixXd>& coefficients) {
  double e = 0.0;
  for (const auto& term : h.terms()) {
    double v = term.coefficient;
    for (std::size_t i = 0; i < term.modes.size(); ++i) {
      v *= expectation(term.factors[i],
                       coefficients[static_cast<std::size_t>(term.modes[i])].col(0));
    }
    e += v;
  }
  return e;
}

VscfResult solve_vscf(const NModeHamiltonian& h, const VscfOptions& options) {
  if (!(options.tol > 0)) throw ValidationError("VSCF tolerance must be positive");
  if (options.max_iter < 1) throw ValidationError("VSCF max_iter must be at least 1");
  const int modes = h.mode_count();
  const auto& sizes = h.space().modal_counts;

  std::vector<int> order = options.sweep_order;
  if (order.empty()) {
    order.resize(static_cast<std::size_t>(modes));
    std::iota(order.begin(), order.end(), 0);
  }
  {
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expect(static_cast<std::size_t>(modes));
    std::iota(expect.begin(), expect.end(), 0);
    if (sorted != expect) throw ValidationError("VSCF sweep order must be a permutation of the modes");
  }

  VscfResult result;
  result.modal_energies.assign(static_cast<std::size_t>(modes), Eigen::VectorXd());
  if (options.initial_coefficients.empty()) {
    for (int m = 0; m < modes; ++m) {
      const int n = sizes[static_cast<std::size_t>(m)];
      result.modal_coefficients.push_back(Eigen::MatrixXd::Identity(n, n));
    }
  } else {
    if (static_cast<int>(options.initial_coefficients.size()) != modes) {
      throw ValidationError("initial VSCF coefficients: wrong mode count");
    }
    for (int m = 0; m < modes; ++m) {
      const auto& c = options.initial_coefficients[static_cast<std::size_t>(m)];
      const int n = sizes[static_cast<std::size_t>(m)];
      if (c.rows() != n || c.cols() != n) {
        throw ValidationError("initial VSCF coefficients: wrong dimension for mode " +
                              std::to_string(m));
      }
    }
    result.modal_coefficients = options.initial_coefficients;
  }

  double previous = hartree_energy(h, result.modal_coefficients);
  for (int sweep = 1; sweep <= options.max_iter; ++sweep) {
    for (int m : order) {
      const int n = sizes[static_cast<std::size_t>(m)];
      Eigen::MatrixXd effective = Eigen::MatrixXd::Zero(n, n);
      for (const auto& term : h.terms()) {
        double weight = term.coefficient;
        const Eigen::MatrixXd* own = nullptr;
        for (std::size_t i = 0; i < term.modes.size(); ++i) {
          const int other = term.modes[i];
          if (other == m) {
            own = &term.factors[i];
          } else {
            weight *= expectation(term.factors[i],
                                  result.modal_coefficients[static_cast<std::size_t>(other)].col(0));
          }
        }
        if (own != nullptr) effective += weight * *own;
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (effective + effective.transpose()));
      if (eig.info() != Eigen::Success) {
        throw NumericalError("VSCF: one-mode eigensolver failed for mode " + std::to_string(m));
      }
      Eigen::MatrixXd c = eig.eigenvectors();
      fix_signs(c);
      result.modal_coefficients[static_cast<std::size_t>(m)] = std::move(c);
      result.modal_energies[static_cast<std::size_t>(m)] = eig.eigenvalues();
    }
    const double current = hartree_energy(h, result.modal_coefficients);
    result.iterations = sweep;
    result.vscf_energy = current;
    if (std::abs(current - previous) < options.tol) {
      result.converged = true;
      break;
    }
    previous = current;
  }
  return result;
}

NModeHamiltonian to_modal_basis(const NModeHamiltonian& h, const VscfResult& r,
                                const std::vector<int>& modal_counts) {
  const auto& space = h.space();
  if (space.modal_counts != space.primitive_sizes) {
    throw ValidationError("to_modal_basis expects a Hamiltonian in the primitive basis");
  }
  if (static_cast<int>(modal_counts.size()) != h.mode_count() ||
      static_cast<int>(r.modal_coefficients.size()) != h.mode_count()) {
    throw ValidationError("to_modal_basis: mode count mismatch");
  }
  for (int m = 0; m < h.mode_count(); ++m) {
    const auto& c = r.modal_coefficients[static_cast<std::size_t>(m)];
    const int prim = space.primitive_sizes[static_cast<std::size_t>(m)];
    if (c.rows() != prim || c.cols() != prim) {
      throw ValidationError("to_modal_basis: coefficient dimension mismatch for mode " +
                            std::to_string(m));
    }
    if (modal_counts[static_cast<std::size_t>(m)] > prim) {
      throw ValidationError("to_modal_basis: modal count exceeds primitive size");
    }
  }
  ModeSpace target{space.primitive_sizes, modal_counts};
  target.validate();

  std::vector<HamiltonianTerm> terms;
  terms.reserve(h.terms().size());
  for (const auto& term : h.terms()) {
    HamiltonianTerm t{term.modes, term.coefficient, {}};
    for (std::size_t i = 0; i < term.modes.size(); ++i) {
      const auto m = static_cast<std::size_t>(term.modes[i]);
      const Eigen::MatrixXd c = r.modal_coefficients[m].leftCols(modal_counts[m]);
      const Eigen::MatrixXd f = c.transpose() * term.factors[i] * c;
      t.factors.push_back(0.5 * (f + f.transpose()));
    }
    terms.push_back(std::move(t));
  }
  auto meta = h.metadata();
  meta["modal_basis"] = {{"modal_counts", modal_counts}, {"vscf_energy", r.vscf_energy}};
  return NModeHamiltonian(std::move(target), std::move(terms), std::move(meta));
}

}  // namespace vibadapt
