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
#include <algorithm>
#include <cmath>
#include <sstream>

#include "vibadapt/diagnostics.hpp"
#include "vibadapt/errors.hpp"

namespace vibadapt {

namespace {

std::vector<int> rank_counts(const std::vector<int>& ranks, const StateVector& psi, int modes,
                             double threshold) {
  std::vector<int> counts(static_cast<std::size_t>(modes), 0);
  for (Eigen::Index i = 1; i < psi.size(); ++i) {
    if (std::abs(psi(i)) > threshold) ++counts[static_cast<std::size_t>(ranks[i] - 1)];
  }
  return counts;
}

ExcitationOperator from_reference(const Configuration& c) {
  std::vector<Move> moves;
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (c[m] != 0) moves.push_back({static_cast<int>(m), 0, c[m]});
  }
  return ExcitationOperator(std::move(moves));
}

}  // namespace

bool DisentangleResult::no_reintroduction(double threshold) const {
  for (const auto& s : snapshots) {
    if (s.sweep == 1 && s.max_reintroduced > threshold) return false;
  }
  return true;
}

DisentangleResult disentangle(const ConfigurationSpace& space, const StateVector& target,
                              const DisentangleOptions& options) {
  if (static_cast<std::size_t>(target.size()) != space.dimension()) {
    throw ValidationError("disentangle: state dimension does not match the space");
  }
  const double norm = target.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw ValidationError("disentangle: zero state");
  StateVector psi = target / norm;

  const int modes = space.mode_count();
  std::vector<int> ranks(space.dimension());
  std::vector<std::vector<std::size_t>> by_rank(static_cast<std::size_t>(modes) + 1);
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    ranks[i] = ConfigurationSpace::excitation_rank(space.configuration(i));
    by_rank[static_cast<std::size_t>(ranks[i])].push_back(i);
  }

  DisentangleResult out;
  std::vector<std::pair<ExcitationOperator, double>> eliminated;
  auto done = [&] { return std::abs(psi(0)) >= 1.0 - options.tol; };

  while (!done()) {
    if (out.sweeps >= options.max_sweeps) {
      throw NumericalError("disentangle: no convergence after " +
                           std::to_string(options.max_sweeps) + " sweeps");
    }
    ++out.sweeps;
    std::vector<int> swept(static_cast<std::size_t>(modes) + 1, 0);
    for (int step = 0; step < modes; ++step) {
      const int r = options.order == DisentangleOrder::RankAscending ? step + 1 : modes - step;
      swept[static_cast<std::size_t>(r)] = 1;
      RankSnapshot snap;
      snap.sweep = out.sweeps;
      snap.rank = r;
      snap.nonzero_before = rank_counts(ranks, psi, modes, options.count_threshold);
      for (std::size_t idx : by_rank[static_cast<std::size_t>(r)]) {
        const double c_mu = psi(static_cast<Eigen::Index>(idx));
        if (std::abs(c_mu) <= options.zero) continue;
        const double c_ref = psi(0);
        if (std::abs(c_ref) <= options.zero) {
          std::ostringstream msg;
          msg << "disentangle: reference coefficient vanished (|c_ref| = " << std::abs(c_ref)
              << ") in sweep " << out.sweeps << ", rank " << r;
          throw NumericalError(msg.str());
        }
        const double t = std::atan(c_mu / c_ref);
        ExcitationOperator op = from_reference(space.configuration(idx));
        rotate_inplace(space, op, -t, psi);
        eliminated.emplace_back(std::move(op), t);
      }
      snap.nonzero_after = rank_counts(ranks, psi, modes, options.count_threshold);
      for (std::size_t i = 1; i < space.dimension(); ++i) {
        if (swept[static_cast<std::size_t>(ranks[i])]) {
          snap.max_reintroduced =
              std::max(snap.max_reintroduced, std::abs(psi(static_cast<Eigen::Index>(i))));
        }
      }
      out.snapshots.push_back(std::move(snap));
    }
  }
  out.final_overlap = std::abs(psi(0));
  // Undo the eliminations in reverse order to get the forward product.
  out.sequence.assign(eliminated.rbegin(), eliminated.rend());
  return out;
}

StateVector apply_sequence(const ConfigurationSpace& space,
                           const std::vector<std::pair<ExcitationOperator, double>>& sequence,
                           StateVector psi) {
  for (const auto& [op, t] : sequence) rotate_inplace(space, op, t, psi);
  return psi;
}

}  // namespace vibadapt
