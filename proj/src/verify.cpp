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
#include "vibadapt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "vibadapt/diagnostics.hpp"
#include "vibadapt/experiments.hpp"
#include "vibadapt/vci.hpp"

namespace vibadapt {

using nlohmann::json;

SuiteReport verify_identities(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const IdentityReport rep = verify_decomposition_identities(trials, rng);

  // Negative control: alpha = b must break the generalized identity.
  TripleDecomposition bad;
  bad.dims = {3, 3, 3};
  bad.i = 0, bad.a = 1, bad.j = 0, bad.b = 1, bad.k = 0, bad.c = 2, bad.alpha = 1;
  const double violated = generalized_decomposition_deviation(bad, false);

  SuiteReport out{"identities", false, {}};
  out.details = {{"trials", rep.trials},
                 {"max_generalized", rep.max_generalized},
                 {"max_particle_hole", rep.max_particle_hole},
                 {"max_elementary", rep.max_elementary},
                 {"max_deviation", rep.max_deviation()},
                 {"constraint_violation_deviation", violated},
                 {"tolerance", 1e-13}};
  out.passed = rep.trials >= trials && rep.max_deviation() <= 1e-13 && violated > 1e-13;
  return out;
}

namespace {

ExcitationOperator random_operator(const ConfigurationSpace& space, std::mt19937_64& rng) {
  const int modes = space.mode_count();
  std::uniform_int_distribution<int> rank_d(1, modes);
  const int rank = rank_d(rng);
  std::vector<int> order(static_cast<std::size_t>(modes));
  for (int m = 0; m < modes; ++m) order[static_cast<std::size_t>(m)] = m;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Move> moves;
  for (int r = 0; r < rank; ++r) {
    const int m = order[static_cast<std::size_t>(r)];
    const int n = space.dims()[static_cast<std::size_t>(m)];
    std::uniform_int_distribution<int> modal(0, n - 1);
    const int from = modal(rng);
    int to = modal(rng);
    while (to == from) to = modal(rng);
    moves.push_back({m, from, to});
  }
  return ExcitationOperator(std::move(moves));
}

}  // namespace

SuiteReport verify_expansion(int pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<int> ns{1, 4, 16, 64};
  SuiteReport out{"expansion", true, {}};
  json cases = json::array();
  int checked = 0;
  while (checked < pairs) {
    std::uniform_int_distribution<int> nd(3, 4);
    const ConfigurationSpace space({nd(rng), nd(rng), nd(rng)});
    const ExcitationOperator a = random_operator(space, rng);
    const ExcitationOperator b = random_operator(space, rng);
    const Eigen::MatrixXd ka = dense_kappa(space, a), kb = dense_kappa(space, b);
    if ((ka * kb - kb * ka).norm() < 1e-8) continue;  // need an overlapping pair
    const double t = std::uniform_real_distribution<double>(0.3, 1.0)(rng);
    std::vector<double> errors;
    for (int n : ns) errors.push_back(commutator_expansion_error(space, a, b, t, n));
    bool decreasing = true;
    for (std::size_t i = 1; i < errors.size(); ++i) decreasing &= errors[i] < errors[i - 1];
    out.passed &= decreasing;
    cases.push_back({{"dims", space.dims()},
                     {"a", a.id()},
                     {"b", b.id()},
                     {"t", t},
                     {"errors", errors},
                     {"decreasing", decreasing}});
    ++checked;
  }
  // Commuting control: operators on disjoint modes.
  const ConfigurationSpace space({3, 3, 3});
  const double commuting = commutator_expansion_error(
      space, ExcitationOperator::single(0, 0, 1), ExcitationOperator({{1, 0, 2}, {2, 0, 1}}), 0.8, 4);
  out.passed &= commuting <= 1e-13;
  out.details = {{"pairs", checked},
                 {"n_values", ns},
                 {"norm", "frobenius"},
                 {"commuting_error", commuting},
                 {"cases", cases}};
  return out;
}

SuiteReport verify_disentangle(const NModeHamiltonian& h) {
  const ConfigurationSpace space = configuration_space(h);
  const VciResult fvci = solve_fvci(h);
  const DisentangleResult d = disentangle(space, fvci.ground_vector);
  const StateVector rebuilt = apply_sequence(space, d.sequence, reference_state(space));
  const double overlap = std::abs(rebuilt.dot(fvci.ground_vector));
  const bool single_sweep = d.no_reintroduction(1e-10);

  json snaps = json::array();
  for (const auto& s : d.snapshots) {
    if (s.sweep > 2) break;
    snaps.push_back({{"sweep", s.sweep},
                     {"rank", s.rank},
                     {"nonzero_before", s.nonzero_before},
                     {"nonzero_after", s.nonzero_after},
                     {"max_swept_amplitude", s.max_reintroduced}});
  }
  SuiteReport out{"disentangle", false, {}};
  out.details = {{"dimension", space.dimension()},
                 {"operators", d.sequence.size()},
                 {"sweeps", d.sweeps},
                 {"final_overlap", d.final_overlap},
                 {"reconstruction_overlap", overlap},
                 {"reconstruction_ok", overlap >= 1.0 - 1e-10},
                 {"no_reintroduction", single_sweep},
                 {"snapshots", snaps}};
  out.passed = overlap >= 1.0 - 1e-10 && single_sweep;
  return out;
}

SuiteReport verify_disentangle_default() {
  SystemSpec spec;
  spec.preset = "coupled3";
  const PreparedSystem sys = prepare_system(load_system(spec), spec);
  return verify_disentangle(sys.modal);
}

}  // namespace vibadapt
