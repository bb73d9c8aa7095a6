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

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vibadapt/configuration.hpp"
#include "vibadapt/engine.hpp"
#include "vibadapt/excitation.hpp"
#include "vibadapt/pools.hpp"

namespace vibadapt {

// ---------------------------------------------------------------------------
// Jacobian of the ansatz along the path

/// D(mu, nu) = <Phi_mu| d/dt_nu U(t) |Phi_ref>, rows over the full
/// configuration basis. Composite elements contribute the sum of their
/// factor insertions.
Eigen::MatrixXd compute_jacobian(const Ansatz& a);

struct RankPolicy {
  /// Singular values at or below max(relative cutoff, absolute) are dropped.
  /// The relative cutoff is max(rows, cols) * eps * sigma_max.
  double absolute = 1e-10;
  bool use_relative = true;
};

int numerical_rank(const Eigen::MatrixXd& d, const RankPolicy& policy = {});

struct JacobianReport {
  int k = 0;
  int rank = 0;
  std::vector<double> singular_values;  // descending
  int expected_rank = 0;                 // min(#excitations, k)
  bool is_critical = false;
};

JacobianReport jacobian_report(const Ansatz& a, const RankPolicy& policy = {});

// ---------------------------------------------------------------------------
// CNOT cost model

/// Cost of one exponentiated rank-r excitation. The default formula charges
/// 2^(2r-1) Pauli strings of weight 2r at 2(2r-1) CNOTs each.
class CnotModel {
 public:
  CnotModel() = default;
  /// table[r-1] = cost of a rank-r operator.
  static CnotModel from_table(std::vector<std::int64_t> table);
  /// JSON file {"costs": [c1, c2, ...]}.
  static CnotModel load(const std::filesystem::path& path);

  std::int64_t cost(int rank) const;
  std::string description() const;

 private:
  std::vector<std::int64_t> table_;
};

std::int64_t cnot_count(const Ansatz& a, const CnotModel& model = {});
std::int64_t cnot_count(const PoolElement& e, const CnotModel& model = {});

// ---------------------------------------------------------------------------
// Operator identities

/// Dense anti-Hermitian tau - tau^dagger for arbitrary moves, including
/// from == to (a projector times a transfer) which ExcitationOperator
/// rejects.
Eigen::MatrixXd dense_kappa_raw(const ConfigurationSpace& space, const std::vector<Move>& moves);

/// One-mode transition |to><from| on `mode`, embedded in the full space.
Eigen::MatrixXd dense_transition(const ConfigurationSpace& space, int mode, int from, int to);

/// Index tuple for the three-body decomposition: modes l, m, n distinct;
/// l: i -> a, m: j -> b, n: k -> c, intermediate modal alpha on mode m.
struct TripleDecomposition {
  std::vector<int> dims;
  int l = 0, m = 1, n = 2;
  int i = 0, a = 1;
  int j = 0, b = 1;
  int k = 0, c = 1;
  int alpha = 2;
};

/// max |kappa_3 + [kappa(l:i>a, m:j>alpha), kappa(m:alpha>b, n:k>c)]|.
/// With `enforce` the constraints (alpha not in {j, b}, i != a, j != b,
/// k != c) are checked and violations throw ValidationError.
double generalized_decomposition_deviation(const TripleDecomposition& t, bool enforce = true);

/// Particle-hole form: kappa_3 = -[kappa(l:i>a, m:j>alpha),
/// [kappa(m:j>alpha), kappa(m:j>b, n:k>c)]].
double particle_hole_decomposition_deviation(const TripleDecomposition& t, bool enforce = true);

/// max |[E(a>b), E(c>d)] - (E(c>b) d_ad - E(a>d) d_bc)| on one mode, where
/// E(p>q) = |q><p|.
double transition_commutator_deviation(const ConfigurationSpace& space, int mode, int a, int b,
                                       int c, int d);

struct IdentityReport {
  int trials = 0;
  double max_generalized = 0.0;
  double max_particle_hole = 0.0;
  double max_elementary = 0.0;
  double max_deviation() const;
};

/// Random valid index tuples over random spaces (3-4 modes, 3-4 modals).
IdentityReport verify_decomposition_identities(int trials, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Commutator expansion

/// || (e^{A/sqrt(N)} e^{B/sqrt(N)} e^{-A/sqrt(N)} e^{-B/sqrt(N)})^N - e^{[A,B]} ||_F
/// with A = t kappa_A and B = t kappa_B as dense matrices.
double commutator_expansion_error(const ConfigurationSpace& space, const ExcitationOperator& a,
                                  const ExcitationOperator& b, double t, int n,
                                  std::size_t cap = kDenseCap);

// ---------------------------------------------------------------------------
// Constructive disentangling

enum class DisentangleOrder {
  RankAscending,   // ranks 1..M, lexicographic within a rank (default)
  RankDescending,  // ranks M..1, lexicographic within a rank
};

struct DisentangleOptions {
  DisentangleOrder order = DisentangleOrder::RankAscending;
  /// Sweeps over ranks 1..M are repeated until the reference weight reaches
  /// 1 - tol or max_sweeps is hit.
  double tol = 1e-12;
  int max_sweeps = 500;
  /// Amplitudes at or below this are treated as zero.
  double zero = 1e-14;
  /// Threshold used for the per-rank nonzero counts in the snapshots.
  double count_threshold = 1e-10;
};

struct RankSnapshot {
  int sweep = 0;
  int rank = 0;                    // rank just swept
  std::vector<int> nonzero_before; // nonzero counts per rank 1..M before the sweep
  std::vector<int> nonzero_after;  // ... and after
  /// Largest amplitude left, after the pass, at every rank already swept in
  /// this sweep (including `rank`).
  double max_reintroduced = 0.0;
};

struct DisentangleResult {
  /// Forward sequence: applying these rotations in order to the reference
  /// reproduces the target up to a global sign.
  std::vector<std::pair<ExcitationOperator, double>> sequence;
  int sweeps = 0;
  double final_overlap = 0.0;  // |<ref|U^-1 target>|
  std::vector<RankSnapshot> snapshots;
  /// True when, within the first sweep, every pass leaves all ranks swept so
  /// far at or below `threshold` (a single sweep would then suffice).
  bool no_reintroduction(double threshold) const;
};

/// Eliminates every nonzero configuration rank by rank (lexicographic within
/// a rank) with e^{-t kappa}, t = atan(c_mu / c_ref). Throws NumericalError if
/// the reference amplitude vanishes.
DisentangleResult disentangle(const ConfigurationSpace& space, const StateVector& target,
                              const DisentangleOptions& options = {});

StateVector apply_sequence(const ConfigurationSpace& space,
                           const std::vector<std::pair<ExcitationOperator, double>>& sequence,
                           StateVector psi);

}  // namespace vibadapt
