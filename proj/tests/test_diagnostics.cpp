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
#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "vibadapt/diagnostics.hpp"
#include "vibadapt/errors.hpp"
#include "vibadapt/experiments.hpp"
#include "vibadapt/vci.hpp"

using namespace vibadapt;

TEST(Jacobian, SingleOperatorColumn) {
  const ConfigurationSpace s({3, 3, 3});
  Ansatz a(s);
  const auto op = ExcitationOperator({{0, 0, 1}, {2, 0, 2}});
  a.append({{op}}, 0.0);
  const Eigen::MatrixXd d = compute_jacobian(a);
  ASSERT_EQ(d.cols(), 1);
  ASSERT_EQ(static_cast<std::size_t>(d.rows()), s.dimension());
  EXPECT_LE((d.col(0) - oracle::kappa(s.dims(), op) * reference_state(s)).norm(), 1e-15);
  const JacobianReport r = jacobian_report(a);
  EXPECT_EQ(r.rank, 1);
  EXPECT_EQ(r.expected_rank, 1);
  EXPECT_FALSE(r.is_critical);
}

TEST(Jacobian, FiniteDifferenceColumns) {
  std::mt19937_64 rng(51);
  const ConfigurationSpace s({3, 4, 3});
  const OperatorPool pool = generate_pool(s, PoolKind::SDDecoupled);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_real_distribution<double> t(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    Ansatz a(s);
    for (int i = 0; i < 5; ++i) a.append(pool.elements[pick(rng)], t(rng));
    const Eigen::MatrixXd d = compute_jacobian(a);
    for (std::size_t j = 0; j < a.size(); ++j) {
      Ansatz p = a, m = a;
      p.parameters[j] += 1e-6;
      m.parameters[j] -= 1e-6;
      const Eigen::VectorXd fd = (ansatz_state(p) - ansatz_state(m)) / 2e-6;
      EXPECT_LE((d.col(static_cast<Eigen::Index>(j)) - fd).cwiseAbs().maxCoeff(), 1e-7);
    }
  }
}

TEST(Jacobian, GenericAnsatzHasFullRank) {
  std::mt19937_64 rng(52);
  const ConfigurationSpace s({4, 4, 4});
  const OperatorPool pool = generate_pool(s, PoolKind::SDT);
  std::uniform_real_distribution<double> t(0.1, 0.9);
  std::vector<std::size_t> idx(pool.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  Ansatz a(s);
  for (int i = 0; i < 5; ++i) a.append(pool.elements[idx[static_cast<std::size_t>(i)]], t(rng));
  const JacobianReport r = jacobian_report(a);
  EXPECT_EQ(r.rank, 5);
  EXPECT_EQ(r.expected_rank, 5);
  EXPECT_EQ(r.singular_values.size(), 5u);
  // A repeated operator at the end adds no direction.
  a.append(a.sequence.back(), 0.2);
  EXPECT_EQ(jacobian_report(a).rank, 5);
  EXPECT_TRUE(jacobian_report(a).is_critical);
}

TEST(Jacobian, NumericalRank) {
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd::Zero(6, 3)), 0);
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd::Identity(6, 3)), 3);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(6, 3);
  m(2, 2) = 1e-11;
  EXPECT_EQ(numerical_rank(m), 2);
  EXPECT_EQ(numerical_rank(m, {1e-12, false}), 3);
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd(0, 0)), 0);
}

TEST(Cnot, DefaultModel) {
  const CnotModel model;
  EXPECT_EQ(model.cost(1), 4);
  EXPECT_EQ(model.cost(2), 48);
  EXPECT_EQ(model.cost(3), 320);
  EXPECT_EQ(model.description(), "pauli-ladder");
  EXPECT_THROW(model.cost(0), ValidationError);
  const ConfigurationSpace s({4, 4, 4});
  Ansatz a(s);
  EXPECT_EQ(cnot_count(a), 0);
  const PoolElement single{{ExcitationOperator::single(0, 0, 1)}};
  const PoolElement triple{{ExcitationOperator({{0, 0, 1}, {1, 0, 1}, {2, 0, 1}})}};
  const PoolElement composite{{ExcitationOperator({{0, 0, 1}, {1, 0, 1}}),
                               ExcitationOperator::single(2, 0, 3)}};
  EXPECT_EQ(cnot_count(composite), 52);
  a.append(single);
  a.append(triple);
  a.append(composite);
  EXPECT_EQ(cnot_count(a), cnot_count(single) + cnot_count(triple) + cnot_count(composite));
}

TEST(Cnot, TableModel) {
  const auto dir = std::filesystem::temp_directory_path() / "vibadapt_cnot_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "ok.json") << R"({"costs": [2, 10, 30]})";
    std::ofstream(dir / "bad.json") << R"({"costs": [2, 1]})";
    std::ofstream(dir / "junk.json") << "not json";
  }
  const CnotModel m = CnotModel::load(dir / "ok.json");
  EXPECT_EQ(m.cost(2), 10);
  EXPECT_EQ(m.cost(3), 30);
  EXPECT_THROW(m.cost(4), ValidationError);
  EXPECT_EQ(m.description(), "costs:2,10,30");
  EXPECT_EQ(parse_cnot_model(m.description()).cost(3), 30);
  EXPECT_THROW(CnotModel::load(dir / "bad.json"), ValidationError);
  EXPECT_THROW(CnotModel::load(dir / "junk.json"), ValidationError);
  EXPECT_THROW(CnotModel::load(dir / "missing.json"), ValidationError);
  EXPECT_THROW(CnotModel::from_table({0, 1}), ValidationError);
  EXPECT_THROW(CnotModel::from_table({}), ValidationError);
  std::filesystem::remove_all(dir);
}

TEST(Identities, Examples) {
  TripleDecomposition t;
  t.dims = {3, 3, 3};
  EXPECT_LE(generalized_decomposition_deviation(t), 1e-12);
  EXPECT_LE(particle_hole_decomposition_deviation(t), 1e-12);
  t.i = 2;
  t.a = 1;
  t.k = 1;
  t.c = 2;
  EXPECT_LE(generalized_decomposition_deviation(t), 1e-12);
  EXPECT_THROW(particle_hole_decomposition_deviation(t), ValidationError);
  TripleDecomposition bad;
  bad.dims = {3, 3, 3};
  bad.alpha = bad.b;
  EXPECT_THROW(generalized_decomposition_deviation(bad), ValidationError);
  EXPECT_GT(generalized_decomposition_deviation(bad, false), 0.5);
  const ConfigurationSpace s({4, 3});
  EXPECT_LE(transition_commutator_deviation(s, 0, 0, 1, 1, 3), 1e-14);
  EXPECT_LE(transition_commutator_deviation(s, 0, 2, 1, 0, 2), 1e-14);
}

TEST(Identities, RandomTrials) {
  std::mt19937_64 rng(53);
  const IdentityReport r = verify_decomposition_identities(100, rng);
  EXPECT_EQ(r.trials, 100);
  EXPECT_LE(r.max_deviation(), 1e-12);
}

TEST(Expansion, ConvergesAndCommutes) {
  const ConfigurationSpace s({3, 3, 3});
  const auto a = ExcitationOperator({{0, 0, 1}, {1, 0, 2}});
  const auto b = ExcitationOperator({{1, 0, 1}, {2, 0, 1}});
  double last = 1e9;
  for (int n : {1, 4, 16, 64}) {
    const double e = commutator_expansion_error(s, a, b, 0.5, n);
    EXPECT_LT(e, last);
    last = e;
  }
  EXPECT_LT(last, 0.05);
  const auto c = ExcitationOperator::single(2, 1, 2);
  const auto d = ExcitationOperator::single(0, 0, 2);
  EXPECT_LE(commutator_expansion_error(s, c, d, 0.7, 4), 1e-13);
  EXPECT_THROW(commutator_expansion_error(s, a, b, 0.5, 0), ValidationError);
}

TEST(Disentangle, ReferenceIsEmpty) {
  const ConfigurationSpace s({3, 3});
  const DisentangleResult r = disentangle(s, reference_state(s));
  EXPECT_TRUE(r.sequence.empty());
  EXPECT_EQ(r.sweeps, 0);
  EXPECT_EQ(r.final_overlap, 1.0);
}

TEST(Disentangle, TwoComponentTarget) {
  const ConfigurationSpace s({3, 3});
  const double theta = 0.37;
  StateVector psi = StateVector::Zero(9);
  psi(0) = std::cos(theta);
  psi(static_cast<Eigen::Index>(s.index({2, 1}))) = std::sin(theta);
  const DisentangleResult r = disentangle(s, psi);
  ASSERT_EQ(r.sequence.size(), 1u);
  EXPECT_EQ(r.sequence[0].first.id(), "0:0>2|1:0>1");
  EXPECT_NEAR(r.sequence[0].second, theta, 1e-15);
  EXPECT_LE((apply_sequence(s, r.sequence, reference_state(s)) - psi).norm(), 1e-14);
}

TEST(Disentangle, CoupledGroundState) {
  SystemSpec spec;
  spec.preset = "coupled3";
  const PreparedSystem sys = prepare_system(load_system(spec), spec);
  const ConfigurationSpace s = configuration_space(sys.modal);
  const StateVector target = solve_fvci(sys.modal).ground_vector;
  for (DisentangleOrder order : {DisentangleOrder::RankAscending, DisentangleOrder::RankDescending}) {
    DisentangleOptions opt;
    opt.order = order;
    const DisentangleResult r = disentangle(s, target, opt);
    const StateVector rebuilt = apply_sequence(s, r.sequence, reference_state(s));
    EXPECT_GE(std::abs(rebuilt.dot(target)), 1 - 1e-10);
    EXPECT_GE(r.final_overlap, 1 - 1e-12);
    ASSERT_EQ(r.snapshots.size(), static_cast<std::size_t>(3 * r.sweeps));
    for (std::size_t i = 0; i < r.snapshots.size(); ++i) {
      const auto& snap = r.snapshots[i];
      EXPECT_EQ(snap.sweep, 1 + static_cast<int>(i / 3));
      const int step = static_cast<int>(i % 3);
      EXPECT_EQ(snap.rank, order == DisentangleOrder::RankAscending ? step + 1 : 3 - step);
      EXPECT_EQ(snap.nonzero_before.size(), 3u);
      EXPECT_GE(snap.max_reintroduced, 0.0);
      if (i > 0) {
        EXPECT_EQ(snap.nonzero_before, r.snapshots[i - 1].nonzero_after);
      }
    }
    // Counts before the first pass come straight from the target.
    std::vector<int> counts(3, 0);
    for (std::size_t i = 1; i < s.dimension(); ++i) {
      if (std::abs(target(static_cast<Eigen::Index>(i))) > 1e-10) {
        ++counts[static_cast<std::size_t>(ConfigurationSpace::excitation_rank(s.configuration(i)) - 1)];
      }
    }
    EXPECT_EQ(r.snapshots[0].nonzero_before, counts);
  }
}

TEST(Disentangle, Errors) {
  const ConfigurationSpace s({2, 2});
  StateVector psi = StateVector::Zero(4);
  psi(3) = 1.0;
  EXPECT_THROW(disentangle(s, psi), NumericalError);
  EXPECT_THROW(disentangle(s, StateVector::Zero(4)), ValidationError);
  EXPECT_THROW(disentangle(s, StateVector::Ones(3)), ValidationError);
}
