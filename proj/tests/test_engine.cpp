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
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "vibadapt/configuration.hpp"
#include "vibadapt/engine.hpp"
#include "vibadapt/errors.hpp"
#include "vibadapt/kernels/kernels.hpp"
#include "vibadapt/vci.hpp"

using namespace vibadapt;

TEST(Configurations, Enumeration) {
  const ConfigurationSpace s444({4, 4, 4});
  EXPECT_EQ(s444.dimension(), 64u);
  EXPECT_EQ(s444.configuration(0), (Configuration{0, 0, 0}));
  const auto all3 = ConfigurationSpace({3}).enumerate();
  EXPECT_EQ(all3, (std::vector<Configuration>{{0}, {1}, {2}}));
  const ConfigurationSpace s23({2, 3});
  EXPECT_EQ(s23.index({1, 2}), 5u);
  for (std::size_t i = 0; i < s444.dimension(); ++i) {
    EXPECT_EQ(s444.index(s444.configuration(i)), i);
    EXPECT_EQ(i, oracle::flat_index({4, 4, 4}, s444.configuration(i)));
  }
  EXPECT_EQ(ConfigurationSpace::excitation_rank({0, 2, 1}), 2);
}

TEST(Configurations, Cap) {
  EXPECT_THROW(ConfigurationSpace(std::vector<int>(7, 10)), ValidationError);
  EXPECT_NO_THROW(ConfigurationSpace(std::vector<int>(6, 10)));
  EXPECT_THROW(ConfigurationSpace({4, 4}, 10), ValidationError);
}

TEST(Excitation, ValidationAndIds) {
  EXPECT_THROW(ExcitationOperator({{0, 1, 1}}), ValidationError);
  EXPECT_THROW(ExcitationOperator({{0, 0, 1}, {0, 1, 2}}), ValidationError);
  const ExcitationOperator op({{2, 0, 3}, {0, 0, 1}});
  EXPECT_EQ(op.moves()[0].mode, 0);
  EXPECT_EQ(op.id(), "0:0>1|2:0>3");
  EXPECT_EQ(ExcitationOperator::parse(op.id()), op);
  EXPECT_TRUE(op.is_particle_hole());
  EXPECT_FALSE(ExcitationOperator::single(0, 1, 2).is_particle_hole());
  EXPECT_THROW(ExcitationOperator::parse("0:0>"), ValidationError);
  EXPECT_THROW(op.check(ConfigurationSpace({2, 2, 3})), ValidationError);
}

TEST(ApplyHamiltonian, MatchesDenseOracle) {
  std::mt19937_64 rng(21);
  for (int level = 1; level <= 3; ++level) {
    const NModeHamiltonian h = oracle::random_hamiltonian({4, 3, 5}, level, rng);
    const Eigen::MatrixXd d = oracle::dense_hamiltonian(h);
    for (int trial = 0; trial < 5; ++trial) {
      const Eigen::VectorXd psi = oracle::random_state(h.dimension(), rng);
      EXPECT_LE((apply_hamiltonian(h, psi) - d * psi).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
  const NModeHamiltonian coupled = build_model_preset("coupled3", {{"n", 3}, {"primitives", 7}});
  const Eigen::VectorXd psi = oracle::random_state(coupled.dimension(), rng);
  EXPECT_LE((apply_hamiltonian(coupled, psi) - oracle::dense_hamiltonian(coupled) * psi)
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
}

TEST(ApplyHamiltonian, TrivialCases) {
  const NModeHamiltonian zero(ModeSpace::primitive({3, 2}), {});
  EXPECT_EQ(apply_hamiltonian(zero, Eigen::VectorXd::Ones(6)).cwiseAbs().maxCoeff(), 0.0);
  // Uncoupled harmonic: the reference is an eigenstate with sum w/2.
  const NModeHamiltonian harm = build_model_preset(
      "coupled3", {{"cubic", 0}, {"quartic", 0}, {"bilinear", 0}, {"quadquad", 0}, {"primitives", 6}});
  const StateVector ref = reference_state(configuration_space(harm));
  const double e0 = 0.5 * (1.00 + 1.45 + 2.10);
  EXPECT_LT((apply_hamiltonian(harm, ref) - e0 * ref).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_NEAR(energy(harm, ref), e0, 1e-13);
  EXPECT_THROW(apply_hamiltonian(harm, Eigen::VectorXd::Ones(5)), ValidationError);
}

TEST(Rotation, QuarterTurnAndIdentity) {
  const ConfigurationSpace s({2, 2});
  const StateVector ref = reference_state(s);
  const auto op = ExcitationOperator::single(0, 0, 1);
  EXPECT_EQ(apply_excitation_rotation(s, op, 0.0, ref), ref);
  const StateVector r = apply_excitation_rotation(s, op, M_PI / 2, ref);
  EXPECT_NEAR(r(0), 0.0, 1e-16);
  EXPECT_NEAR(r(static_cast<Eigen::Index>(s.index({1, 0}))), 1.0, 1e-16);
}

TEST(Rotation, MatchesDenseExponential) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> nd(2, 5), md(1, 4);
  std::uniform_real_distribution<double> td(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> dims(md(rng));
    for (auto& d : dims) d = nd(rng);
    const ConfigurationSpace s(dims);
    if (s.dimension() > 1000) continue;
    const int rank = std::uniform_int_distribution<int>(1, static_cast<int>(dims.size()))(rng);
    const auto op = oracle::random_operator(dims, rank, rng);
    const double t = td(rng);
    const Eigen::VectorXd psi = oracle::random_state(s.dimension(), rng);
    const Eigen::VectorXd want = oracle::expm(t * oracle::kappa(dims, op)) * psi;
    EXPECT_LE((apply_excitation_rotation(s, op, t, psi) - want).cwiseAbs().maxCoeff(), 1e-12)
        << op.id();
  }
}

TEST(Rotation, NormInverseAndOrdering) {
  std::mt19937_64 rng(23);
  const std::vector<int> dims{3, 4, 3};
  const ConfigurationSpace s(dims);
  for (int trial = 0; trial < 50; ++trial) {
    const auto op = oracle::random_operator(dims, 1 + trial % 3, rng);
    const Eigen::VectorXd psi = oracle::random_state(s.dimension(), rng);
    const StateVector fwd = apply_excitation_rotation(s, op, 0.9, psi);
    EXPECT_NEAR(fwd.norm(), 1.0, 1e-12);
    EXPECT_LE((apply_excitation_rotation(s, op, -0.9, fwd) - psi).cwiseAbs().maxCoeff(), 1e-12);
  }
  // Overlapping operators do not commute.
  const auto k1 = ExcitationOperator::single(0, 0, 1);
  const auto k2 = ExcitationOperator({{0, 1, 2}, {1, 0, 1}});
  const StateVector psi = oracle::random_state(s.dimension(), rng);
  const StateVector ab = apply_excitation_rotation(s, k2, 0.4, apply_excitation_rotation(s, k1, 0.7, psi));
  const StateVector ba = apply_excitation_rotation(s, k1, 0.7, apply_excitation_rotation(s, k2, 0.4, psi));
  EXPECT_GT((ab - ba).norm(), 1e-3);
}

TEST(Rotation, FastPathEqualsDenseKappa) {
  const std::vector<int> dims{4, 3, 3};
  const ConfigurationSpace s(dims);
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    const auto op = oracle::random_operator(dims, 1 + trial % 3, rng);
    EXPECT_EQ((dense_kappa(s, op) - oracle::kappa(dims, op)).cwiseAbs().maxCoeff(), 0.0);
    const Eigen::VectorXd psi = oracle::random_state(s.dimension(), rng);
    EXPECT_LE((apply_kappa(s, op, psi) - oracle::kappa(dims, op) * psi).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Rotation, KernelVariantsAgree) {
  if (!kernels::avx2_table() || !kernels::cpu_supports_avx2()) GTEST_SKIP();
  const std::string before = kernels::active().name;
  std::mt19937_64 rng(25);
  const std::vector<int> dims{5, 6, 7};
  const ConfigurationSpace s(dims);
  const NModeHamiltonian h = oracle::random_hamiltonian(dims, 3, rng);
  const Eigen::VectorXd psi = oracle::random_state(s.dimension(), rng);
  const auto op = ExcitationOperator({{0, 0, 2}, {2, 1, 3}});
  ASSERT_TRUE(kernels::select("scalar"));
  const StateVector a1 = apply_excitation_rotation(s, op, 0.3, psi);
  const StateVector h1 = apply_hamiltonian(h, psi);
  const double g1 = pool_gradient(h, psi, op);
  ASSERT_TRUE(kernels::select("avx2"));
  EXPECT_LE((apply_excitation_rotation(s, op, 0.3, psi) - a1).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((apply_hamiltonian(h, psi) - h1).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_NEAR(pool_gradient(h, psi, op), g1, 1e-13);
  kernels::select(before);
}

TEST(Energy, EigenvectorAndSign) {
  const NModeHamiltonian h = build_model_preset("coupled3", {{"primitives", 5}});
  const VciResult f = solve_fvci(h);
  EXPECT_NEAR(energy(h, f.ground_vector), f.energy, 1e-12);
  EXPECT_EQ(energy(h, -f.ground_vector), energy(h, f.ground_vector));
}

TEST(PoolGradient, FiniteDifference) {
  std::mt19937_64 rng(26);
  const std::vector<int> dims{3, 4, 3};
  const ConfigurationSpace s(dims);
  for (int trial = 0; trial < 50; ++trial) {
    const NModeHamiltonian h = oracle::random_hamiltonian(dims, 1 + trial % 3, rng);
    const Eigen::VectorXd psi = oracle::random_state(s.dimension(), rng);
    const auto op = oracle::random_operator(dims, 1 + trial % 3, rng);
    const double step = 1e-5;
    const double fd = (energy(h, apply_excitation_rotation(s, op, step, psi)) -
                       energy(h, apply_excitation_rotation(s, op, -step, psi))) /
                      (2 * step);
    const double g = pool_gradient(h, psi, op);
    EXPECT_LE(std::abs(g - fd), 1e-6 * std::max(1.0, std::abs(fd))) << trial;
  }
}

TEST(PoolGradient, VanishingCases) {
  const NModeHamiltonian h = build_model_preset("coupled3", {{"primitives", 4}});
  const VciResult f = solve_fvci(h);
  const ConfigurationSpace s = configuration_space(h);
  for (int m = 0; m < 3; ++m)
    for (int a = 1; a < 4; ++a)
      EXPECT_LE(std::abs(pool_gradient(h, f.ground_vector, ExcitationOperator::single(m, 0, a))), 1e-10);
  // kappa psi = 0 when neither side of any pair is populated.
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(s.dimension()));
  psi(static_cast<Eigen::Index>(s.index({3, 3, 3}))) = 1.0;
  EXPECT_EQ(pool_gradient(h, psi, ExcitationOperator::single(0, 0, 1)), 0.0);
}

TEST(ClusterExponential, Oracle) {
  const std::vector<int> dims{3, 3};
  const ConfigurationSpace s(dims);
  std::mt19937_64 rng(27);
  const Eigen::VectorXd psi = oracle::random_state(9, rng);
  const auto k1 = ExcitationOperator::single(0, 0, 1);
  const auto k2 = ExcitationOperator({{0, 0, 2}, {1, 0, 1}});
  EXPECT_LE((apply_cluster_exponential(s, {{k1, 0.0}, {k2, 0.0}}, psi) - psi).norm(), 1e-15);
  EXPECT_LE((apply_cluster_exponential(s, {{k1, 0.6}}, psi) - apply_excitation_rotation(s, k1, 0.6, psi))
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
  const StateVector u = apply_cluster_exponential(s, {{k1, 0.6}, {k2, -1.1}}, psi);
  EXPECT_NEAR(u.norm(), 1.0, 1e-12);
  const Eigen::MatrixXd gen = 0.6 * oracle::kappa(dims, k1) - 1.1 * oracle::kappa(dims, k2);
  EXPECT_LE((u - oracle::expm(gen) * psi).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(apply_cluster_exponential(ConfigurationSpace({11, 10, 10}), {{k1, 0.1}},
                                         Eigen::VectorXd::Zero(1100)),
               NumericalError);
}
