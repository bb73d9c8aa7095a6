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

#include <gtest/gtest.h>

#include "vibadapt/optimizer.hpp"

using namespace vibadapt;

TEST(Optimizer, Quadratic) {
  const Objective f = [](const std::vector<double>& x, std::vector<double>& g) {
    g = {2 * (x[0] - 1), 20 * (x[1] + 2)};
    return (x[0] - 1) * (x[0] - 1) + 10 * (x[1] + 2) * (x[1] + 2);
  };
  const OptimizerResult r = minimize_bfgs(f, {0, 0});
  EXPECT_TRUE(r.converged) << r.message;
  EXPECT_NEAR(r.x[0], 1, 1e-9);
  EXPECT_NEAR(r.x[1], -2, 1e-9);
  EXPECT_LE(r.gradient_norm, 1e-9);
}

TEST(Optimizer, Rosenbrock) {
  const Objective f = [](const std::vector<double>& x, std::vector<double>& g) {
    const double a = 1 - x[0], b = x[1] - x[0] * x[0];
    g = {-2 * a - 400 * x[0] * b, 200 * b};
    return a * a + 100 * b * b;
  };
  const OptimizerResult r = minimize_bfgs(f, {-1.2, 1.0});
  EXPECT_TRUE(r.converged) << r.message;
  EXPECT_NEAR(r.x[0], 1, 1e-6);
  EXPECT_NEAR(r.x[1], 1, 1e-6);
  EXPECT_LE(r.evaluations, 2000);
}

TEST(Optimizer, NeverAboveStart) {
  // Evaluation budget too small to converge.
  const Objective f = [](const std::vector<double>& x, std::vector<double>& g) {
    g = {std::cos(x[0]) + 0.2 * x[0]};
    return std::sin(x[0]) + 0.1 * x[0] * x[0];
  };
  std::vector<double> g0;
  const double start = f({2.0}, g0);
  for (int budget : {1, 2, 3, 5, 50}) {
    const OptimizerResult r = minimize_bfgs(f, {2.0}, {1e-9, budget});
    EXPECT_LE(r.value, start);
    EXPECT_LE(r.evaluations, budget);
    std::vector<double> g;
    EXPECT_EQ(f(r.x, g), r.value);
  }
}

TEST(Optimizer, EmptyAndStationary) {
  const Objective f = [](const std::vector<double>& x, std::vector<double>& g) {
    g.assign(x.size(), 0.0);
    return 3.0;
  };
  EXPECT_TRUE(minimize_bfgs(f, {}).converged);
  const OptimizerResult r = minimize_bfgs(f, {0.5});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.x[0], 0.5);
  EXPECT_EQ(r.value, 3.0);
}
