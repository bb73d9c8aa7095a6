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
#include "vibadapt/ho_operators.hpp"

#include <cmath>
#include <string>

#include "vibadapt/errors.hpp"

namespace vibadapt {
namespace {

// Position operator q = (a + a^dagger) / sqrt(2) on n levels.
Eigen::MatrixXd position(int n) {
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    const double v = std::sqrt(0.5 * (i + 1));
    q(i, i + 1) = v;
    q(i + 1, i) = v;
  }
  return q;
}

// Momentum squared p^2 = -(a - a^dagger)^2 / 2.
Eigen::MatrixXd momentum_squared(int n) {
  Eigen::MatrixXd p2 = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    p2(i, i) = i + 0.5;
    if (i + 2 < n) {
      const double v = -0.5 * std::sqrt(static_cast<double>(i + 1) * (i + 2));
      p2(i, i + 2) = v;
      p2(i + 2, i) = v;
    }
  }
  return p2;
}

}  // namespace

bool is_named_operator(std::string_view name) {
  return name == "q" || name == "q2" || name == "q3" || name == "q4" || name == "kin";
}

Eigen::MatrixXd named_operator(std::string_view name, int size) {
  if (size < 1) throw ValidationError("named_operator: basis size must be positive");
  if (name == "kin") return 0.5 * momentum_squared(size);

  int power = 0;
  if (name == "q") power = 1;
  else if (name == "q2") power = 2;
  else if (name == "q3") power = 3;
  else if (name == "q4") power = 4;
  else throw ValidationError("unknown one-mode operator '" + std::string(name) + "'");

  // q couples only neighbouring levels, so q^k on the first `size` levels is
  // exact when built in a basis padded by k levels.
  const int padded = size + power;
  const Eigen::MatrixXd q = position(padded);
  Eigen::MatrixXd result = q;
  for (int k = 1; k < power; ++k) result = result * q;
  return result.topLeftCorner(size, size);
}

}  // namespace vibadapt
