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

#include <functional>
#include <string>
#include <vector>

namespace vibadapt {

struct OptimizerOptions {
  /// Stop when max_i |df/dx_i| falls to this value.
  double gradient_tolerance = 1e-9;
  /// Objective evaluations per call (each returns value and gradient).
  int max_evaluations = 2000;
};

struct OptimizerResult {
  std::vector<double> x;
  double value = 0.0;
  double gradient_norm = 0.0;  // max-norm at x
  int evaluations = 0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

/// Returns f(x) and writes the gradient into `grad` (already sized).
using Objective = std::function<double(const std::vector<double>& x, std::vector<double>& grad)>;

/// BFGS with a Wolfe line search. The returned point never has a higher
/// objective value than x0.
OptimizerResult minimize_bfgs(const Objective& objective, std::vector<double> x0,
                              const OptimizerOptions& options = {});

}  // namespace vibadapt
