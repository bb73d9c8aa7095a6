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

#include <string_view>

#include <Eigen/Dense>

namespace vibadapt {

/// Matrix of a named one-mode operator in the harmonic-oscillator
/// eigenbasis |0>, ..., |size-1> of the dimensionless coordinate q.
///
/// Supported names: "q", "q2", "q3", "q4" (powers of q) and "kin"
/// (the kinetic operator p^2 / 2). Elements are exact: products are
/// formed in an enlarged basis before truncation.
Eigen::MatrixXd named_operator(std::string_view name, int size);

bool is_named_operator(std::string_view name);

}  // namespace vibadapt
