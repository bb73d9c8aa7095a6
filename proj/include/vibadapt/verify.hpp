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
#include <string>

#include "json.hpp"

#include "vibadapt/hamiltonian.hpp"

namespace vibadapt {

struct SuiteReport {
  std::string name;
  bool passed = false;
  nlohmann::json details;
};

/// Random valid index tuples for both triple decompositions plus elementary
/// transition commutators; passes at max deviation <= 1e-13. Also checks
/// that violating the alpha constraint breaks the identity.
SuiteReport verify_identities(int trials = 100, std::uint64_t seed = 0);

/// Random overlapping operator pairs: the product-formula error must strictly
/// decrease over N = 1, 4, 16, 64. A commuting pair must give <= 1e-13.
SuiteReport verify_expansion(int pairs = 20, std::uint64_t seed = 0);

/// Disentangles the FVCI ground state of `h` and reconstructs it.
SuiteReport verify_disentangle(const NModeHamiltonian& h);

/// FVCI ground state of the default coupled3 system in its VSCF modal basis.
SuiteReport verify_disentangle_default();

}  // namespace vibadapt
