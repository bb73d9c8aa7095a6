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

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

namespace vibadapt {

/// Mode labels and per-mode basis sizes.
///
/// `primitive_sizes` is the dimension of the underlying one-mode primitive
/// basis; `modal_counts` is the dimension the Hamiltonian factors currently
/// live in (equal to the primitive size before the modal transformation).
struct ModeSpace {
  std::vector<int> primitive_sizes;
  std::vector<int> modal_counts;

  static ModeSpace primitive(std::vector<int> sizes);

  int mode_count() const { return static_cast<int>(modal_counts.size()); }
  /// Number of Hartree products, i.e. the product of the modal counts.
  std::size_t dimension() const;
  void validate() const;

  bool operator==(const ModeSpace&) const = default;
};

/// coefficient * (factor_0 on modes[0]) x (factor_1 on modes[1]) x ...
struct HamiltonianTerm {
  std::vector<int> modes;
  double coefficient = 0.0;
  std::vector<Eigen::MatrixXd> factors;
};

/// Sum-over-mode-combinations Hamiltonian. Immutable once constructed; the
/// constructor validates every term against the mode space.
class NModeHamiltonian {
 public:
  NModeHamiltonian(ModeSpace space, std::vector<HamiltonianTerm> terms,
                   nlohmann::json metadata = nlohmann::json::object());

  const ModeSpace& space() const { return space_; }
  const std::vector<HamiltonianTerm>& terms() const { return terms_; }
  const nlohmann::json& metadata() const { return metadata_; }
  int mc_level() const { return mc_level_; }
  int mode_count() const { return space_.mode_count(); }
  std::size_t dimension() const { return space_.dimension(); }

 private:
  ModeSpace space_;
  std::vector<HamiltonianTerm> terms_;
  nlohmann::json metadata_;
  int mc_level_ = 0;
};

/// Term-by-term equality of modes, coefficients and factor matrices.
bool same_terms(const NModeHamiltonian& a, const NModeHamiltonian& b, double tol = 0.0);

/// <bra|term|ket> for two configurations (one modal index per mode).
double term_matrix_element(const HamiltonianTerm& term, const std::vector<int>& bra,
                           const std::vector<int>& ket);

/// Dense matrix in the canonical configuration ordering, assembled entry by
/// entry from the factorized matrix-element formula. Refuses dimensions
/// above `cap`.
Eigen::MatrixXd dense_matrix(const NModeHamiltonian& h, std::size_t cap = 4096);

/// Multiply every term acting on exactly one of `pairs` by alpha.
NModeHamiltonian scale_pair_couplings(const NModeHamiltonian& h, double alpha,
                                      const std::vector<std::pair<int, int>>& pairs);

/// Keep only terms with at most n active modes.
NModeHamiltonian restrict_mc_level(const NModeHamiltonian& h, int n);

// JSON file format:
// {"mode_count": M, "primitive_sizes": [...], "modal_counts": [...] (optional),
//  "terms": [{"modes": [...], "coeff": c, "factors": ["q2" | [[...], ...]]}],
//  "metadata": {...}}
NModeHamiltonian hamiltonian_from_json(const nlohmann::json& doc);
nlohmann::json hamiltonian_to_json(const NModeHamiltonian& h);
NModeHamiltonian load_hamiltonian(const std::filesystem::path& path);
void save_hamiltonian(const NModeHamiltonian& h, const std::filesystem::path& path);

using PresetParams = std::map<std::string, double>;

/// Synthetic coupled-oscillator systems in the harmonic-oscillator primitive
/// basis. Registered names: "coupled3", "coupled6". See presets.cpp for the
/// parameter table and ranges.
NModeHamiltonian build_model_preset(const std::string& name, const PresetParams& params = {});

std::vector<std::string> preset_names();

/// Modal count per mode used by default for a preset (4 for three modes,
/// 3 for six).
int default_modal_count(const std::string& preset);

}  // namespace vibadapt
