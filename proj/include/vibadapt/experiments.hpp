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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "vibadapt/adapt.hpp"
#include "vibadapt/hamiltonian.hpp"
#include "vibadapt/pools.hpp"
#include "vibadapt/trace_io.hpp"
#include "vibadapt/vscf.hpp"

namespace vibadapt {

/// Where the Hamiltonian comes from and how the modal basis is prepared.
struct SystemSpec {
  std::string preset;                    // used when hamiltonian_path is empty
  PresetParams params;
  std::filesystem::path hamiltonian_path;
  /// Modals kept per mode; a single entry applies to every mode. Empty means
  /// the preset default (or no truncation for a file).
  std::vector<int> modals;
  VscfOptions vscf;

  static SystemSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Hamiltonian as given by the spec (primitive basis for presets).
NModeHamiltonian load_system(const SystemSpec& spec);

struct PreparedSystem {
  NModeHamiltonian modal;     // Hamiltonian ADAPT and VCI run on
  bool vscf_solved = false;   // false when the input was already a modal basis
  int vscf_iterations = 0;
  bool vscf_converged = false;
  double vscf_energy = 0.0;   // <ref|H|ref> in the modal basis
  double fvci_energy = 0.0;
  double fvci_residual = 0.0;
  double vcisd_energy = 0.0;
  double vcisdt_energy = 0.0;

  nlohmann::json to_json() const;
};

/// VSCF in the primitive basis (when the input is primitive), modal
/// truncation, then FVCI / VCISD / VCISDT on the result.
PreparedSystem prepare_system(const NModeHamiltonian& h, const SystemSpec& spec);

/// "sd", "sdt", "sd-decoupled", "sdk:<k>".
OperatorPool make_pool(const ConfigurationSpace& space, const std::string& spec, bool generalized,
                       const std::vector<ExcitationOperator>& importance = {});

/// Three-body operators in the order they first enter a trace, followed by
/// the triples that never entered, in pool order. Second value: how many
/// actually entered.
std::pair<std::vector<ExcitationOperator>, int> harvest_importance(
    const std::vector<TraceRow>& rows, const ConfigurationSpace& space);

/// "" or "formula" for the default model, "table:<file>" for a JSON table.
CnotModel parse_cnot_model(const std::string& spec);

nlohmann::json adapt_config_to_json(const AdaptConfig& cfg);
/// Missing keys keep the defaults of `base`.
AdaptConfig adapt_config_from_json(const nlohmann::json& j, AdaptConfig base = {});

struct RunSpec {
  std::string label;
  std::string pool = "sd";
  StrategyKind strategy = StrategyKind::MaxGrad;
  std::uint64_t seed = 0;
};

struct ExperimentSpec {
  std::string name = "experiment";
  std::string kind = "pool_comparison";  // pool_comparison | sdk_ladder | alpha_scan
  SystemSpec system;
  AdaptConfig adapt;
  bool generalized = false;
  std::vector<RunSpec> runs;                   // pool_comparison
  std::vector<int> ks;                         // sdk_ladder; empty = default ladder
  std::vector<double> alphas{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<std::pair<int, int>> pairs{{0, 2}, {1, 2}};
  std::string cnot_model;                      // "" or "table:<file>"
  std::filesystem::path output_dir = "out";
  int parallel_runs = 1;

  static ExperimentSpec from_json(const nlohmann::json& j);
  static ExperimentSpec load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

/// One finished run: trace, its summary and the CSV written to disk.
struct RunRecord {
  RunSpec spec;
  AdaptTrace trace;
  nlohmann::json summary;
  std::filesystem::path csv;
};

struct ExperimentResult {
  nlohmann::json summary;
  std::vector<RunRecord> runs;
};

ExperimentResult run_pool_comparison(const ExperimentSpec& spec);
ExperimentResult run_sdk_ladder(const ExperimentSpec& spec);
ExperimentResult run_alpha_scan(const ExperimentSpec& spec);
/// Dispatches on spec.kind and writes <output_dir>/summary.json.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Runs one ADAPT trajectory and writes <dir>/<label>.csv and .json.
RunRecord execute_run(const NModeHamiltonian& h, const PreparedSystem& sys, const RunSpec& run,
                      const AdaptConfig& cfg, bool generalized,
                      const std::vector<ExcitationOperator>& importance,
                      const std::filesystem::path& dir, const nlohmann::json& context);

}  // namespace vibadapt
