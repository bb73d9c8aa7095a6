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
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "vibadapt/diagnostics.hpp"
#include "vibadapt/hamiltonian.hpp"
#include "vibadapt/optimizer.hpp"
#include "vibadapt/pools.hpp"

namespace vibadapt {

enum class StrategyKind { MaxGrad, MaxGradPlusRandom, TopTwo };

/// "max", "max+rand", "top2".
std::string to_string(StrategyKind kind);
StrategyKind parse_strategy(std::string_view text);

struct SelectionStrategy {
  StrategyKind kind = StrategyKind::MaxGrad;
  std::uint64_t seed = 0;
};

/// Indices into `gradients` chosen by the strategy. Ties in |g| go to the
/// lowest index.
std::vector<std::size_t> select_operators(const SelectionStrategy& strategy,
                                          const std::vector<double>& gradients,
                                          std::mt19937_64& rng);

struct AdaptConfig {
  double gradient_threshold = 1e-7;  // stop once max |g| < this
  int max_iterations = 200;
  OptimizerOptions optimizer;
  bool warm_start = true;
  /// Gradient-converged runs whose error vs FVCI exceeds this are "stalled".
  double stall_threshold = 1e-6;
  /// Extra argmax iterations after gradient convergence.
  int force_iterations = 0;
  bool jacobian = false;
  RankPolicy rank_policy;
  CnotModel cnot;
  int threads = 1;
};

enum class AdaptStatus { Converged, Stalled, IterationCap };
std::string to_string(AdaptStatus status);
AdaptStatus parse_status(std::string_view text);

struct TraceRow {
  int k = 0;
  double energy = 0.0;
  double error_vs_fvci = 0.0;
  double max_gradient_norm = 0.0;
  std::vector<std::string> selected_ops;  // ids added to reach this row
  int n_parameters = 0;
  std::optional<int> jacobian_rank;
  std::int64_t cnot_cumulative = 0;

  bool operator==(const TraceRow&) const = default;
};

struct AdaptTrace {
  std::vector<TraceRow> rows;
  AdaptStatus status = AdaptStatus::IterationCap;
  /// First k with max |g| < threshold, or -1.
  int gradient_converged_at = -1;
  double fvci_energy = 0.0;
  std::vector<std::string> operators;  // final ansatz, application order
  std::vector<double> parameters;
  std::vector<std::string> optimizer_messages;  // per iteration, when not converged
};

struct OptimizeOutcome {
  double energy = 0.0;
  OptimizerResult result;
};

/// Minimizes E(t) over all parameters of `a`, starting from its current
/// parameters (or zeros when warm_start is off), and stores the optimum.
OptimizeOutcome optimize_parameters(const NModeHamiltonian& h, Ansatz& a, const AdaptConfig& cfg);

AdaptTrace run_adapt(const NModeHamiltonian& h, const OperatorPool& pool,
                     const SelectionStrategy& strategy, const AdaptConfig& cfg,
                     double fvci_energy);

/// First k at which the Jacobian rank stops growing and stays constant to the
/// end of the trace, or -1 when there is no plateau (or no rank column).
int rank_plateau_onset(const AdaptTrace& trace);

}  // namespace vibadapt
