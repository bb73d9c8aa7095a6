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
#include "vibadapt/adapt.hpp"

#include <algorithm>
#include <cmath>

#include "vibadapt/errors.hpp"

namespace vibadapt {

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::MaxGrad: return "max";
    case StrategyKind::MaxGradPlusRandom: return "max+rand";
    case StrategyKind::TopTwo: return "top2";
  }
  return "?";
}

StrategyKind parse_strategy(std::string_view text) {
  if (text == "max") return StrategyKind::MaxGrad;
  if (text == "max+rand") return StrategyKind::MaxGradPlusRandom;
  if (text == "top2") return StrategyKind::TopTwo;
  throw ValidationError("unknown strategy '" + std::string(text) + "' (max, max+rand, top2)");
}

std::string to_string(AdaptStatus status) {
  switch (status) {
    case AdaptStatus::Converged: return "converged";
    case AdaptStatus::Stalled: return "stalled";
    case AdaptStatus::IterationCap: return "iteration_cap";
  }
  return "?";
}

AdaptStatus parse_status(std::string_view text) {
  if (text == "converged") return AdaptStatus::Converged;
  if (text == "stalled") return AdaptStatus::Stalled;
  if (text == "iteration_cap") return AdaptStatus::IterationCap;
  throw ValidationError("unknown status '" + std::string(text) + "'");
}

namespace {

std::size_t argmax_abs(const std::vector<double>& g, std::optional<std::size_t> skip = {}) {
  std::size_t best = g.size();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (skip && *skip == i) continue;
    if (best == g.size() || std::abs(g[i]) > std::abs(g[best])) best = i;
  }
  return best;
}

double max_abs(const std::vector<double>& g) {
  double m = 0.0;
  for (double v : g) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

std::vector<std::size_t> select_operators(const SelectionStrategy& strategy,
                                          const std::vector<double>& gradients,
                                          std::mt19937_64& rng) {
  if (gradients.empty()) throw ValidationError("select_operators: empty gradient list");
  const std::size_t first = argmax_abs(gradients);
  if (strategy.kind == StrategyKind::MaxGrad) return {first};
  if (gradients.size() < 2) {
    throw ValidationError("strategy " + to_string(strategy.kind) + " needs at least two elements");
  }
  if (strategy.kind == StrategyKind::TopTwo) return {first, argmax_abs(gradients, first)};
  std::uniform_int_distribution<std::size_t> pick(0, gradients.size() - 2);
  std::size_t second = pick(rng);
  if (second >= first) ++second;
  return {first, second};
}

OptimizeOutcome optimize_parameters(const NModeHamiltonian& h, Ansatz& a, const AdaptConfig& cfg) {
  OptimizeOutcome out;
  if (a.size() == 0) {
    out.energy = energy(h, a.reference_vector());
    out.result.value = out.energy;
    out.result.converged = true;
    out.result.message = "empty ansatz";
    return out;
  }
  Ansatz work = a;
  const Objective objective = [&](const std::vector<double>& x, std::vector<double>& grad) {
    work.parameters = x;
    EnergyGradient eg = ansatz_energy_gradient(h, work);
    grad = std::move(eg.gradient);
    return eg.energy;
  };
  std::vector<double> x0 = a.parameters;
  if (!cfg.warm_start) std::fill(x0.begin(), x0.end(), 0.0);
  out.result = minimize_bfgs(objective, std::move(x0), cfg.optimizer);
  a.parameters = out.result.x;
  out.energy = out.result.value;
  return out;
}

AdaptTrace run_adapt(const NModeHamiltonian& h, const OperatorPool& pool,
                     const SelectionStrategy& strategy, const AdaptConfig& cfg,
                     double fvci_energy) {
  if (!(cfg.gradient_threshold > 0.0)) throw ValidationError("gradient threshold must be > 0");
  if (cfg.max_iterations < 0) throw ValidationError("max_iterations must be >= 0");
  if (cfg.force_iterations < 0) throw ValidationError("force_iterations must be >= 0");
  if (pool.size() == 0) throw ValidationError("operator pool is empty");

  const ConfigurationSpace space = configuration_space(h);
  std::mt19937_64 rng(strategy.seed);
  Ansatz ansatz(space);
  AdaptTrace trace;
  trace.fvci_energy = fvci_energy;

  double current = energy(h, ansatz.reference_vector());
  std::vector<std::string> selected;
  int forced_left = cfg.force_iterations;

  for (int k = 0;; ++k) {
    const StateVector psi = ansatz_state(ansatz);
    const std::vector<double> g = pool_gradients(h, psi, pool, cfg.threads);
    const double gmax = max_abs(g);

    TraceRow row;
    row.k = k;
    row.energy = current;
    row.error_vs_fvci = current - fvci_energy;
    row.max_gradient_norm = gmax;
    row.selected_ops = selected;
    row.n_parameters = static_cast<int>(ansatz.size());
    if (cfg.jacobian) row.jacobian_rank = jacobian_report(ansatz, cfg.rank_policy).rank;
    row.cnot_cumulative = cnot_count(ansatz, cfg.cnot);
    trace.rows.push_back(std::move(row));

    bool forced = false;
    if (trace.gradient_converged_at < 0 && gmax < cfg.gradient_threshold) {
      trace.gradient_converged_at = k;
      trace.status = trace.rows.back().error_vs_fvci > cfg.stall_threshold ? AdaptStatus::Stalled
                                                                          : AdaptStatus::Converged;
    }
    if (trace.gradient_converged_at >= 0) {
      if (forced_left == 0) break;
      --forced_left;
      forced = true;
    } else if (k >= cfg.max_iterations) {
      trace.status = AdaptStatus::IterationCap;
      break;
    }

    std::vector<std::size_t> picks;
    if (forced) {
      picks = {argmax_abs(g)};
    } else {
      picks = select_operators(strategy, g, rng);
    }
    selected.clear();
    for (std::size_t idx : picks) {
      ansatz.append(pool.elements[idx], 0.0);
      selected.push_back(pool.elements[idx].id());
    }
    const OptimizeOutcome opt = optimize_parameters(h, ansatz, cfg);
    if (!opt.result.converged) {
      trace.optimizer_messages.push_back("k=" + std::to_string(k + 1) + ": " + opt.result.message);
    }
    current = opt.energy;
  }

  for (const auto& e : ansatz.sequence) trace.operators.push_back(e.id());
  trace.parameters = ansatz.parameters;
  return trace;
}

int rank_plateau_onset(const AdaptTrace& trace) {
  const auto& rows = trace.rows;
  if (rows.size() < 2 || !rows.back().jacobian_rank) return -1;
  const int last = *rows.back().jacobian_rank;
  std::size_t start = rows.size() - 1;
  while (start > 0 && rows[start - 1].jacobian_rank && *rows[start - 1].jacobian_rank == last) {
    --start;
  }
  if (start == rows.size() - 1) return -1;
  return rows[start].k;
}

}  // namespace vibadapt
