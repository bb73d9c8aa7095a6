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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "vibadapt/configuration.hpp"
#include "vibadapt/engine.hpp"
#include "vibadapt/excitation.hpp"
#include "vibadapt/hamiltonian.hpp"

namespace vibadapt {

enum class PoolKind { SD, SDT, SDDecoupled, SDK };

std::string to_string(PoolKind kind);

/// One selectable pool entry. Ordinary elements hold a single operator;
/// decoupled-triples elements hold a two-body and a one-body operator on
/// disjoint modes that share one parameter. `factors` is in application
/// order (factors[0] acts on the state first).
struct PoolElement {
  std::vector<ExcitationOperator> factors;

  /// Factor ids joined with '*', e.g. "0:0>1|1:0>2*2:0>1".
  std::string id() const;
  static PoolElement parse(std::string_view id);
  int combined_rank() const;

  bool operator==(const PoolElement&) const = default;
};

struct PoolOptions {
  /// Add generalized singles p -> q (p < q) alongside particle-hole ones.
  bool generalized = false;
  /// SD_K: number of three-body operators taken from `importance`.
  int k = 0;
  std::vector<ExcitationOperator> importance;
};

struct OperatorPool {
  PoolKind kind = PoolKind::SD;
  std::vector<PoolElement> elements;
  nlohmann::json metadata = nlohmann::json::object();

  std::optional<std::size_t> find(const std::string& id) const;
  std::size_t size() const { return elements.size(); }
};

/// SD: particle-hole singles and doubles. SDT: SD plus triples. SD_DECOUPLED:
/// SD plus every (two-body, one-body) product on three distinct modes.
/// SD_K: SD plus the first k entries of options.importance.
OperatorPool generate_pool(const ConfigurationSpace& space, PoolKind kind,
                           const PoolOptions& options = {});

/// Ordered product of exponentials acting on a reference configuration.
/// sequence[0] is applied to the reference first.
struct Ansatz {
  ConfigurationSpace space;
  Configuration reference;
  std::vector<PoolElement> sequence;
  std::vector<double> parameters;

  explicit Ansatz(ConfigurationSpace s);

  std::size_t size() const { return sequence.size(); }
  void append(PoolElement element, double t = 0.0);
  StateVector reference_vector() const;
};

StateVector ansatz_state(const Ansatz& a);

struct EnergyGradient {
  double energy = 0.0;
  std::vector<double> gradient;
};

/// Energy and dE/dt for every parameter with one forward and one backward
/// sweep (a single application of H).
EnergyGradient ansatz_energy_gradient(const NModeHamiltonian& h, const Ansatz& a);

std::vector<double> ansatz_gradient(const NModeHamiltonian& h, const Ansatz& a);

/// Pool gradients <psi|[H, kappa_mu]|psi> for every element; composite
/// elements sum their factor gradients. `threads` > 1 splits the elements
/// across workers.
std::vector<double> pool_gradients(const NModeHamiltonian& h, const StateVector& psi,
                                   const OperatorPool& pool, int threads = 1);

}  // namespace vibadapt
