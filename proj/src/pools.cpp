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
#include "vibadapt/pools.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "vibadapt/errors.hpp"

namespace vibadapt {

std::string to_string(PoolKind kind) {
  switch (kind) {
    case PoolKind::SD: return "sd";
    case PoolKind::SDT: return "sdt";
    case PoolKind::SDDecoupled: return "sd-decoupled";
    case PoolKind::SDK: return "sdk";
  }
  return "?";
}

std::string PoolElement::id() const {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += '*';
    s += factors[i].id();
  }
  return s;
}

PoolElement PoolElement::parse(std::string_view id) {
  PoolElement e;
  std::size_t pos = 0;
  while (pos <= id.size()) {
    const std::size_t end = std::min(id.find('*', pos), id.size());
    e.factors.push_back(ExcitationOperator::parse(id.substr(pos, end - pos)));
    pos = end + 1;
  }
  return e;
}

int PoolElement::combined_rank() const {
  int r = 0;
  for (const auto& f : factors) r += f.rank();
  return r;
}

std::optional<std::size_t> OperatorPool::find(const std::string& id) const {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].id() == id) return i;
  }
  return std::nullopt;
}

namespace {

// All particle-hole operators on the given (increasing) modes.
void append_particle_hole(const ConfigurationSpace& space, const std::vector<int>& modes,
                          std::vector<ExcitationOperator>& out) {
  std::vector<int> to(modes.size(), 1);
  while (true) {
    std::vector<Move> moves;
    for (std::size_t i = 0; i < modes.size(); ++i) moves.push_back({modes[i], 0, to[i]});
    out.emplace_back(std::move(moves));
    std::size_t i = modes.size();
    while (i-- > 0) {
      if (++to[i] < space.dims()[static_cast<std::size_t>(modes[i])]) break;
      to[i] = 1;
    }
    if (i == static_cast<std::size_t>(-1)) return;
  }
}

std::vector<ExcitationOperator> operators_of_rank(const ConfigurationSpace& space, int rank) {
  std::vector<ExcitationOperator> out;
  const int m = space.mode_count();
  std::vector<int> modes;
  auto recurse = [&](auto&& self, int start) -> void {
    if (static_cast<int>(modes.size()) == rank) {
      append_particle_hole(space, modes, out);
      return;
    }
    for (int x = start; x < m; ++x) {
      modes.push_back(x);
      self(self, x + 1);
      modes.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

bool disjoint(const ExcitationOperator& a, const ExcitationOperator& b) {
  for (const auto& x : a.moves()) {
    for (const auto& y : b.moves()) {
      if (x.mode == y.mode) return false;
    }
  }
  return true;
}

}  // namespace

OperatorPool generate_pool(const ConfigurationSpace& space, PoolKind kind,
                           const PoolOptions& options) {
  OperatorPool pool;
  pool.kind = kind;
  std::set<std::string> seen;
  auto add = [&](PoolElement e) {
    if (seen.insert(e.id()).second) pool.elements.push_back(std::move(e));
  };

  const auto singles = operators_of_rank(space, 1);
  const auto doubles = operators_of_rank(space, 2);
  for (const auto& op : singles) add({{op}});
  if (options.generalized) {
    for (int m = 0; m < space.mode_count(); ++m) {
      const int n = space.dims()[static_cast<std::size_t>(m)];
      for (int p = 1; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) add({{ExcitationOperator::single(m, p, q)}});
      }
    }
  }
  for (const auto& op : doubles) add({{op}});

  switch (kind) {
    case PoolKind::SD:
      break;
    case PoolKind::SDT:
      for (const auto& op : operators_of_rank(space, 3)) add({{op}});
      break;
    case PoolKind::SDDecoupled:
      for (const auto& two : doubles) {
        for (const auto& one : singles) {
          if (disjoint(two, one)) add({{two, one}});
        }
      }
      break;
    case PoolKind::SDK: {
      if (options.k < 0) throw ValidationError("SD(k): k must be nonnegative");
      if (static_cast<std::size_t>(options.k) > options.importance.size()) {
        throw ValidationError("SD(k): k = " + std::to_string(options.k) +
                              " exceeds the importance ordering length " +
                              std::to_string(options.importance.size()));
      }
      auto ordering = nlohmann::json::array();
      for (int i = 0; i < options.k; ++i) {
        const auto& op = options.importance[static_cast<std::size_t>(i)];
        if (op.rank() != 3) throw ValidationError("SD(k): importance ordering must hold triples");
        op.check(space);
        add({{op}});
        ordering.push_back(op.id());
      }
      pool.metadata["k"] = options.k;
      pool.metadata["importance"] = ordering;
      break;
    }
  }
  pool.metadata["kind"] = to_string(kind);
  pool.metadata["generalized"] = options.generalized;
  return pool;
}

Ansatz::Ansatz(ConfigurationSpace s)
    : space(std::move(s)), reference(static_cast<std::size_t>(space.mode_count()), 0) {}

void Ansatz::append(PoolElement element, double t) {
  for (const auto& f : element.factors) f.check(space);
  sequence.push_back(std::move(element));
  parameters.push_back(t);
}

StateVector Ansatz::reference_vector() const {
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(space.dimension()));
  psi(static_cast<Eigen::Index>(space.index(reference))) = 1.0;
  return psi;
}

StateVector ansatz_state(const Ansatz& a) {
  if (a.parameters.size() != a.sequence.size()) {
    throw ValidationError("ansatz has mismatched parameter count");
  }
  StateVector psi = a.reference_vector();
  for (std::size_t j = 0; j < a.sequence.size(); ++j) {
    for (const auto& f : a.sequence[j].factors) rotate_inplace(a.space, f, a.parameters[j], psi);
  }
  return psi;
}

EnergyGradient ansatz_energy_gradient(const NModeHamiltonian& h, const Ansatz& a) {
  StateVector psi = ansatz_state(a);
  StateVector lambda = apply_hamiltonian(h, psi);
  EnergyGradient out;
  out.energy = psi.dot(lambda);
  out.gradient.assign(a.size(), 0.0);
  // Walk back through the rotations: at each step psi is the state right
  // after the rotation and lambda the adjoint H psi_final pulled back to it.
  for (std::size_t j = a.size(); j-- > 0;) {
    const auto& factors = a.sequence[j].factors;
    const double t = a.parameters[j];
    for (std::size_t f = factors.size(); f-- > 0;) {
      out.gradient[j] += commutator_expectation(a.space, factors[f], psi, lambda);
      rotate_inplace(a.space, factors[f], -t, psi);
      rotate_inplace(a.space, factors[f], -t, lambda);
    }
  }
  return out;
}

std::vector<double> ansatz_gradient(const NModeHamiltonian& h, const Ansatz& a) {
  return ansatz_energy_gradient(h, a).gradient;
}

std::vector<double> pool_gradients(const NModeHamiltonian& h, const StateVector& psi,
                                   const OperatorPool& pool, int threads) {
  const ConfigurationSpace space = configuration_space(h);
  const StateVector sigma = apply_hamiltonian(h, psi);
  std::vector<double> g(pool.size(), 0.0);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double v = 0.0;
      for (const auto& f : pool.elements[i].factors) {
        v += commutator_expectation(space, f, psi, sigma);
      }
      g[i] = v;
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), pool.size());
  if (workers <= 1) {
    work(0, pool.size());
    return g;
  }
  std::vector<std::thread> team;
  const std::size_t chunk = (pool.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(pool.size(), begin + chunk);
    if (begin < end) team.emplace_back(work, begin, end);
  }
  for (auto& t : team) t.join();
  return g;
}

}  // namespace vibadapt
