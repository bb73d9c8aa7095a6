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
#include <algorithm>
#include <fstream>
#include <limits>

#include "json.hpp"

#include "vibadapt/diagnostics.hpp"
#include "vibadapt/errors.hpp"

namespace vibadapt {

Eigen::MatrixXd compute_jacobian(const Ansatz& a) {
  struct Step {
    const ExcitationOperator* op;
    std::size_t param;
  };
  std::vector<Step> steps;
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (const auto& f : a.sequence[j].factors) steps.push_back({&f, j});
  }
  const auto dim = static_cast<Eigen::Index>(a.space.dimension());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim, static_cast<Eigen::Index>(a.size()));

  StateVector psi = a.reference_vector();
  for (std::size_t l = 0; l < steps.size(); ++l) {
    const double t = a.parameters[steps[l].param];
    rotate_inplace(a.space, *steps[l].op, t, psi);
    // Derivative of rotation l inserted right after it, then carried
    // through the remaining rotations.
    StateVector column = apply_kappa(a.space, *steps[l].op, psi);
    for (std::size_t r = l + 1; r < steps.size(); ++r) {
      rotate_inplace(a.space, *steps[r].op, a.parameters[steps[r].param], column);
    }
    d.col(static_cast<Eigen::Index>(steps[l].param)) += column;
  }
  return d;
}

namespace {

Eigen::VectorXd singular_values(const Eigen::MatrixXd& d) {
  if (d.size() == 0) return Eigen::VectorXd();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(d);
  return svd.singularValues();
}

int rank_from_values(const Eigen::VectorXd& sv, Eigen::Index rows, Eigen::Index cols,
                     const RankPolicy& policy) {
  if (sv.size() == 0) return 0;
  double cutoff = policy.absolute;
  if (policy.use_relative) {
    const double rel = static_cast<double>(std::max(rows, cols)) *
                       std::numeric_limits<double>::epsilon() * sv(0);
    cutoff = std::max(cutoff, rel);
  }
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) r += sv(i) > cutoff;
  return r;
}

}  // namespace

int numerical_rank(const Eigen::MatrixXd& d, const RankPolicy& policy) {
  return rank_from_values(singular_values(d), d.rows(), d.cols(), policy);
}

JacobianReport jacobian_report(const Ansatz& a, const RankPolicy& policy) {
  const Eigen::MatrixXd d = compute_jacobian(a);
  const Eigen::VectorXd sv = singular_values(d);
  JacobianReport rep;
  rep.k = static_cast<int>(a.size());
  rep.rank = rank_from_values(sv, d.rows(), d.cols(), policy);
  rep.singular_values.assign(sv.data(), sv.data() + sv.size());
  const int excitations = static_cast<int>(a.space.dimension()) - 1;
  rep.expected_rank = std::min(excitations, rep.k);
  rep.is_critical = rep.rank < rep.expected_rank;
  return rep;
}

// ---------------------------------------------------------------------------

CnotModel CnotModel::from_table(std::vector<std::int64_t> table) {
  if (table.empty()) throw ValidationError("CNOT table must not be empty");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] <= 0) throw ValidationError("CNOT costs must be positive");
    if (i > 0 && table[i] < table[i - 1]) {
      throw ValidationError("CNOT costs must be nondecreasing in rank");
    }
  }
  CnotModel m;
  m.table_ = std::move(table);
  return m;
}

CnotModel CnotModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open CNOT table " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("cannot parse CNOT table " + path.string() + ": " + e.what());
  }
  if (!doc.contains("costs") || !doc["costs"].is_array()) {
    throw ValidationError("CNOT table needs a 'costs' list");
  }
  return from_table(doc["costs"].get<std::vector<std::int64_t>>());
}

std::int64_t CnotModel::cost(int rank) const {
  if (rank < 1) throw ValidationError("operator rank must be positive");
  if (!table_.empty()) {
    if (static_cast<std::size_t>(rank) > table_.size()) {
      throw ValidationError("CNOT table has no entry for rank " + std::to_string(rank));
    }
    return table_[static_cast<std::size_t>(rank - 1)];
  }
  const std::int64_t weight = 2 * rank;
  return 2 * (weight - 1) * (std::int64_t{1} << (weight - 1));
}

std::string CnotModel::description() const {
  if (table_.empty()) return "pauli-ladder";
  std::string s = "costs:";
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(table_[i]);
  }
  return s;
}

std::int64_t cnot_count(const PoolElement& e, const CnotModel& model) {
  std::int64_t total = 0;
  for (const auto& f : e.factors) total += model.cost(f.rank());
  return total;
}

std::int64_t cnot_count(const Ansatz& a, const CnotModel& model) {
  std::int64_t total = 0;
  for (const auto& e : a.sequence) total += cnot_count(e, model);
  return total;
}

}  // namespace vibadapt
