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
#include "vibadapt/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <string>

#include "vibadapt/configuration.hpp"
#include "vibadapt/errors.hpp"
#include "vibadapt/ho_operators.hpp"

namespace vibadapt {

ModeSpace ModeSpace::primitive(std::vector<int> sizes) {
  ModeSpace s{sizes, sizes};
  s.validate();
  return s;
}

std::size_t ModeSpace::dimension() const {
  std::size_t d = 1;
  for (int n : modal_counts) d *= static_cast<std::size_t>(n);
  return d;
}

void ModeSpace::validate() const {
  if (modal_counts.empty()) throw ValidationError("mode space needs at least one mode");
  if (primitive_sizes.size() != modal_counts.size()) {
    throw ValidationError("primitive_sizes and modal_counts differ in length");
  }
  for (std::size_t m = 0; m < modal_counts.size(); ++m) {
    if (primitive_sizes[m] < 2) throw ValidationError("primitive size must be at least 2");
    if (modal_counts[m] < 2) throw ValidationError("modal count must be at least 2");
    if (modal_counts[m] > primitive_sizes[m]) {
      throw ValidationError("modal count exceeds primitive size for mode " + std::to_string(m));
    }
  }
}

NModeHamiltonian::NModeHamiltonian(ModeSpace space, std::vector<HamiltonianTerm> terms,
                                   nlohmann::json metadata)
    : space_(std::move(space)), terms_(std::move(terms)), metadata_(std::move(metadata)) {
  space_.validate();
  const int modes = space_.mode_count();
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const auto& term = terms_[t];
    const std::string where = "term " + std::to_string(t) + ": ";
    if (term.modes.empty()) throw ValidationError(where + "no active modes");
    if (term.modes.size() != term.factors.size()) {
      throw ValidationError(where + "factor count does not match active modes");
    }
    if (!std::isfinite(term.coefficient)) throw ValidationError(where + "non-finite coefficient");
    for (std::size_t i = 0; i < term.modes.size(); ++i) {
      const int m = term.modes[i];
      if (m < 0 || m >= modes) throw ValidationError(where + "mode index out of range");
      if (i > 0 && term.modes[i - 1] >= m) {
        throw ValidationError(where + "active modes must be strictly increasing");
      }
      const auto& f = term.factors[i];
      const int n = space_.modal_counts[static_cast<std::size_t>(m)];
      if (f.rows() != n || f.cols() != n) {
        throw ValidationError(where + "factor dimension does not match basis size of mode " +
                              std::to_string(m));
      }
      if (!f.allFinite()) throw ValidationError(where + "non-finite factor entry");
      const double scale = std::max(1.0, f.cwiseAbs().maxCoeff());
      if ((f - f.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw ValidationError(where + "factor for mode " + std::to_string(m) +
                              " is not symmetric");
      }
    }
    mc_level_ = std::max(mc_level_, static_cast<int>(term.modes.size()));
  }
}

bool same_terms(const NModeHamiltonian& a, const NModeHamiltonian& b, double tol) {
  if (!(a.space() == b.space()) || a.terms().size() != b.terms().size()) return false;
  for (std::size_t t = 0; t < a.terms().size(); ++t) {
    const auto& x = a.terms()[t];
    const auto& y = b.terms()[t];
    if (x.modes != y.modes) return false;
    if (std::abs(x.coefficient - y.coefficient) > tol) return false;
    for (std::size_t i = 0; i < x.factors.size(); ++i) {
      if ((x.factors[i] - y.factors[i]).cwiseAbs().maxCoeff() > tol) return false;
    }
  }
  return true;
}

double term_matrix_element(const HamiltonianTerm& term, const std::vector<int>& bra,
                           const std::vector<int>& ket) {
  std::size_t next = 0;
  double value = term.coefficient;
  for (std::size_t m = 0; m < bra.size(); ++m) {
    if (next < term.modes.size() && term.modes[next] == static_cast<int>(m)) {
      value *= term.factors[next](bra[m], ket[m]);
      ++next;
    } else if (bra[m] != ket[m]) {
      return 0.0;
    }
  }
  return value;
}

Eigen::MatrixXd dense_matrix(const NModeHamiltonian& h, std::size_t cap) {
  const ConfigurationSpace space(h.space().modal_counts);
  const std::size_t dim = space.dimension();
  if (dim > cap) {
    throw NumericalError("dense matrix of dimension " + std::to_string(dim) +
                         " exceeds the cap of " + std::to_string(cap));
  }
  const auto configs = space.enumerate();
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
  for (const auto& term : h.terms()) {
    // Only bras that agree with the ket on the inactive modes contribute.
    std::vector<int> active_dims;
    for (int m : term.modes) active_dims.push_back(space.dims()[static_cast<std::size_t>(m)]);
    for (std::size_t k = 0; k < dim; ++k) {
      const auto& ket = configs[k];
      Configuration bra = ket;
      std::vector<int> digits(term.modes.size(), 0);
      while (true) {
        for (std::size_t i = 0; i < digits.size(); ++i) {
          bra[static_cast<std::size_t>(term.modes[i])] = digits[i];
        }
        const std::size_t b = space.index(bra);
        dense(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(k)) +=
            term_matrix_element(term, bra, ket);
        std::size_t i = digits.size();
        while (i-- > 0) {
          if (++digits[i] < active_dims[i]) break;
          digits[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
      }
    }
  }
  return dense;
}

NModeHamiltonian scale_pair_couplings(const NModeHamiltonian& h, double alpha,
                                      const std::vector<std::pair<int, int>>& pairs) {
  std::set<std::vector<int>> targets;
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= h.mode_count() || b >= h.mode_count()) {
      throw ValidationError("coupling pair references a mode outside the Hamiltonian");
    }
    if (a == b) throw ValidationError("coupling pair must name two distinct modes");
    targets.insert({std::min(a, b), std::max(a, b)});
  }
  auto terms = h.terms();
  for (auto& term : terms) {
    if (targets.count(term.modes)) term.coefficient *= alpha;
  }
  auto meta = h.metadata();
  meta["pair_scaling"].push_back({{"alpha", alpha}, {"pairs", pairs}});
  return NModeHamiltonian(h.space(), std::move(terms), std::move(meta));
}

NModeHamiltonian restrict_mc_level(const NModeHamiltonian& h, int n) {
  std::vector<HamiltonianTerm> kept;
  for (const auto& term : h.terms()) {
    if (static_cast<int>(term.modes.size()) <= n) kept.push_back(term);
  }
  return NModeHamiltonian(h.space(), std::move(kept), h.metadata());
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Eigen::MatrixXd matrix_from_json(const nlohmann::json& rows) {
  if (!rows.is_array() || rows.empty()) throw ValidationError("matrix must be a nonempty list of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw ValidationError("matrix must be square");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) throw ValidationError("matrix entries must be numbers");
      m(i, j) = v.get<double>();
    }
  }
  return m;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<int> int_list(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw ValidationError(std::string("missing integer list '") + key + "'");
  }
  std::vector<int> out;
  for (const auto& v : doc[key]) {
    if (!v.is_number_integer()) throw ValidationError(std::string("'") + key + "' must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

NModeHamiltonian hamiltonian_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("Hamiltonian document must be a JSON object");
  if (!doc.contains("mode_count") || !doc["mode_count"].is_number_integer()) {
    throw ValidationError("missing integer 'mode_count'");
  }
  const int modes = doc["mode_count"].get<int>();
  if (modes < 1) throw ValidationError("mode_count must be at least 1");
  ModeSpace space;
  space.primitive_sizes = int_list(doc, "primitive_sizes");
  space.modal_counts =
      doc.contains("modal_counts") ? int_list(doc, "modal_counts") : space.primitive_sizes;
  if (static_cast<int>(space.primitive_sizes.size()) != modes) {
    throw ValidationError("primitive_sizes length differs from mode_count");
  }
  space.validate();
  const bool primitive_basis = space.modal_counts == space.primitive_sizes;

  std::vector<HamiltonianTerm> terms;
  const auto& jterms = doc.contains("terms") ? doc["terms"] : nlohmann::json::array();
  if (!jterms.is_array()) throw ValidationError("'terms' must be a list");
  for (const auto& jt : jterms) {
    HamiltonianTerm term;
    term.modes = int_list(jt, "modes");
    if (!jt.contains("coeff") || !jt["coeff"].is_number()) {
      throw ValidationError("term is missing numeric 'coeff'");
    }
    term.coefficient = jt["coeff"].get<double>();
    if (!jt.contains("factors") || !jt["factors"].is_array()) {
      throw ValidationError("term is missing 'factors'");
    }
    if (jt["factors"].size() != term.modes.size()) {
      throw ValidationError("term factor count does not match its modes");
    }
    for (std::size_t i = 0; i < term.modes.size(); ++i) {
      const auto& jf = jt["factors"][i];
      const int m = term.modes[i];
      if (m < 0 || m >= modes) throw ValidationError("term mode index out of range");
      if (jf.is_string()) {
        if (!primitive_basis) {
          throw ValidationError("named operators are only defined in the primitive basis");
        }
        term.factors.push_back(
            named_operator(jf.get<std::string>(), space.modal_counts[static_cast<std::size_t>(m)]));
      } else {
        term.factors.push_back(matrix_from_json(jf));
      }
    }
    terms.push_back(std::move(term));
  }
  nlohmann::json meta = doc.contains("metadata") ? doc["metadata"] : nlohmann::json::object();
  return NModeHamiltonian(std::move(space), std::move(terms), std::move(meta));
}

nlohmann::json hamiltonian_to_json(const NModeHamiltonian& h) {
  nlohmann::json doc;
  doc["mode_count"] = h.mode_count();
  doc["primitive_sizes"] = h.space().primitive_sizes;
  if (h.space().modal_counts != h.space().primitive_sizes) {
    doc["modal_counts"] = h.space().modal_counts;
  }
  auto terms = nlohmann::json::array();
  for (const auto& term : h.terms()) {
    nlohmann::json jt;
    jt["modes"] = term.modes;
    jt["coeff"] = term.coefficient;
    auto factors = nlohmann::json::array();
    for (const auto& f : term.factors) factors.push_back(matrix_to_json(f));
    jt["factors"] = std::move(factors);
    terms.push_back(std::move(jt));
  }
  doc["terms"] = std::move(terms);
  doc["metadata"] = h.metadata();
  return doc;
}

NModeHamiltonian load_hamiltonian(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open Hamiltonian file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("cannot parse " + path.string() + ": " + e.what());
  }
  return hamiltonian_from_json(doc);
}

void save_hamiltonian(const NModeHamiltonian& h, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << hamiltonian_to_json(h).dump(1) << '\n';
}

}  // namespace vibadapt
