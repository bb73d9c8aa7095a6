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
#include <cmath>
#include <string>

#include "vibadapt/diagnostics.hpp"
#include "vibadapt/errors.hpp"

namespace vibadapt {

Eigen::MatrixXd dense_transition(const ConfigurationSpace& space, int mode, int from, int to) {
  if (space.dimension() > kDenseCap) throw NumericalError("dense transition above the dense cap");
  if (mode < 0 || mode >= space.mode_count()) throw ValidationError("transition mode out of range");
  const int n = space.dims()[static_cast<std::size_t>(mode)];
  if (from < 0 || to < 0 || from >= n || to >= n) {
    throw ValidationError("transition modal out of range");
  }
  const auto dim = static_cast<Eigen::Index>(space.dimension());
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t col = 0; col < space.dimension(); ++col) {
    Configuration c = space.configuration(col);
    if (c[static_cast<std::size_t>(mode)] != from) continue;
    c[static_cast<std::size_t>(mode)] = to;
    e(static_cast<Eigen::Index>(space.index(c)), static_cast<Eigen::Index>(col)) = 1.0;
  }
  return e;
}

Eigen::MatrixXd dense_kappa_raw(const ConfigurationSpace& space, const std::vector<Move>& moves) {
  const auto dim = static_cast<Eigen::Index>(space.dimension());
  Eigen::MatrixXd tau = Eigen::MatrixXd::Identity(dim, dim);
  for (const Move& mv : moves) tau = dense_transition(space, mv.mode, mv.from, mv.to) * tau;
  return tau - tau.transpose();
}

namespace {

Eigen::MatrixXd commutator(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  return x * y - y * x;
}

void check_triple(const TripleDecomposition& t, bool particle_hole) {
  const ConfigurationSpace space(t.dims);
  const int modes = space.mode_count();
  auto in_range = [&](int mode, int modal) {
    return mode >= 0 && mode < modes && modal >= 0 &&
           modal < space.dims()[static_cast<std::size_t>(mode)];
  };
  if (t.l == t.m || t.m == t.n || t.l == t.n) throw ValidationError("modes l, m, n must be distinct");
  if (!in_range(t.l, t.i) || !in_range(t.l, t.a) || !in_range(t.m, t.j) ||
      !in_range(t.m, t.b) || !in_range(t.m, t.alpha) || !in_range(t.n, t.k) ||
      !in_range(t.n, t.c)) {
    throw ValidationError("decomposition index out of range");
  }
  if (t.i == t.a || t.j == t.b || t.k == t.c) {
    throw ValidationError("decomposition moves must change the modal");
  }
  if (t.alpha == t.j || t.alpha == t.b) {
    throw ValidationError("intermediate modal alpha must differ from j and b");
  }
  if (particle_hole && (t.i != 0 || t.j != 0 || t.k != 0)) {
    throw ValidationError("particle-hole form needs occupied modals i = j = k = 0");
  }
}

Eigen::MatrixXd three_body(const ConfigurationSpace& space, const TripleDecomposition& t) {
  return dense_kappa_raw(space, {{t.l, t.i, t.a}, {t.m, t.j, t.b}, {t.n, t.k, t.c}});
}

}  // namespace

double generalized_decomposition_deviation(const TripleDecomposition& t, bool enforce) {
  if (enforce) check_triple(t, false);
  const ConfigurationSpace space(t.dims);
  const Eigen::MatrixXd left = dense_kappa_raw(space, {{t.l, t.i, t.a}, {t.m, t.j, t.alpha}});
  const Eigen::MatrixXd right = dense_kappa_raw(space, {{t.m, t.alpha, t.b}, {t.n, t.k, t.c}});
  return (three_body(space, t) + commutator(left, right)).cwiseAbs().maxCoeff();
}

double particle_hole_decomposition_deviation(const TripleDecomposition& t, bool enforce) {
  if (enforce) check_triple(t, true);
  const ConfigurationSpace space(t.dims);
  const Eigen::MatrixXd outer = dense_kappa_raw(space, {{t.l, t.i, t.a}, {t.m, t.j, t.alpha}});
  const Eigen::MatrixXd single = dense_kappa_raw(space, {{t.m, t.j, t.alpha}});
  const Eigen::MatrixXd pair = dense_kappa_raw(space, {{t.m, t.j, t.b}, {t.n, t.k, t.c}});
  return (three_body(space, t) + commutator(outer, commutator(single, pair))).cwiseAbs().maxCoeff();
}

double transition_commutator_deviation(const ConfigurationSpace& space, int mode, int a, int b,
                                       int c, int d) {
  const Eigen::MatrixXd lhs =
      commutator(dense_transition(space, mode, a, b), dense_transition(space, mode, c, d));
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(lhs.rows(), lhs.cols());
  if (a == d) rhs += dense_transition(space, mode, c, b);
  if (b == c) rhs -= dense_transition(space, mode, a, d);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double IdentityReport::max_deviation() const {
  return std::max({max_generalized, max_particle_hole, max_elementary});
}

IdentityReport verify_decomposition_identities(int trials, std::mt19937_64& rng) {
  IdentityReport rep;
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto other_than = [&](int n, std::initializer_list<int> avoid) {
    while (true) {
      const int v = uniform(0, n - 1);
      if (std::find(avoid.begin(), avoid.end(), v) == avoid.end()) return v;
    }
  };
  for (int trial = 0; trial < trials; ++trial) {
    const int modes = uniform(3, 4);
    std::vector<int> dims(static_cast<std::size_t>(modes));
    for (auto& d : dims) d = uniform(3, 4);
    std::vector<int> order(static_cast<std::size_t>(modes));
    for (int x = 0; x < modes; ++x) order[static_cast<std::size_t>(x)] = x;
    std::shuffle(order.begin(), order.end(), rng);

    TripleDecomposition t;
    t.dims = dims;
    t.l = order[0];
    t.m = order[1];
    t.n = order[2];
    auto nl = dims[static_cast<std::size_t>(t.l)];
    auto nm = dims[static_cast<std::size_t>(t.m)];
    auto nn = dims[static_cast<std::size_t>(t.n)];

    // Generalized indices.
    t.i = uniform(0, nl - 1);
    t.a = other_than(nl, {t.i});
    t.j = uniform(0, nm - 1);
    t.b = other_than(nm, {t.j});
    t.alpha = other_than(nm, {t.j, t.b});
    t.k = uniform(0, nn - 1);
    t.c = other_than(nn, {t.k});
    rep.max_generalized = std::max(rep.max_generalized, generalized_decomposition_deviation(t));

    // Particle-hole indices.
    TripleDecomposition ph = t;
    ph.i = ph.j = ph.k = 0;
    ph.a = uniform(1, nl - 1);
    ph.b = uniform(1, nm - 1);
    ph.alpha = other_than(nm, {0, ph.b});
    ph.c = uniform(1, nn - 1);
    rep.max_particle_hole =
        std::max(rep.max_particle_hole, particle_hole_decomposition_deviation(ph));

    // Elementary transition commutators, same mode and different modes.
    const ConfigurationSpace space(dims);
    const int a = uniform(0, nm - 1), b = uniform(0, nm - 1);
    const int c = uniform(0, nm - 1), d = uniform(0, nm - 1);
    rep.max_elementary =
        std::max(rep.max_elementary, transition_commutator_deviation(space, t.m, a, b, c, d));
    const Eigen::MatrixXd cross =
        commutator(dense_transition(space, t.m, a, b),
                   dense_transition(space, t.n, uniform(0, nn - 1), uniform(0, nn - 1)));
    rep.max_elementary = std::max(rep.max_elementary, cross.cwiseAbs().maxCoeff());
    ++rep.trials;
  }
  return rep;
}

double commutator_expansion_error(const ConfigurationSpace& space, const ExcitationOperator& a,
                                  const ExcitationOperator& b, double t, int n, std::size_t cap) {
  if (n < 1) throw ValidationError("commutator expansion needs N >= 1");
  const Eigen::MatrixXd ka = t * dense_kappa(space, a, cap);
  const Eigen::MatrixXd kb = t * dense_kappa(space, b, cap);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXd ea = matrix_exponential(scale * ka);
  const Eigen::MatrixXd eb = matrix_exponential(scale * kb);
  // Both factors are orthogonal: the inverses are transposes.
  const Eigen::MatrixXd step = ea * eb * ea.transpose() * eb.transpose();
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(step.rows(), step.cols());
  Eigen::MatrixXd base = step;
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) power = power * base;
    base = base * base;
  }
  const Eigen::MatrixXd exact = matrix_exponential(commutator(ka, kb));
  return (power - exact).norm();
}

}  // namespace vibadapt
