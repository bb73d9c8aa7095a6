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
#include "vibadapt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/Dense>

namespace vibadapt {
namespace {

using Vec = Eigen::VectorXd;

struct Point {
  double alpha = 0.0;
  double f = 0.0;
  double slope = 0.0;  // directional derivative along the search direction
  Vec x;
  Vec g;
};

class Evaluator {
 public:
  Evaluator(const Objective& fn, int budget) : fn_(fn), budget_(budget) {}

  bool exhausted() const { return count_ >= budget_; }
  int count() const { return count_; }

  double operator()(const Vec& x, Vec& g) {
    ++count_;
    std::vector<double> xs(x.data(), x.data() + x.size());
    std::vector<double> gs(xs.size(), 0.0);
    const double f = fn_(xs, gs);
    g = Eigen::Map<const Vec>(gs.data(), static_cast<Eigen::Index>(gs.size()));
    return f;
  }

 private:
  const Objective& fn_;
  int budget_;
  int count_ = 0;
};

double max_norm(const Vec& g) { return g.size() ? g.cwiseAbs().maxCoeff() : 0.0; }

// Cubic interpolation minimizer of phi on [a, b], safeguarded to the
// interior of the interval.
double interpolate(const Point& a, const Point& b) {
  const double d1 = a.slope + b.slope - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
  const double disc = d1 * d1 - a.slope * b.slope;
  double trial = 0.5 * (a.alpha + b.alpha);
  if (disc >= 0.0) {
    const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
    const double denom = b.slope - a.slope + 2.0 * d2;
    if (denom != 0.0) trial = b.alpha - (b.alpha - a.alpha) * (b.slope + d2 - d1) / denom;
  }
  const double lo = std::min(a.alpha, b.alpha);
  const double hi = std::max(a.alpha, b.alpha);
  const double margin = 0.1 * (hi - lo);
  if (!std::isfinite(trial) || trial < lo + margin || trial > hi - margin) {
    trial = 0.5 * (lo + hi);
  }
  return trial;
}

}  // namespace

OptimizerResult minimize_bfgs(const Objective& objective, std::vector<double> x0,
                              const OptimizerOptions& options) {
  constexpr double c1 = 1e-4;
  constexpr double c2 = 0.9;
  // Values within this relative band are treated as equal; below it only the
  // slope conditions are trusted (approximate Wolfe).
  constexpr double flat = 1e-13;

  const auto n = static_cast<Eigen::Index>(x0.size());
  OptimizerResult result;
  Evaluator eval(objective, std::max(1, options.max_evaluations));

  Vec x = Eigen::Map<const Vec>(x0.data(), n);
  Vec g(n);
  double f = eval(x, g);
  const double f_start = f;
  const Vec x_start = x;
  const Vec g_start = g;

  Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(n, n);
  bool scaled = false;

  auto finish = [&](bool converged, const char* message) {
    if (f > f_start) {
      x = x_start;
      f = f_start;
      g = g_start;
    }
    result.x.assign(x.data(), x.data() + x.size());
    result.value = f;
    result.gradient_norm = max_norm(g);
    result.evaluations = eval.count();
    result.converged = converged || result.gradient_norm <= options.gradient_tolerance;
    result.message = message;
    return result;
  };

  while (true) {
    if (max_norm(g) <= options.gradient_tolerance) return finish(true, "gradient tolerance reached");
    if (eval.exhausted()) return finish(false, "evaluation budget exhausted");

    Vec d = -inv_hessian * g;
    double slope0 = g.dot(d);
    if (!(slope0 < 0.0)) {
      inv_hessian.setIdentity();
      scaled = false;
      d = -g;
      slope0 = g.dot(d);
    }

    const double band = flat * std::max(1.0, std::abs(f));
    auto sufficient = [&](const Point& p) {
      return p.f <= f + c1 * p.alpha * slope0 ||
             (std::abs(p.f - f) <= band && p.slope <= 0.0 && p.slope >= 1.8 * slope0);
    };
    auto curvature = [&](const Point& p) { return std::abs(p.slope) <= -c2 * slope0; };
    auto probe = [&](double alpha) {
      Point p;
      p.alpha = alpha;
      p.x = x + alpha * d;
      p.f = eval(p.x, p.g);
      p.slope = p.g.dot(d);
      return p;
    };

    Point prev{0.0, f, slope0, x, g};
    double alpha = scaled ? 1.0 : std::min(1.0, 1.0 / std::max(1e-12, d.lpNorm<Eigen::Infinity>()));
    std::optional<Point> accepted;
    for (int trial = 0; trial < 20 && !accepted && !eval.exhausted(); ++trial) {
      Point cur = probe(alpha);
      bool need_zoom = false;
      Point lo = prev;
      Point hi = cur;
      if (!std::isfinite(cur.f) || !sufficient(cur) || (trial > 0 && cur.f >= prev.f && !curvature(cur))) {
        need_zoom = true;
      } else if (curvature(cur)) {
        accepted = cur;
        break;
      } else if (cur.slope >= 0.0) {
        need_zoom = true;
        lo = cur;
        hi = prev;
      }
      if (need_zoom) {
        for (int z = 0; z < 40 && !eval.exhausted(); ++z) {
          if (std::abs(hi.alpha - lo.alpha) <= 1e-16 * std::max(1.0, std::abs(lo.alpha))) break;
          Point mid = probe(interpolate(lo, hi));
          if (!std::isfinite(mid.f) || !sufficient(mid) || mid.f > lo.f + band) {
            hi = mid;
          } else {
            if (curvature(mid)) {
              accepted = mid;
              break;
            }
            if (mid.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
            lo = mid;
          }
        }
        if (!accepted && lo.alpha > 0.0) accepted = lo;
        break;
      }
      prev = cur;
      alpha *= 2.0;
    }
    if (!accepted) return finish(false, "line search failed");

    const Vec s = accepted->x - x;
    const Vec y = accepted->g - g;
    x = accepted->x;
    f = accepted->f;
    g = accepted->g;
    ++result.iterations;

    const double sy = s.dot(y);
    if (sy > 1e-16 * s.norm() * y.norm() && sy > 0.0) {
      if (!scaled) {
        inv_hessian *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Vec hy = inv_hessian * y;
      const double yhy = y.dot(hy);
      inv_hessian += ((1.0 + rho * yhy) * rho) * (s * s.transpose()) -
                     rho * (hy * s.transpose() + s * hy.transpose());
    }
  }
}

}  // namespace vibadapt
