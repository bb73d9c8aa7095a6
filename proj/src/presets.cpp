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
// Synthetic anharmonic coupled-oscillator systems.
//
// Every preset has the form
//
//   H = sum_m [ w_m (kin + q^2/2) + cubic f_m q^3 + quartic g_m q^4 ]
//     + sum_{m<n} [ bilinear l_mn q_m q_n + quadquad c_mn q_m^2 q_n^2 ]
//     + sum_{m<n<o} threemode e_mno q_m q_n q_o            (n = 3 only)
//
// in dimensionless normal coordinates. The per-mode and per-pair shape
// constants below are fixed; the parameters scale whole families of terms.
//
//   parameter    default  range
//   n            2        {1, 2, 3}   mode-coupling level
//   primitives   10 / 8   [4, 40]     HO primitive functions per mode
//   omega<m>     table    (0, 50]     harmonic frequency of mode m
//   cubic        1        [-10, 10]
//   quartic      1        [0, 10]
//   bilinear     1        [-10, 10]
//   quadquad     1        [-10, 10]
//   threemode    1        [-10, 10]

#include <algorithm>
#include <cmath>
#include <string>

#include "vibadapt/errors.hpp"
#include "vibadapt/hamiltonian.hpp"
#include "vibadapt/ho_operators.hpp"

namespace vibadapt {
namespace {

struct PresetShape {
  std::vector<double> omega;
  std::vector<double> cubic;
  std::vector<double> quartic;
  double bilinear = 0.0;   // base pair coupling, modulated per pair below
  double quadquad = 0.0;
  double threemode = 0.0;
  int primitives = 10;
  int modal_count = 4;
};

const PresetShape& shape_of(const std::string& name) {
  static const PresetShape coupled3{
      {1.00, 1.45, 2.10},
      {0.060, -0.045, 0.050},
      {0.010, 0.008, 0.012},
      0.08, 0.020, 0.030, 10, 4};
  static const PresetShape coupled6{
      {0.80, 1.00, 1.25, 1.55, 1.85, 2.20},
      {0.050, -0.040, 0.045, -0.035, 0.040, 0.030},
      {0.008, 0.010, 0.009, 0.011, 0.007, 0.010},
      0.10, 0.012, 0.018, 8, 3};
  if (name == "coupled3") return coupled3;
  if (name == "coupled6") return coupled6;
  throw ValidationError("unknown preset '" + name + "' (known: coupled3, coupled6)");
}

// Deterministic pair/triple modulation so couplings are not all equal.
double pair_weight(int a, int b) { return 1.0 + 0.25 * std::sin(1.7 * a + 2.3 * b + 0.4); }
double triple_weight(int a, int b, int c) {
  return 1.0 + 0.25 * std::cos(1.1 * a + 1.9 * b + 2.9 * c);
}

double take(const PresetParams& params, const std::string& key, double fallback, double lo,
            double hi, bool open_lo = false) {
  const auto it = params.find(key);
  const double v = it == params.end() ? fallback : it->second;
  if (!std::isfinite(v) || v > hi || (open_lo ? v <= lo : v < lo)) {
    throw ValidationError("preset parameter '" + key + "' = " + std::to_string(v) +
                          " outside its documented range");
  }
  return v;
}

}  // namespace

std::vector<std::string> preset_names() { return {"coupled3", "coupled6"}; }

int default_modal_count(const std::string& preset) { return shape_of(preset).modal_count; }

NModeHamiltonian build_model_preset(const std::string& name, const PresetParams& params) {
  const PresetShape& shape = shape_of(name);
  const int modes = static_cast<int>(shape.omega.size());

  for (const auto& [key, value] : params) {
    static const std::vector<std::string> scalars{"n",        "primitives", "cubic",
                                                  "quartic",  "bilinear",   "quadquad",
                                                  "threemode"};
    bool known = std::find(scalars.begin(), scalars.end(), key) != scalars.end();
    for (int m = 0; m < modes && !known; ++m) known = key == "omega" + std::to_string(m);
    if (!known) throw ValidationError("unknown parameter '" + key + "' for preset " + name);
  }

  const double level = take(params, "n", 2, 1, 3);
  if (level != std::floor(level)) throw ValidationError("preset parameter 'n' must be an integer");
  const double prims = take(params, "primitives", shape.primitives, 4, 40);
  if (prims != std::floor(prims)) {
    throw ValidationError("preset parameter 'primitives' must be an integer");
  }
  const int n = static_cast<int>(level);
  const int size = static_cast<int>(prims);
  const double cubic = take(params, "cubic", 1.0, -10, 10);
  const double quartic = take(params, "quartic", 1.0, 0, 10);
  const double bilinear = take(params, "bilinear", 1.0, -10, 10);
  const double quadquad = take(params, "quadquad", 1.0, -10, 10);
  const double threemode = take(params, "threemode", 1.0, -10, 10);

  const Eigen::MatrixXd q = named_operator("q", size);
  const Eigen::MatrixXd q2 = named_operator("q2", size);
  const Eigen::MatrixXd q3 = named_operator("q3", size);
  const Eigen::MatrixXd q4 = named_operator("q4", size);
  const Eigen::MatrixXd kin = named_operator("kin", size);

  nlohmann::json meta;
  meta["preset"] = name;
  meta["n"] = n;
  meta["primitives"] = size;
  meta["cubic"] = cubic;
  meta["quartic"] = quartic;
  meta["bilinear"] = bilinear;
  meta["quadquad"] = quadquad;
  meta["threemode"] = threemode;

  std::vector<HamiltonianTerm> terms;
  for (int m = 0; m < modes; ++m) {
    const double w = take(params, "omega" + std::to_string(m),
                          shape.omega[static_cast<std::size_t>(m)], 0, 50, true);
    meta["omega" + std::to_string(m)] = w;
    const Eigen::MatrixXd harmonic = w * (kin + 0.5 * q2);
    terms.push_back({{m}, 1.0, {harmonic}});
    terms.push_back({{m}, cubic * shape.cubic[static_cast<std::size_t>(m)], {q3}});
    terms.push_back({{m}, quartic * shape.quartic[static_cast<std::size_t>(m)], {q4}});
  }
  if (n >= 2) {
    for (int a = 0; a < modes; ++a) {
      for (int b = a + 1; b < modes; ++b) {
        const double wgt = pair_weight(a, b);
        terms.push_back({{a, b}, bilinear * shape.bilinear * wgt, {q, q}});
        terms.push_back({{a, b}, quadquad * shape.quadquad * wgt, {q2, q2}});
      }
    }
  }
  if (n >= 3) {
    for (int a = 0; a < modes; ++a) {
      for (int b = a + 1; b < modes; ++b) {
        for (int c = b + 1; c < modes; ++c) {
          terms.push_back(
              {{a, b, c}, threemode * shape.threemode * triple_weight(a, b, c), {q, q, q}});
        }
      }
    }
  }
  return NModeHamiltonian(ModeSpace::primitive(std::vector<int>(static_cast<std::size_t>(modes), size)),
                          std::move(terms), std::move(meta));
}

}  // namespace vibadapt
