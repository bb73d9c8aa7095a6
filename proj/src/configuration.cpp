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
#include "vibadapt/configuration.hpp"

#include <string>

#include "vibadapt/errors.hpp"

namespace vibadapt {

ConfigurationSpace::ConfigurationSpace(std::vector<int> modal_counts, std::size_t cap)
    : dims_(std::move(modal_counts)), strides_(dims_.size(), 1) {
  if (dims_.empty()) throw ValidationError("configuration space needs at least one mode");
  std::size_t dim = 1;
  for (std::size_t m = dims_.size(); m-- > 0;) {
    if (dims_[m] < 1) throw ValidationError("modal count must be positive");
    strides_[m] = dim;
    if (dim > cap / static_cast<std::size_t>(dims_[m])) {
      throw ValidationError("configuration space exceeds the dimension cap of " +
                            std::to_string(cap));
    }
    dim *= static_cast<std::size_t>(dims_[m]);
  }
  dimension_ = dim;
}

std::size_t ConfigurationSpace::index(const Configuration& c) const {
  if (c.size() != dims_.size()) throw ValidationError("configuration has wrong mode count");
  std::size_t idx = 0;
  for (std::size_t m = 0; m < dims_.size(); ++m) {
    if (c[m] < 0 || c[m] >= dims_[m]) throw ValidationError("modal index out of range");
    idx += static_cast<std::size_t>(c[m]) * strides_[m];
  }
  return idx;
}

Configuration ConfigurationSpace::configuration(std::size_t index) const {
  if (index >= dimension_) throw ValidationError("configuration index out of range");
  Configuration c(dims_.size());
  for (std::size_t m = 0; m < dims_.size(); ++m) {
    c[m] = static_cast<int>(index / strides_[m]);
    index %= strides_[m];
  }
  return c;
}

std::vector<Configuration> ConfigurationSpace::enumerate() const {
  std::vector<Configuration> all;
  all.reserve(dimension_);
  Configuration c(dims_.size(), 0);
  for (std::size_t i = 0; i < dimension_; ++i) {
    all.push_back(c);
    for (std::size_t m = dims_.size(); m-- > 0;) {
      if (++c[m] < dims_[m]) break;
      c[m] = 0;
    }
  }
  return all;
}

int ConfigurationSpace::excitation_rank(const Configuration& c) {
  int r = 0;
  for (int p : c) r += (p != 0);
  return r;
}

}  // namespace vibadapt
