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

#include <cstddef>
#include <vector>

namespace vibadapt {

/// One occupied modal index per mode (a Hartree product).
using Configuration = std::vector<int>;

/// Canonical ordering of Hartree products: lexicographic with mode 0
/// varying slowest, so index 0 is the reference (all modes in modal 0).
class ConfigurationSpace {
 public:
  static constexpr std::size_t kDefaultCap = 1'000'000;

  ConfigurationSpace() = default;
  explicit ConfigurationSpace(std::vector<int> modal_counts, std::size_t cap = kDefaultCap);

  int mode_count() const { return static_cast<int>(dims_.size()); }
  std::size_t dimension() const { return dimension_; }
  const std::vector<int>& dims() const { return dims_; }
  /// Distance in the flat index between neighbouring modals of mode m.
  std::size_t stride(int mode) const { return strides_[static_cast<std::size_t>(mode)]; }

  std::size_t index(const Configuration& c) const;
  Configuration configuration(std::size_t index) const;
  std::vector<Configuration> enumerate() const;

  /// Number of modes not in modal 0.
  static int excitation_rank(const Configuration& c);

  bool operator==(const ConfigurationSpace& o) const { return dims_ == o.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<std::size_t> strides_;
  std::size_t dimension_ = 0;
};

}  // namespace vibadapt
