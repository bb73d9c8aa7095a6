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

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "vibadapt/configuration.hpp"

namespace vibadapt {

/// Transfer of mode `mode` from modal `from` to modal `to`.
struct Move {
  int mode = 0;
  int from = 0;
  int to = 0;

  auto operator<=>(const Move&) const = default;
};

/// Anti-Hermitian excitation operator kappa = tau - tau^dagger with
/// tau = prod_m a^dagger_{to_m} a_{from_m}. Moves are kept sorted by mode.
class ExcitationOperator {
 public:
  ExcitationOperator() = default;
  explicit ExcitationOperator(std::vector<Move> moves);

  static ExcitationOperator single(int mode, int from, int to) {
    return ExcitationOperator({Move{mode, from, to}});
  }

  const std::vector<Move>& moves() const { return moves_; }
  int rank() const { return static_cast<int>(moves_.size()); }
  bool is_particle_hole() const;
  /// Throws ValidationError if a mode or modal index lies outside `space`.
  void check(const ConfigurationSpace& space) const;

  /// Text id such as "0:0>1|2:0>3"; parse() inverts it.
  std::string id() const;
  static ExcitationOperator parse(std::string_view id);

  auto operator<=>(const ExcitationOperator&) const = default;

 private:
  std::vector<Move> moves_;
};

}  // namespace vibadapt
