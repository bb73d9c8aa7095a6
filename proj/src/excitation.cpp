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
#include "vibadapt/excitation.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "vibadapt/errors.hpp"

namespace vibadapt {

ExcitationOperator::ExcitationOperator(std::vector<Move> moves) : moves_(std::move(moves)) {
  if (moves_.empty()) throw ValidationError("excitation operator needs at least one move");
  std::sort(moves_.begin(), moves_.end(),
            [](const Move& a, const Move& b) { return a.mode < b.mode; });
  for (std::size_t i = 0; i < moves_.size(); ++i) {
    const Move& mv = moves_[i];
    if (mv.mode < 0 || mv.from < 0 || mv.to < 0) {
      throw ValidationError("excitation indices must be nonnegative");
    }
    if (mv.from == mv.to) throw ValidationError("excitation move must change the modal");
    if (i > 0 && moves_[i - 1].mode == mv.mode) {
      throw ValidationError("excitation moves must act on distinct modes");
    }
  }
}

bool ExcitationOperator::is_particle_hole() const {
  return std::all_of(moves_.begin(), moves_.end(), [](const Move& m) { return m.from == 0; });
}

void ExcitationOperator::check(const ConfigurationSpace& space) const {
  for (const Move& mv : moves_) {
    if (mv.mode >= space.mode_count()) {
      throw ValidationError("excitation " + id() + " references a mode outside the space");
    }
    const int n = space.dims()[static_cast<std::size_t>(mv.mode)];
    if (mv.from >= n || mv.to >= n) {
      throw ValidationError("excitation " + id() + " references a modal outside the space");
    }
  }
}

std::string ExcitationOperator::id() const {
  std::string s;
  for (std::size_t i = 0; i < moves_.size(); ++i) {
    if (i) s += '|';
    s += std::to_string(moves_[i].mode) + ':' + std::to_string(moves_[i].from) + '>' +
         std::to_string(moves_[i].to);
  }
  return s;
}

ExcitationOperator ExcitationOperator::parse(std::string_view id) {
  std::vector<Move> moves;
  auto bad = [&] { return ValidationError("malformed excitation id '" + std::string(id) + "'"); };
  std::size_t pos = 0;
  while (pos <= id.size()) {
    const std::size_t end = std::min(id.find('|', pos), id.size());
    const std::string_view part = id.substr(pos, end - pos);
    const auto colon = part.find(':');
    const auto arrow = part.find('>');
    if (colon == std::string_view::npos || arrow == std::string_view::npos || arrow < colon) {
      throw bad();
    }
    auto number = [&](std::string_view text) {
      int v = 0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) throw bad();
      return v;
    };
    moves.push_back(Move{number(part.substr(0, colon)),
                         number(part.substr(colon + 1, arrow - colon - 1)),
                         number(part.substr(arrow + 1))});
    pos = end + 1;
  }
  return ExcitationOperator(std::move(moves));
}

}  // namespace vibadapt
