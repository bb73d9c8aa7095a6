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

// Enumeration of the configuration pairs coupled by an excitation operator.
//
// kappa pairs every configuration c whose active modes sit on the from-modals
// with c' (active modes moved to the to-modals). In the canonical ordering the
// pairs come in contiguous runs: all modes after the last active mode vary
// freely inside a run, and c' = c + delta for every element.

#include <cstddef>
#include <vector>

#include "vibadapt/configuration.hpp"
#include "vibadapt/excitation.hpp"

namespace vibadapt::detail {

struct PairLayout {
  std::size_t first = 0;        // flat index of the first c
  std::ptrdiff_t delta = 0;     // index(c') - index(c)
  std::size_t run = 1;          // contiguous run length
  std::vector<std::size_t> outer_dims;
  std::vector<std::size_t> outer_strides;
};

inline PairLayout pair_layout(const ConfigurationSpace& space, const ExcitationOperator& op) {
  PairLayout layout;
  const auto& moves = op.moves();
  const int last = moves.back().mode;
  layout.run = space.stride(last);
  std::size_t next = 0;
  for (int m = 0; m <= last; ++m) {
    if (next < moves.size() && moves[next].mode == m) {
      const auto& mv = moves[next++];
      layout.first += static_cast<std::size_t>(mv.from) * space.stride(m);
      layout.delta += (static_cast<std::ptrdiff_t>(mv.to) - mv.from) *
                      static_cast<std::ptrdiff_t>(space.stride(m));
    } else {
      layout.outer_dims.push_back(static_cast<std::size_t>(space.dims()[static_cast<std::size_t>(m)]));
      layout.outer_strides.push_back(space.stride(m));
    }
  }
  return layout;
}

/// Calls fn(c_index, c_prime_index, run) once per contiguous run.
template <class Fn>
void for_each_pair_run(const PairLayout& layout, Fn&& fn) {
  const std::size_t depth = layout.outer_dims.size();
  std::vector<std::size_t> digit(depth, 0);
  std::size_t offset = layout.first;
  while (true) {
    fn(offset, static_cast<std::size_t>(static_cast<std::ptrdiff_t>(offset) + layout.delta),
       layout.run);
    std::size_t i = depth;
    while (i-- > 0) {
      if (++digit[i] < layout.outer_dims[i]) {
        offset += layout.outer_strides[i];
        break;
      }
      offset -= (layout.outer_dims[i] - 1) * layout.outer_strides[i];
      digit[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) return;
  }
}

}  // namespace vibadapt::detail
