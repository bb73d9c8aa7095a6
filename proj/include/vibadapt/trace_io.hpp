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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "vibadapt/adapt.hpp"

namespace vibadapt {

inline constexpr const char* kToolVersion = "0.3.1";

inline constexpr const char* kTraceHeader =
    "k,energy,error_vs_fvci,max_gradient_norm,selected_ops,n_parameters,jacobian_rank,"
    "cnot_cumulative";

/// A trace CSV: leading "# key=value" lines, the fixed header, one row per k.
struct TraceFile {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<TraceRow> rows;

  bool operator==(const TraceFile&) const = default;
};

std::string format_double(double v);  // %.17g

std::string to_csv(const TraceFile& trace);
TraceFile parse_trace_csv(std::string_view text);

void write_trace(const TraceFile& trace, const std::filesystem::path& path);
TraceFile read_trace(const std::filesystem::path& path);

/// FNV-1a (64 bit) of the compact JSON dump, as 16 hex digits.
std::string config_hash(const nlohmann::json& config);

/// Metadata block shared by every output file.
std::vector<std::pair<std::string, std::string>> provenance(const nlohmann::json& config,
                                                            std::uint64_t seed);

/// JSON summary of one ADAPT run (see schema/summary.schema.json, "run").
nlohmann::json run_summary(const AdaptTrace& trace, const nlohmann::json& config,
                           std::uint64_t seed);

void write_json(const nlohmann::json& doc, const std::filesystem::path& path);

}  // namespace vibadapt
