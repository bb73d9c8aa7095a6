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
#include "vibadapt/trace_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vibadapt/errors.hpp"

namespace vibadapt {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class Int>
Int parse_int(std::string_view s, int line) {
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("trace line " + std::to_string(line) + ": bad integer '" +
                          std::string(s) + "'");
  }
  return v;
}

double parse_real(std::string_view s, int line) {
  const std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
    throw ValidationError("trace line " + std::to_string(line) + ": bad number '" + tmp + "'");
  }
  return v;
}

}  // namespace

std::string to_csv(const TraceFile& trace) {
  std::ostringstream os;
  for (const auto& [key, value] : trace.metadata) os << "# " << key << '=' << value << '\n';
  os << kTraceHeader << '\n';
  for (const auto& r : trace.rows) {
    os << r.k << ',' << format_double(r.energy) << ',' << format_double(r.error_vs_fvci) << ','
       << format_double(r.max_gradient_norm) << ',';
    for (std::size_t i = 0; i < r.selected_ops.size(); ++i) {
      if (i) os << ';';
      os << r.selected_ops[i];
    }
    os << ',' << r.n_parameters << ',';
    if (r.jacobian_rank) os << *r.jacobian_rank;
    os << ',' << r.cnot_cumulative << '\n';
  }
  return os.str();
}

TraceFile parse_trace_csv(std::string_view text) {
  TraceFile out;
  bool header_seen = false;
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen && line.starts_with("# ")) {
      const std::string_view body = line.substr(2);
      const std::size_t eq = body.find('=');
      if (eq == std::string_view::npos) {
        throw ValidationError("trace line " + std::to_string(line_no) + ": metadata needs key=value");
      }
      out.metadata.emplace_back(std::string(body.substr(0, eq)), std::string(body.substr(eq + 1)));
      continue;
    }
    if (!header_seen) {
      if (line != kTraceHeader) throw ValidationError("trace header mismatch");
      header_seen = true;
      continue;
    }
    const auto cols = split(line, ',');
    if (cols.size() != 8) {
      throw ValidationError("trace line " + std::to_string(line_no) + ": expected 8 columns");
    }
    TraceRow r;
    r.k = parse_int<int>(cols[0], line_no);
    r.energy = parse_real(cols[1], line_no);
    r.error_vs_fvci = parse_real(cols[2], line_no);
    r.max_gradient_norm = parse_real(cols[3], line_no);
    if (!cols[4].empty()) {
      for (auto id : split(cols[4], ';')) r.selected_ops.emplace_back(id);
    }
    r.n_parameters = parse_int<int>(cols[5], line_no);
    if (!cols[6].empty()) r.jacobian_rank = parse_int<int>(cols[6], line_no);
    r.cnot_cumulative = parse_int<std::int64_t>(cols[7], line_no);
    if (!out.rows.empty() && r.k <= out.rows.back().k) {
      throw ValidationError("trace line " + std::to_string(line_no) + ": k must increase");
    }
    out.rows.push_back(std::move(r));
  }
  if (!header_seen) throw ValidationError("trace has no header");
  return out;
}

void write_trace(const TraceFile& trace, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot write " + path.string());
  os << to_csv(trace);
}

TraceFile read_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open trace " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_trace_csv(ss.str());
}

std::string config_hash(const nlohmann::json& config) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::pair<std::string, std::string>> provenance(const nlohmann::json& config,
                                                            std::uint64_t seed) {
  return {{"tool", std::string("vibadapt ") + kToolVersion},
          {"seed", std::to_string(seed)},
          {"config_hash", config_hash(config)}};
}

nlohmann::json run_summary(const AdaptTrace& trace, const nlohmann::json& config,
                           std::uint64_t seed) {
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["seed"] = seed;
  j["config_hash"] = config_hash(config);
  j["config"] = config;
  j["status"] = to_string(trace.status);
  j["iterations"] = trace.rows.empty() ? 0 : trace.rows.back().k;
  j["gradient_converged_at"] = trace.gradient_converged_at;
  j["fvci_energy"] = trace.fvci_energy;
  const TraceRow& last = trace.rows.back();
  j["final_energy"] = last.energy;
  j["final_error"] = last.error_vs_fvci;
  j["final_max_gradient"] = last.max_gradient_norm;
  if (trace.status == AdaptStatus::Stalled) {
    const TraceRow& s = trace.rows[static_cast<std::size_t>(trace.gradient_converged_at)];
    j["stall_error"] = s.error_vs_fvci;
  } else {
    j["stall_error"] = nullptr;
  }
  j["cnot_total"] = last.cnot_cumulative;
  j["rank_plateau_onset"] = rank_plateau_onset(trace);
  j["operators"] = trace.operators;
  j["parameters"] = trace.parameters;
  j["optimizer_messages"] = trace.optimizer_messages;
  return j;
}

void write_json(const nlohmann::json& doc, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot write " + path.string());
  os << doc.dump(2) << '\n';
}

}  // namespace vibadapt
