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
#include "vibadapt/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <sstream>
#include <thread>

#include "vibadapt/errors.hpp"
#include "vibadapt/vci.hpp"

namespace vibadapt {

namespace fs = std::filesystem;
using nlohmann::json;

// --- system -----------------------------------------------------------------

SystemSpec SystemSpec::from_json(const json& j) {
  SystemSpec s;
  if (!j.is_object()) throw ValidationError("system spec must be an object");
  for (const auto& [key, _] : j.items()) {
    static const char* known[] = {"preset", "params", "hamiltonian", "modals", "vscf"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ValidationError("unknown system key '" + key + "'");
    }
  }
  s.preset = j.value("preset", std::string());
  if (j.contains("params")) s.params = j["params"].get<PresetParams>();
  if (j.contains("hamiltonian")) s.hamiltonian_path = j["hamiltonian"].get<std::string>();
  if (j.contains("modals")) {
    if (j["modals"].is_number_integer()) {
      s.modals = {j["modals"].get<int>()};
    } else {
      s.modals = j["modals"].get<std::vector<int>>();
    }
  }
  if (j.contains("vscf")) {
    const json& v = j["vscf"];
    s.vscf.max_iter = v.value("max_iter", s.vscf.max_iter);
    s.vscf.tol = v.value("tol", s.vscf.tol);
    if (v.contains("sweep_order")) s.vscf.sweep_order = v["sweep_order"].get<std::vector<int>>();
  }
  if (s.preset.empty() == s.hamiltonian_path.empty()) {
    throw ValidationError("system spec needs exactly one of 'preset' or 'hamiltonian'");
  }
  return s;
}

json SystemSpec::to_json() const {
  json j;
  if (!preset.empty()) {
    j["preset"] = preset;
    j["params"] = params;
  } else {
    j["hamiltonian"] = hamiltonian_path.string();
  }
  j["modals"] = modals;
  j["vscf"] = {{"max_iter", vscf.max_iter}, {"tol", vscf.tol}, {"sweep_order", vscf.sweep_order}};
  return j;
}

NModeHamiltonian load_system(const SystemSpec& spec) {
  if (!spec.hamiltonian_path.empty()) return load_hamiltonian(spec.hamiltonian_path);
  return build_model_preset(spec.preset, spec.params);
}

json PreparedSystem::to_json() const {
  return {{"modal_counts", modal.space().modal_counts},
          {"dimension", modal.dimension()},
          {"mc_level", modal.mc_level()},
          {"vscf_solved", vscf_solved},
          {"vscf_iterations", vscf_iterations},
          {"vscf_converged", vscf_converged},
          {"vscf_energy", vscf_energy},
          {"fvci_energy", fvci_energy},
          {"fvci_residual", fvci_residual},
          {"vcisd_energy", vcisd_energy},
          {"vcisdt_energy", vcisdt_energy}};
}

PreparedSystem prepare_system(const NModeHamiltonian& h, const SystemSpec& spec) {
  const ModeSpace& space = h.space();
  const bool primitive = space.modal_counts == space.primitive_sizes;

  std::vector<int> counts;
  if (spec.modals.size() == 1) {
    counts.assign(static_cast<std::size_t>(h.mode_count()), spec.modals[0]);
  } else if (!spec.modals.empty()) {
    counts = spec.modals;
  } else if (!spec.preset.empty()) {
    counts.assign(static_cast<std::size_t>(h.mode_count()), default_modal_count(spec.preset));
  } else {
    counts = space.modal_counts;
  }
  if (counts.size() != static_cast<std::size_t>(h.mode_count())) {
    throw ValidationError("modal count list length does not match the mode count");
  }

  std::optional<NModeHamiltonian> modal;
  bool solved = false, converged = false;
  int iterations = 0;
  if (primitive) {
    const VscfResult r = solve_vscf(h, spec.vscf);
    solved = true;
    iterations = r.iterations;
    converged = r.converged;
    modal.emplace(to_modal_basis(h, r, counts));
  } else {
    if (counts != space.modal_counts) {
      throw ValidationError("Hamiltonian is already in a truncated modal basis; "
                            "modal counts cannot be changed");
    }
    modal.emplace(h);
  }
  PreparedSystem out{*modal};
  out.vscf_solved = solved;
  out.vscf_iterations = iterations;
  out.vscf_converged = converged;
  const ConfigurationSpace cs = configuration_space(out.modal);
  out.vscf_energy = energy(out.modal, reference_state(cs));
  const VciResult full = solve_fvci(out.modal);
  out.fvci_energy = full.energy;
  out.fvci_residual = full.residual;
  const int m = out.modal.mode_count();
  out.vcisd_energy = solve_vci(out.modal, std::min(2, m)).energy;
  out.vcisdt_energy = solve_vci(out.modal, std::min(3, m)).energy;
  return out;
}

// --- pools and configs ------------------------------------------------------

OperatorPool make_pool(const ConfigurationSpace& space, const std::string& spec, bool generalized,
                       const std::vector<ExcitationOperator>& importance) {
  PoolOptions opt;
  opt.generalized = generalized;
  if (spec == "sd") return generate_pool(space, PoolKind::SD, opt);
  if (spec == "sdt") return generate_pool(space, PoolKind::SDT, opt);
  if (spec == "sd-decoupled") return generate_pool(space, PoolKind::SDDecoupled, opt);
  if (spec.starts_with("sdk:")) {
    const std::string digits = spec.substr(4);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      throw ValidationError("pool 'sdk:<k>' needs a nonnegative integer k");
    }
    opt.k = std::stoi(digits);
    opt.importance = importance;
    return generate_pool(space, PoolKind::SDK, opt);
  }
  throw ValidationError("unknown pool '" + spec + "' (sd, sdt, sd-decoupled, sdk:<k>)");
}

std::pair<std::vector<ExcitationOperator>, int> harvest_importance(
    const std::vector<TraceRow>& rows, const ConfigurationSpace& space) {
  std::vector<ExcitationOperator> order;
  auto seen = [&](const ExcitationOperator& op) {
    return std::find(order.begin(), order.end(), op) != order.end();
  };
  for (const auto& row : rows) {
    for (const auto& id : row.selected_ops) {
      const PoolElement e = PoolElement::parse(id);
      if (e.factors.size() == 1 && e.factors[0].rank() == 3 && !seen(e.factors[0])) {
        e.factors[0].check(space);
        order.push_back(e.factors[0]);
      }
    }
  }
  const int entered = static_cast<int>(order.size());
  for (const auto& e : generate_pool(space, PoolKind::SDT).elements) {
    if (e.factors[0].rank() == 3 && !seen(e.factors[0])) order.push_back(e.factors[0]);
  }
  return {order, entered};
}

CnotModel parse_cnot_model(const std::string& spec) {
  if (spec.empty() || spec == "formula" || spec == "pauli-ladder") return CnotModel{};
  if (spec.starts_with("table:")) return CnotModel::load(spec.substr(6));
  if (spec.starts_with("costs:")) {
    std::vector<std::int64_t> costs;
    std::stringstream in(spec.substr(6));
    for (std::string item; std::getline(in, item, ',');) {
      std::int64_t v = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc() || ptr != item.data() + item.size()) {
        throw ValidationError("bad CNOT cost '" + item + "'");
      }
      costs.push_back(v);
    }
    return CnotModel::from_table(std::move(costs));
  }
  throw ValidationError("unknown CNOT model '" + spec + "' (formula, table:<file>, costs:<c1,c2,...>)");
}

json adapt_config_to_json(const AdaptConfig& cfg) {
  return {{"eps", cfg.gradient_threshold},
          {"max_iterations", cfg.max_iterations},
          {"gradient_tolerance", cfg.optimizer.gradient_tolerance},
          {"max_evaluations", cfg.optimizer.max_evaluations},
          {"warm_start", cfg.warm_start},
          {"stall_threshold", cfg.stall_threshold},
          {"force_iterations", cfg.force_iterations},
          {"jacobian", cfg.jacobian},
          {"rank_absolute", cfg.rank_policy.absolute},
          {"cnot_model", cfg.cnot.description()}};
}

AdaptConfig adapt_config_from_json(const json& j, AdaptConfig cfg) {
  static const char* known[] = {"eps",          "max_iterations",   "gradient_tolerance",
                                "max_evaluations", "warm_start",     "stall_threshold",
                                "force_iterations", "jacobian",      "rank_absolute",
                                "cnot_model",       "threads"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ValidationError("unknown adapt key '" + key + "'");
    }
  }
  cfg.gradient_threshold = j.value("eps", cfg.gradient_threshold);
  cfg.max_iterations = j.value("max_iterations", cfg.max_iterations);
  cfg.optimizer.gradient_tolerance = j.value("gradient_tolerance", cfg.optimizer.gradient_tolerance);
  cfg.optimizer.max_evaluations = j.value("max_evaluations", cfg.optimizer.max_evaluations);
  cfg.warm_start = j.value("warm_start", cfg.warm_start);
  cfg.stall_threshold = j.value("stall_threshold", cfg.stall_threshold);
  cfg.force_iterations = j.value("force_iterations", cfg.force_iterations);
  cfg.jacobian = j.value("jacobian", cfg.jacobian);
  cfg.rank_policy.absolute = j.value("rank_absolute", cfg.rank_policy.absolute);
  cfg.threads = j.value("threads", cfg.threads);
  if (j.contains("cnot_model")) cfg.cnot = parse_cnot_model(j["cnot_model"].get<std::string>());
  if (!(cfg.gradient_threshold > 0.0)) throw ValidationError("eps must be > 0");
  if (cfg.max_iterations < 0 || cfg.force_iterations < 0) {
    throw ValidationError("iteration counts must be >= 0");
  }
  return cfg;
}

// --- experiment spec --------------------------------------------------------

ExperimentSpec ExperimentSpec::from_json(const json& j) {
  ExperimentSpec s;
  static const char* known[] = {"name",  "kind",   "system", "adapt", "generalized",
                                "runs",  "ks",     "alphas", "pairs", "cnot_model",
                                "output_dir", "parallel_runs"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ValidationError("unknown experiment key '" + key + "'");
    }
  }
  s.name = j.value("name", s.name);
  s.kind = j.value("kind", s.kind);
  if (s.kind != "pool_comparison" && s.kind != "sdk_ladder" && s.kind != "alpha_scan") {
    throw ValidationError("unknown experiment kind '" + s.kind + "'");
  }
  if (!j.contains("system")) throw ValidationError("experiment needs a 'system'");
  s.system = SystemSpec::from_json(j["system"]);
  s.cnot_model = j.value("cnot_model", std::string());
  s.adapt.cnot = parse_cnot_model(s.cnot_model);
  if (j.contains("adapt")) s.adapt = adapt_config_from_json(j["adapt"], s.adapt);
  s.generalized = j.value("generalized", false);
  if (j.contains("runs")) {
    for (const auto& r : j["runs"]) {
      RunSpec run;
      run.pool = r.value("pool", run.pool);
      run.strategy = parse_strategy(r.value("strategy", std::string("max")));
      run.seed = r.value("seed", run.seed);
      run.label = r.value("label", run.pool + "_" + to_string(run.strategy));
      s.runs.push_back(run);
    }
  }
  if (j.contains("ks")) s.ks = j["ks"].get<std::vector<int>>();
  if (j.contains("alphas")) s.alphas = j["alphas"].get<std::vector<double>>();
  if (j.contains("pairs")) s.pairs = j["pairs"].get<std::vector<std::pair<int, int>>>();
  s.output_dir = j.value("output_dir", s.output_dir.string());
  s.parallel_runs = std::max(1, j.value("parallel_runs", 1));
  std::vector<std::string> labels;
  for (const auto& r : s.runs) {
    if (r.label.empty() || r.label.find_first_of("/\\") != std::string::npos) {
      throw ValidationError("run label '" + r.label + "' is not a valid file stem");
    }
    if (std::find(labels.begin(), labels.end(), r.label) != labels.end()) {
      throw ValidationError("duplicate run label '" + r.label + "'");
    }
    labels.push_back(r.label);
  }
  return s;
}

ExperimentSpec ExperimentSpec::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open experiment spec " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("cannot parse " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

json ExperimentSpec::to_json() const {
  json runs_j = json::array();
  for (const auto& r : runs) {
    runs_j.push_back({{"label", r.label},
                      {"pool", r.pool},
                      {"strategy", to_string(r.strategy)},
                      {"seed", r.seed}});
  }
  return {{"name", name},
          {"kind", kind},
          {"system", system.to_json()},
          {"adapt", adapt_config_to_json(adapt)},
          {"generalized", generalized},
          {"runs", runs_j},
          {"ks", ks},
          {"alphas", alphas},
          {"pairs", pairs},
          {"cnot_model", adapt.cnot.description()}};
}

// --- runs -------------------------------------------------------------------

RunRecord execute_run(const NModeHamiltonian& h, const PreparedSystem& sys, const RunSpec& run,
                      const AdaptConfig& cfg, bool generalized,
                      const std::vector<ExcitationOperator>& importance, const fs::path& dir,
                      const json& context) {
  const ConfigurationSpace space = configuration_space(h);
  const OperatorPool pool = make_pool(space, run.pool, generalized, importance);
  SelectionStrategy strategy{run.strategy, run.seed};

  RunRecord rec;
  rec.spec = run;
  rec.trace = run_adapt(h, pool, strategy, cfg, sys.fvci_energy);

  json config = context;
  config["pool"] = run.pool;
  config["pool_size"] = pool.size();
  config["strategy"] = to_string(run.strategy);
  config["generalized"] = generalized;
  config["adapt"] = adapt_config_to_json(cfg);
  if (run.pool.starts_with("sdk:")) config["importance"] = pool.metadata.value("importance", json());

  rec.summary = run_summary(rec.trace, config, run.seed);
  rec.summary["label"] = run.label;
  rec.summary["system"] = sys.to_json();
  rec.summary["vcisd_error"] = sys.vcisd_energy - sys.fvci_energy;
  rec.summary["vcisdt_error"] = sys.vcisdt_energy - sys.fvci_energy;

  fs::create_directories(dir);
  rec.csv = dir / (run.label + ".csv");
  write_trace(TraceFile{provenance(config, run.seed), rec.trace.rows}, rec.csv);
  rec.summary["trace_file"] = rec.csv.filename().string();
  write_json(rec.summary, dir / (run.label + ".json"));
  return rec;
}

namespace {

template <class Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  const std::size_t w = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> team;
  for (std::size_t t = 0; t < w; ++t) {
    team.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : team) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

json base_summary(const ExperimentSpec& spec) {
  return {{"tool_version", kToolVersion},
          {"kind", spec.kind},
          {"name", spec.name},
          {"config_hash", config_hash(spec.to_json())},
          {"spec", spec.to_json()}};
}

json run_entry(const RunRecord& r) {
  return {{"label", r.spec.label},
          {"pool", r.spec.pool},
          {"strategy", to_string(r.spec.strategy)},
          {"seed", r.spec.seed},
          {"trace_file", r.csv.filename().string()},
          {"status", r.summary["status"]},
          {"iterations", r.summary["iterations"]},
          {"gradient_converged_at", r.summary["gradient_converged_at"]},
          {"final_error", r.summary["final_error"]},
          {"stall_error", r.summary["stall_error"]},
          {"cnot_total", r.summary["cnot_total"]},
          {"rank_plateau_onset", r.summary["rank_plateau_onset"]}};
}

json system_entry(const PreparedSystem& sys) {
  json j = sys.to_json();
  j["vcisd_error"] = sys.vcisd_energy - sys.fvci_energy;
  j["vcisdt_error"] = sys.vcisdt_energy - sys.fvci_energy;
  return j;
}

}  // namespace

ExperimentResult run_pool_comparison(const ExperimentSpec& spec) {
  const NModeHamiltonian h0 = load_system(spec.system);
  const PreparedSystem sys = prepare_system(h0, spec.system);
  std::vector<RunSpec> runs = spec.runs;
  if (runs.empty()) runs = {{"sd", "sd", StrategyKind::MaxGrad, 0}, {"sdt", "sdt", StrategyKind::MaxGrad, 0}};
  const json context = {{"experiment", spec.name}, {"system", spec.system.to_json()}};

  ExperimentResult out;
  out.runs.resize(runs.size());
  parallel_for(runs.size(), spec.parallel_runs, [&](std::size_t i) {
    out.runs[i] = execute_run(sys.modal, sys, runs[i], spec.adapt, spec.generalized, {},
                              spec.output_dir, context);
  });
  out.summary = base_summary(spec);
  out.summary["system"] = system_entry(sys);
  out.summary["runs"] = json::array();
  for (const auto& r : out.runs) out.summary["runs"].push_back(run_entry(r));
  return out;
}

ExperimentResult run_sdk_ladder(const ExperimentSpec& spec) {
  const NModeHamiltonian h0 = load_system(spec.system);
  const PreparedSystem sys = prepare_system(h0, spec.system);
  const json context = {{"experiment", spec.name}, {"system", spec.system.to_json()}};
  const ConfigurationSpace space = configuration_space(sys.modal);

  ExperimentResult out;
  RunSpec sdt{"sdt", "sdt", StrategyKind::MaxGrad, 0};
  if (!spec.runs.empty()) sdt = spec.runs.front();
  out.runs.push_back(execute_run(sys.modal, sys, sdt, spec.adapt, spec.generalized, {},
                                 spec.output_dir, context));
  const auto [importance, entered] = harvest_importance(out.runs[0].trace.rows, space);
  const int full = static_cast<int>(importance.size());

  std::vector<int> ks = spec.ks;
  if (ks.empty()) {
    for (int k = 0; k < full; k = k == 0 ? 1 : 2 * k) ks.push_back(k);
    if (entered > 0 && std::find(ks.begin(), ks.end(), entered) == ks.end()) ks.push_back(entered);
    ks.push_back(full);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  }
  for (int k : ks) {
    if (k < 0 || k > full) {
      throw ValidationError("ladder k=" + std::to_string(k) + " outside the harvested ordering (0.." +
                            std::to_string(full) + ")");
    }
  }
  std::vector<RunRecord> ladder(ks.size());
  parallel_for(ks.size(), spec.parallel_runs, [&](std::size_t i) {
    RunSpec run{"sdk_" + std::to_string(ks[i]), "sdk:" + std::to_string(ks[i]), sdt.strategy,
                sdt.seed};
    ladder[i] = execute_run(sys.modal, sys, run, spec.adapt, spec.generalized, importance,
                            spec.output_dir, context);
  });

  out.summary = base_summary(spec);
  out.summary["system"] = system_entry(sys);
  out.summary["sdt_run"] = run_entry(out.runs[0]);
  json ids = json::array();
  for (const auto& op : importance) ids.push_back(op.id());
  out.summary["importance"] = ids;
  out.summary["triples_entered"] = entered;
  out.summary["triple_count"] = full;
  out.summary["ladder"] = json::array();
  for (std::size_t i = 0; i < ks.size(); ++i) {
    json e = run_entry(ladder[i]);
    e["k"] = ks[i];
    out.summary["ladder"].push_back(e);
  }
  for (auto& r : ladder) out.runs.push_back(std::move(r));
  return out;
}

ExperimentResult run_alpha_scan(const ExperimentSpec& spec) {
  const NModeHamiltonian h0 = load_system(spec.system);
  if (h0.mode_count() != 3) throw ValidationError("alpha scan needs a three-mode Hamiltonian");
  if (h0.mc_level() > 2) throw ValidationError("alpha scan needs an n=2 Hamiltonian");
  if (spec.alphas.empty()) throw ValidationError("alpha scan needs at least one alpha");
  const json context = {{"experiment", spec.name}, {"system", spec.system.to_json()}};
  RunSpec base{"sd", "sd", StrategyKind::MaxGrad, 0};
  if (!spec.runs.empty()) base = spec.runs.front();

  struct Point {
    std::optional<PreparedSystem> sys;
    RunRecord run;
  };
  std::vector<Point> points(spec.alphas.size());
  parallel_for(spec.alphas.size(), spec.parallel_runs, [&](std::size_t i) {
    const NModeHamiltonian scaled = scale_pair_couplings(h0, spec.alphas[i], spec.pairs);
    points[i].sys.emplace(prepare_system(scaled, spec.system));
    RunSpec run = base;
    run.label = base.label + "_alpha_" + std::to_string(i);
    json ctx = context;
    ctx["alpha"] = spec.alphas[i];
    ctx["pairs"] = spec.pairs;
    points[i].run = execute_run(points[i].sys->modal, *points[i].sys, run, spec.adapt,
                                spec.generalized, {}, spec.output_dir, ctx);
  });

  ExperimentResult out;
  out.summary = base_summary(spec);
  out.summary["scan"] = json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    json e = run_entry(points[i].run);
    e["alpha"] = spec.alphas[i];
    e["system"] = system_entry(*points[i].sys);
    out.summary["scan"].push_back(e);
    out.runs.push_back(std::move(points[i].run));
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  ExperimentResult r;
  if (spec.kind == "pool_comparison") {
    r = run_pool_comparison(spec);
  } else if (spec.kind == "sdk_ladder") {
    r = run_sdk_ladder(spec);
  } else if (spec.kind == "alpha_scan") {
    r = run_alpha_scan(spec);
  } else {
    throw ValidationError("unknown experiment kind '" + spec.kind + "'");
  }
  fs::create_directories(spec.output_dir);
  write_json(r.summary, spec.output_dir / "summary.json");
  return r;
}

}  // namespace vibadapt
