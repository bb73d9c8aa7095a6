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
#include "cli.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "vibadapt/adapt.hpp"
#include "vibadapt/errors.hpp"
#include "vibadapt/experiments.hpp"
#include "vibadapt/trace_io.hpp"
#include "vibadapt/vci.hpp"
#include "vibadapt/verify.hpp"
#include "vibadapt/vscf.hpp"

namespace vibadapt {
namespace {

using nlohmann::json;

struct SystemFlags {
  std::string preset;
  std::string ham;
  std::vector<std::string> params;
  std::string modals;

  void attach(CLI::App* app) {
    auto* p = app->add_option("--preset", preset, "Model preset (coupled3, coupled6)");
    auto* h = app->add_option("--ham", ham, "Hamiltonian JSON file");
    p->excludes(h);
    app->add_option("--param", params, "Preset override key=value (repeatable)");
    app->add_option("--modals", modals, "Modals per mode: N or N0,N1,...");
  }

  SystemSpec spec() const {
    SystemSpec s;
    if (preset.empty() && ham.empty()) throw ValidationError("one of --preset or --ham is required");
    s.preset = preset;
    s.hamiltonian_path = ham;
    if (!ham.empty() && !params.empty()) throw ValidationError("--param only applies to --preset");
    for (const auto& kv : params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ValidationError("--param expects key=value, got '" + kv + "'");
      }
      const std::string value = kv.substr(eq + 1);
      char* end = nullptr;
      const double v = std::strtod(value.c_str(), &end);
      if (value.empty() || *end != '\0') throw ValidationError("--param value is not a number: " + kv);
      s.params[kv.substr(0, eq)] = v;
    }
    if (!modals.empty()) {
      std::stringstream ss(modals);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          std::size_t used = 0;
          s.modals.push_back(std::stoi(item, &used));
          if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
          throw ValidationError("--modals expects integers, got '" + modals + "'");
        }
      }
    }
    return s;
  }
};

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("VIBADAPT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"vibadapt: vibrational ADAPT-VQE simulation engine"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kToolVersion));
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (fallback: VIBADAPT_THREADS)")
      ->check(CLI::NonNegativeNumber);

  // ham
  auto* ham = app.add_subcommand("ham", "Build or load a Hamiltonian and describe it");
  SystemFlags ham_sys;
  ham_sys.attach(ham);
  std::string ham_out;
  int ham_restrict = -1;
  double ham_alpha = 1.0;
  ham->add_option("--out", ham_out, "Write the Hamiltonian JSON here");
  ham->add_option("--restrict", ham_restrict, "Keep terms with at most n active modes");
  ham->add_option("--alpha", ham_alpha, "Scale the (0,2) and (1,2) pair couplings");

  // vscf
  auto* vscf = app.add_subcommand("vscf", "Solve VSCF in the primitive basis");
  SystemFlags vscf_sys;
  vscf_sys.attach(vscf);
  int vscf_max_iter = 200;
  double vscf_tol = 1e-12;
  std::string vscf_coeffs, vscf_modal_out;
  vscf->add_option("--max-iter", vscf_max_iter)->check(CLI::PositiveNumber);
  vscf->add_option("--tol", vscf_tol)->check(CLI::PositiveNumber);
  vscf->add_option("--coefficients", vscf_coeffs, "Write modal coefficients (JSON)");
  vscf->add_option("--save-modal", vscf_modal_out, "Write the truncated modal-basis Hamiltonian");

  // vci
  auto* vci = app.add_subcommand("vci", "VCI / FVCI reference energies");
  SystemFlags vci_sys;
  vci_sys.attach(vci);
  std::string level = "full";
  vci->add_option("--level", level)->check(CLI::IsMember({"sd", "sdt", "full"}));

  // adapt
  auto* adapt = app.add_subcommand("adapt", "Run ADAPT-VQE and write a trace");
  SystemFlags adapt_sys;
  adapt_sys.attach(adapt);
  std::string pool = "sd", strategy = "max", cnot_model, importance, out_stem = "adapt";
  std::uint64_t seed = 0;
  AdaptConfig cfg;
  bool generalized = false;
  adapt->add_option("--pool", pool, "sd | sdt | sd-decoupled | sdk:<k>");
  adapt->add_option("--strategy", strategy)->check(CLI::IsMember({"max", "max+rand", "top2"}));
  adapt->add_option("--seed", seed);
  adapt->add_option("--eps", cfg.gradient_threshold)->check(CLI::PositiveNumber);
  adapt->add_option("--max-iter", cfg.max_iterations)->check(CLI::NonNegativeNumber);
  adapt->add_flag("--jacobian", cfg.jacobian, "Record the Jacobian rank per iteration");
  adapt->add_option("--cnot-model", cnot_model, "formula | table:<file>");
  adapt->add_option("--force-iterations", cfg.force_iterations)->check(CLI::NonNegativeNumber);
  adapt->add_flag("--generalized", generalized, "Add generalized singles to the pool");
  adapt->add_option("--importance", importance, "Trace CSV of a prior SDT run (for sdk:<k>)");
  adapt->add_option("--out", out_stem, "Output stem: writes <stem>.csv and <stem>.json");

  // verify
  auto* verify = app.add_subcommand("verify", "Formal-claim verification suites");
  std::string suite = "all";
  int trials = 100;
  std::uint64_t verify_seed = 0;
  verify->add_option("--suite", suite)
      ->check(CLI::IsMember({"identities", "expansion", "disentangle", "all"}));
  verify->add_option("--trials", trials)->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_seed);

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run an experiment spec");
  std::string spec_path, out_dir;
  experiment->add_option("spec", spec_path, "Experiment spec JSON")->required();
  experiment->add_option("--out-dir", out_dir, "Override the spec's output_dir");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const int nthreads = resolve_threads(threads);
    if (*ham) {
      NModeHamiltonian h = load_system(ham_sys.spec());
      if (ham_restrict >= 0) h = restrict_mc_level(h, ham_restrict);
      if (ham_alpha != 1.0) h = scale_pair_couplings(h, ham_alpha, {{0, 2}, {1, 2}});
      if (!ham_out.empty()) save_hamiltonian(h, ham_out);
      print({{"mode_count", h.mode_count()},
             {"primitive_sizes", h.space().primitive_sizes},
             {"modal_counts", h.space().modal_counts},
             {"terms", h.terms().size()},
             {"mc_level", h.mc_level()},
             {"dimension", h.dimension()},
             {"metadata", h.metadata()}});
    } else if (*vscf) {
      SystemSpec s = vscf_sys.spec();
      s.vscf.max_iter = vscf_max_iter;
      s.vscf.tol = vscf_tol;
      const NModeHamiltonian h = load_system(s);
      const VscfResult r = solve_vscf(h, s.vscf);
      if (!vscf_coeffs.empty()) {
        json c = json::array();
        for (const auto& m : r.modal_coefficients) {
          json rows = json::array();
          for (Eigen::Index i = 0; i < m.rows(); ++i) {
            std::vector<double> row(static_cast<std::size_t>(m.cols()));
            for (Eigen::Index k = 0; k < m.cols(); ++k) row[static_cast<std::size_t>(k)] = m(i, k);
            rows.push_back(row);
          }
          c.push_back(rows);
        }
        write_json({{"modal_coefficients", c}}, vscf_coeffs);
      }
      if (!vscf_modal_out.empty()) {
        const PreparedSystem sys = prepare_system(h, s);
        save_hamiltonian(sys.modal, vscf_modal_out);
      }
      print({{"energy", r.vscf_energy}, {"iterations", r.iterations}, {"converged", r.converged}});
      if (!r.converged) return 2;
    } else if (*vci) {
      const SystemSpec s = vci_sys.spec();
      const NModeHamiltonian h0 = load_system(s);
      const PreparedSystem sys = prepare_system(h0, s);
      const int m = sys.modal.mode_count();
      const VciResult r = level == "full" ? solve_fvci(sys.modal)
                                          : solve_vci(sys.modal, std::min(m, level == "sd" ? 2 : 3));
      print({{"level", level},
             {"energy", r.energy},
             {"subspace_dim", r.subspace_dim},
             {"residual", r.residual},
             {"modal_counts", sys.modal.space().modal_counts}});
    } else if (*adapt) {
      const SystemSpec s = adapt_sys.spec();
      const NModeHamiltonian h0 = load_system(s);
      const PreparedSystem sys = prepare_system(h0, s);
      cfg.cnot = parse_cnot_model(cnot_model);
      cfg.threads = nthreads;
      std::vector<ExcitationOperator> order;
      if (pool.starts_with("sdk:")) {
        if (importance.empty()) throw ValidationError("pool sdk:<k> needs --importance <trace.csv>");
        order = harvest_importance(read_trace(importance).rows, configuration_space(sys.modal)).first;
      }
      const std::filesystem::path stem(out_stem);
      RunSpec run{stem.filename().string(), pool, parse_strategy(strategy), seed};
      const json context = {{"system", s.to_json()}};
      const std::filesystem::path dir = stem.has_parent_path() ? stem.parent_path() : ".";
      const RunRecord rec = execute_run(sys.modal, sys, run, cfg, generalized, order, dir, context);
      print({{"status", rec.summary["status"]},
             {"iterations", rec.summary["iterations"]},
             {"final_energy", rec.summary["final_energy"]},
             {"final_error", rec.summary["final_error"]},
             {"trace", rec.csv.string()}});
    } else if (*verify) {
      json report = json::object();
      bool ok = true;
      auto add = [&](const SuiteReport& r) {
        report[r.name] = r.details;
        report[r.name]["passed"] = r.passed;
        ok &= r.passed;
      };
      if (suite == "identities" || suite == "all") add(verify_identities(trials, verify_seed));
      if (suite == "expansion" || suite == "all") add(verify_expansion(20, verify_seed));
      if (suite == "disentangle" || suite == "all") add(verify_disentangle_default());
      report["passed"] = ok;
      print(report);
      return ok ? 0 : 2;
    } else if (*experiment) {
      ExperimentSpec spec = ExperimentSpec::load(spec_path);
      if (!out_dir.empty()) spec.output_dir = out_dir;
      spec.adapt.threads = nthreads;
      const ExperimentResult r = run_experiment(spec);
      std::cout << (spec.output_dir / "summary.json").string() << '\n';
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace vibadapt
