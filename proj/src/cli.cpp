// Copyright 2026 The qite Authors
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

#include "qite/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qite/combopt.hpp"
#include "qite/error.hpp"
#include "qite/ite_exact.hpp"
#include "qite/ite_trotter.hpp"
#include "qite/report.hpp"
#include "qite/spectral.hpp"
#include "qite/state.hpp"
#include "qite/varqite.hpp"

namespace qite {
namespace {

struct Flags {
  std::string command;
  std::string hamiltonian;
  std::string qubo;
  std::string init = "plus";
  std::string backend = "exact";
  std::string policy = "full";
  std::string out = ".";
  std::string config;
  double time = 1.0;
  double delta = 0.01;
  double epsilon = 0.5;
  int samples = 100;
  int repeats = 200;
  std::uint64_t seed = 0;
  std::uint64_t shots = 100;
  bool euler = false;
};

Json flags_json(const Flags& f) {
  Json j;
  j["command"] = f.command;
  if (f.command == "qubo") {
    j["qubo"] = f.qubo;
    j["epsilon"] = f.epsilon;
    j["shots"] = f.shots;
    j["backend"] = f.backend;
    j["repeats"] = f.repeats;
  } else {
    j["hamiltonian"] = f.hamiltonian;
    j["time"] = f.time;
    j["init"] = f.init;
  }
  if (f.command != "exact") j["delta"] = f.delta;
  if (f.command == "compile") {
    j["policy"] = f.policy;
    j["euler"] = f.euler;
  }
  j["samples"] = f.samples;
  j["seed"] = f.seed;
  j["out"] = f.out;
  if (!f.config.empty()) j["config"] = f.config;
  return j;
}

Json header(const Flags& f) {
  Json j;
  j["command"] = f.command;
  j["flags"] = flags_json(f);
  j["seed"] = f.seed;
  return j;
}

std::string csv_comment(const Flags& f) {
  return "qite " + flags_json(f).dump();
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

// Appends `--key value` for every config entry the command line leaves unset.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path);
  std::string raw;
  std::size_t line_no = 0;
  std::vector<std::string> extra;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                           ": expected key=value",
                       line_no, 0);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == "config") {
      throw ParseError(path + ":" + std::to_string(line_no) +
                           ": invalid key '" + key + "'",
                       line_no, 0);
    }
    const std::string flag = "--" + key;
    if (has_flag(args, flag)) continue;
    if (key == "euler") {
      if (value == "true" || value == "1") extra.push_back(flag);
      continue;
    }
    extra.push_back(flag);
    extra.push_back(value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

StateVector make_initial(const std::string& init, int qubits,
                         std::uint64_t seed) {
  if (init == "plus") return equal_superposition(qubits);
  if (init == "random") return random_state(qubits, seed);
  if (init.rfind("basis:", 0) == 0) {
    const std::string bits = init.substr(6);
    if (static_cast<int>(bits.size()) != qubits) {
      throw InputError("--init basis:<bits> needs " + std::to_string(qubits) +
                       " bits, got '" + bits + "'");
    }
    return basis_state(qubits, bits);
  }
  throw InputError("unknown --init '" + init +
                   "' (expected plus, random or basis:<bits>)");
}

std::filesystem::path output_dir(const Flags& f) {
  std::filesystem::path dir(f.out);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_text(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& body) {
  std::ofstream file(path);
  if (!file) throw InputError("cannot write " + path.string());
  body(file);
  if (!file) throw InputError("write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const Json& j) {
  write_text(path, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
}

std::optional<Spectrum> spectrum_if_small(const Hamiltonian& h) {
  if (h.qubits() > dense_cap()) return std::nullopt;
  return eigendecompose(h);
}

void add_spectrum(Json& report, const Hamiltonian& h,
                  const std::optional<Spectrum>& spec) {
  report["Q"] = h.qubits();
  if (spec) {
    const Json s = spectrum_summary(*spec);
    report["mu"] = s["mu"];
    report["gap"] = s["gap"];
    report["ground_energy"] = s["ground_energy"];
  } else {
    report["mu"] = nullptr;
    report["gap"] = nullptr;
  }
}

int cmd_exact(const Flags& f, std::ostream& out, std::ostream& err) {
  const Hamiltonian h = load_hamiltonian(f.hamiltonian);
  const Spectrum spec = eigendecompose(h);
  const StateVector psi0 = make_initial(f.init, h.qubits(), f.seed);
  const ExactEvolution run = exact_evolve(psi0, spec, f.time, f.samples);

  Json report = header(f);
  add_spectrum(report, h, spec);
  const Json summary = trace_summary(run.trace);
  report["f0"] = summary["f0"];
  report["orthogonal_start"] = run.trace.orthogonal_start;
  const bool bound_ok = run.trace.fidelity_bound_ok();
  report["fidelity_bound_ok"] = bound_ok;
  report["trace"] = summary;

  const auto dir = output_dir(f);
  write_text(dir / "trace.csv", [&](std::ostream& o) {
    write_trace_csv(o, run.trace, csv_comment(f));
  });
  write_json(dir / "report.json", report);
  out << report.dump(2) << '\n';
  if (run.trace.orthogonal_start) {
    err << "warning: start state is orthogonal to the ground space; "
           "fidelity refers to the lowest populated level\n";
  }
  if (!bound_ok) {
    err << "error: fidelity fell below its lower bound\n";
    return kExitInvariant;
  }
  return kExitOk;
}

Real state_distance(const StateVector& a, const StateVector& b) {
  return (a.amplitudes() - b.amplitudes()).norm();
}

int cmd_trotter(const Flags& f, std::ostream& out, std::ostream& err) {
  const Hamiltonian h = load_hamiltonian(f.hamiltonian);
  const std::optional<Spectrum> spec = spectrum_if_small(h);
  const StateVector psi0 = make_initial(f.init, h.qubits(), f.seed);
  const TrotterEvolution run = trotter_evolve(psi0, h, f.time, f.delta, spec);
  const Real evolved = run.plan.layers * f.delta;

  Json report = header(f);
  add_spectrum(report, h, spec);
  report["delta"] = f.delta;
  report["layers"] = run.plan.layers;
  report["factors_total"] = run.factors_total;
  report["evolved_time"] = evolved;
  report["residual_time"] = run.plan.residual_time;
  Json warnings = Json::array();
  if (run.plan.single_layer_warning) {
    warnings.push_back("delta >= time: a single layer of length delta");
  }
  report["warnings"] = warnings;
  const Json summary = trace_summary(run.trace);
  report["f0"] = summary["f0"];
  report["fidelity_bound_ok"] = summary["fidelity_bound_ok"];
  if (spec) {
    const ExactEvolution exact = exact_evolve(psi0, *spec, evolved, 1);
    report["error_vs_exact"] =
        state_distance(run.final_state, exact.final_state);
  } else {
    report["error_vs_exact"] = nullptr;
  }
  report["trace"] = summary;

  const auto dir = output_dir(f);
  write_text(dir / "trace.csv", [&](std::ostream& o) {
    write_trace_csv(o, run.trace, csv_comment(f));
  });
  write_json(dir / "report.json", report);
  out << report.dump(2) << '\n';
  for (const auto& w : warnings) {
    err << "warning: " << w.get<std::string>() << '\n';
  }
  return kExitOk;
}

void write_compiled(const Flags& f, const CompileResult& res, Json report) {
  const auto dir = output_dir(f);
  write_text(dir / "circuit.txt",
             [&](std::ostream& o) { o << res.compiled.gate_list(); });
  Json steps = header(f);
  steps.update(to_json(res.compiled));
  write_json(dir / "steps.json", steps);
  write_text(dir / "trace.csv", [&](std::ostream& o) {
    write_trace_csv(o, res.trace, csv_comment(f));
  });
  write_json(dir / "report.json", report);
}

int cmd_compile(const Flags& f, std::ostream& out, std::ostream& err) {
  const Hamiltonian h = load_hamiltonian(f.hamiltonian);
  const std::optional<Spectrum> spec = spectrum_if_small(h);
  const StateVector psi0 = make_initial(f.init, h.qubits(), f.seed);
  StepOptions options;
  options.policy = parse_policy(f.policy);
  options.euler_predictor = f.euler;

  std::size_t terms = 0;
  for (const auto& term : h.terms()) terms += term.string.is_identity() ? 0 : 1;
  const LayerPlan plan = plan_layers(f.time, f.delta);
  const double gate_bound = std::pow(4.0, h.order_bound()) *
                            static_cast<double>(terms) * plan.layers;

  Json report = header(f);
  add_spectrum(report, h, spec);
  report["delta"] = f.delta;
  report["layers"] = plan.layers;
  report["gate_bound"] = gate_bound;

  try {
    const CompileResult res =
        compile_evolution(psi0, h, f.time, f.delta, options, spec);
    report["total_gates"] = res.compiled.total_gates;
    report["gates_within_bound"] =
        static_cast<double>(res.compiled.total_gates) <= gate_bound;
    Real min_fid = 1.0;
    for (const auto& s : res.compiled.steps) {
      min_fid = std::min(min_fid, s.step_fidelity);
    }
    report["min_step_fidelity"] = min_fid;
    if (spec) {
      const ExactEvolution exact =
          exact_evolve(psi0, *spec, plan.layers * f.delta, 1);
      report["fidelity_vs_exact"] =
          std::norm(inner(exact.final_state, res.final_state));
    } else {
      report["fidelity_vs_exact"] = nullptr;
    }
    report["trace"] = trace_summary(res.trace);
    write_compiled(f, res, report);
    out << report.dump(2) << '\n';
    if (plan.single_layer_warning) {
      err << "warning: delta >= time: a single layer of length delta\n";
    }
    return kExitOk;
  } catch (const CompileFailure& e) {
    report["failure"] = e.what();
    report["total_gates"] = e.partial().compiled.total_gates;
    write_compiled(f, e.partial(), report);
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}

int cmd_qubo(const Flags& f, std::ostream& out, std::ostream& err) {
  const QuboInstance q = load_qubo(f.qubo);
  CombinatorialOptions options;
  options.epsilon = f.epsilon;
  options.shots = f.shots;
  options.seed = f.seed;
  options.backend = parse_backend(f.backend);
  options.delta = f.delta;
  options.repeats = f.repeats;
  options.samples = f.samples;
  const SuccessReport r = run_combinatorial(q, options);

  Json report = header(f);
  report.update(to_json(r));
  write_json(output_dir(f) / "report.json", report);
  out << report.dump(2) << '\n';
  // The bound is a statement about exact evolution only.
  if (options.backend == Backend::kExact && !r.bound_ok) {
    err << "error: success probability fell below its lower bound\n";
    return kExitInvariant;
  }
  return kExitOk;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--seed", f.seed, "PRNG seed")->capture_default_str();
  sub->add_option("--samples", f.samples, "trace samples")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", f.out, "output directory")->capture_default_str();
  sub->add_option("--config", f.config, "key=value defaults; flags win");
}

void add_evolution(CLI::App* sub, Flags& f) {
  sub->add_option("--hamiltonian", f.hamiltonian, "Pauli-sum file")
      ->required();
  sub->add_option("--time", f.time, "imaginary time t")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--init", f.init, "plus | random | basis:<bits>")
      ->capture_default_str();
  add_common(sub, f);
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out,
            std::ostream& err) {
  Flags f;
  CLI::App app{"Imaginary time evolution toolkit", "qite"};
  app.require_subcommand(1);

  auto* exact = app.add_subcommand("exact", "exact evolution in the eigenbasis");
  add_evolution(exact, f);

  auto* trotter = app.add_subcommand("trotter", "first-order Trotterized evolution");
  add_evolution(trotter, f);
  trotter->add_option("--delta", f.delta, "layer step")->capture_default_str();

  auto* compile = app.add_subcommand("compile", "compile evolution to Pauli rotations");
  add_evolution(compile, f);
  compile->add_option("--delta", f.delta, "layer step")->capture_default_str();
  compile->add_option("--policy", f.policy, "full | reduced")
      ->capture_default_str();
  compile->add_flag("--euler", f.euler, "Euler predictor in continuation");

  auto* qubo = app.add_subcommand("qubo", "solve a QUBO by imaginary time evolution");
  qubo->add_option("--qubo", f.qubo, "QUBO file")->required();
  qubo->add_option("--epsilon", f.epsilon, "target success probability")
      ->capture_default_str();
  qubo->add_option("--shots", f.shots, "shots per experiment")
      ->capture_default_str();
  qubo->add_option("--backend", f.backend, "exact | trotter | varqite")
      ->capture_default_str();
  qubo->add_option("--delta", f.delta, "step for trotter/varqite")
      ->capture_default_str();
  qubo->add_option("--repeats", f.repeats, "seeded sampling experiments")
      ->capture_default_str();
  add_common(qubo, f);

  try {
    std::vector<std::string> args = merge_config(raw_args);
    // CLI11 consumes the vector overload back to front.
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }

    if (exact->parsed()) f.command = "exact";
    if (trotter->parsed()) f.command = "trotter";
    if (compile->parsed()) f.command = "compile";
    if (qubo->parsed()) f.command = "qubo";

    if (f.command == "exact") return cmd_exact(f, out, err);
    if (f.command == "trotter") return cmd_trotter(f, out, err);
    if (f.command == "compile") return cmd_compile(f, out, err);
    return cmd_qubo(f, out, err);
  } catch (const SingularityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const homotopy::PathFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const StateError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace qite
