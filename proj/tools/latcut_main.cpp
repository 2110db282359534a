// Copyright 2026 The latcut Authors
// SPDX-License-Identifier: MIT
//
// latcut: batch driver for the cutting-plane solver.
//
//   latcut run   --instance f.json --kind {separation|sfm} --out report.json
//   latcut sweep --kind {separation|sfm} --n-list 2,3,4 --out table.csv
//
// Exit codes: 0 success, 1 I/O or schema error, 2 solver alarm (budget
// exhausted, unverified answer, numerical failure). Reports are JSON and
// byte-reproducible for a fixed (instance, flags, seed) triple except for
// the wall_time_ms field; sweep tables are CSV.

#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latcut/instances.hpp"
#include "latcut/sfm.hpp"
#include "latcut/sweep.hpp"

namespace {

using latcut::ProblemKind;
using latcut::SvpBackend;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;

// Thrown for everything that is the caller's fault: unreadable files,
// malformed documents, contradictory flags. Mapped to exit 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunFlags {
  std::string instance_path;
  std::string kind = "sfm";
  std::string backend = "lll";
  double radius = 0;  // 0: take the radius stored in the instance
  std::uint64_t seed = 1;
  int max_oracle_calls = 100000;
  std::string perturb = "on";
  bool diagnostics = false;
  std::string out_path;
};

struct SweepFlags {
  std::string kind = "separation";
  std::string backend = "lll";
  std::vector<int> n_list;
  std::vector<long long> radius_list = {1};
  int seeds = 5;
  bool diagnostics = false;
  std::string out_path;
};

SvpBackend parse_backend(const std::string& name) {
  return name == "exact" ? SvpBackend::kExact : SvpBackend::kLll;
}

json load_instance_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open instance file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("instance file " + path + " is not valid JSON: " +
                     e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open output file: " + path);
  out << text;
  if (!out) throw UsageError("failed writing output file: " + path);
}

json trace_to_json(const std::vector<latcut::SolverEvent>& trace) {
  json arr = json::array();
  for (const latcut::SolverEvent& e : trace) {
    arr.push_back({{"kind", e.kind == latcut::SolverEventKind::kCut
                                ? "cut"
                                : "reduce"},
                   {"dim", e.dim_before},
                   {"shortest_norm", e.shortest_norm},
                   {"threshold", e.threshold},
                   {"rounding_margin", e.rounding_margin}});
  }
  return arr;
}

const char* status_name(latcut::SolveStatus s) {
  switch (s) {
    case latcut::SolveStatus::kVerified: return "verified";
    case latcut::SolveStatus::kUnverified: return "unverified";
    case latcut::SolveStatus::kNoIntegralPoint: return "no_integral_point";
    case latcut::SolveStatus::kOracleLimit: return "oracle_limit";
  }
  return "unknown";
}

// Alarm string for the report's "error" field, or nullptr when the run is
// good enough to exit 0.
const char* alarm_of(latcut::SolveStatus s, bool verified_or_certified) {
  if (verified_or_certified) return nullptr;
  switch (s) {
    case latcut::SolveStatus::kOracleLimit: return "OracleBudgetExceeded";
    case latcut::SolveStatus::kNoIntegralPoint: return "NoIntegralPoint";
    default: return "Unverified";
  }
}

int finish_run(json report, const char* alarm, const RunFlags& flags,
               std::chrono::steady_clock::time_point start) {
  const auto elapsed = std::chrono::steady_clock::now() - start;
  report["wall_time_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  if (alarm) report["error"] = alarm;
  write_text(flags.out_path, report.dump(2) + "\n");
  if (alarm) {
    std::cerr << "latcut run: " << alarm << "\n";
    return kExitSolver;
  }
  return kExitOk;
}

int run_separation(const json& doc, const RunFlags& flags) {
  const latcut::ConvexInstance inst = latcut::ConvexInstance::from_json(doc);

  latcut::SolverConfig cfg;
  cfg.radius = flags.radius > 0 ? flags.radius
                                : static_cast<double>(inst.radius());
  cfg.seed = flags.seed;
  cfg.backend = parse_backend(flags.backend);
  cfg.perturb = flags.perturb != "off";
  cfg.max_oracle_calls = flags.max_oracle_calls;
  cfg.collect_trace = flags.diagnostics;

  const auto start = std::chrono::steady_clock::now();
  latcut::CuttingPlaneSolver solver(inst.oracle(),
                                    static_cast<std::size_t>(inst.dimension()),
                                    cfg);
  while (!solver.finished()) solver.advance();
  const latcut::SolveResult res = solver.result();

  json report;
  report["seed"] = flags.seed;
  report["backend"] = flags.backend;
  report["oracle_calls"] = res.oracle_calls;
  report["dimension_reductions"] = res.reductions;
  report["status"] = status_name(res.status);
  bool good = false;
  if (!res.minimizer.empty()) {
    const std::vector<long long> point = latcut::to_longs(res.minimizer);
    report["minimizer"] = point;
    report["value"] = inst.value_at(point);
    // The report never trusts the solver's own bookkeeping: the original
    // oracle re-certifies the point just before it is written.
    good = res.status == latcut::SolveStatus::kVerified &&
           inst.separate(latcut::VecD(point.begin(), point.end())).optimal;
  }
  if (flags.diagnostics) report["trace"] = trace_to_json(res.trace);
  return finish_run(std::move(report), alarm_of(res.status, good), flags,
                    start);
}

int run_sfm(const json& doc, const RunFlags& flags) {
  const latcut::SubmodularFunction f =
      latcut::SubmodularFunction::from_json(doc);

  latcut::SfmConfig cfg;
  cfg.seed = flags.seed;
  cfg.backend = parse_backend(flags.backend);
  cfg.perturb = flags.perturb != "off";
  cfg.max_oracle_calls = flags.max_oracle_calls;
  cfg.collect_trace = flags.diagnostics;

  const auto start = std::chrono::steady_clock::now();
  const latcut::SfmResult res = latcut::minimize_submodular(f, cfg);

  // Independent re-check on a fresh copy so the reported evaluation count
  // stays the algorithm's own.
  latcut::SubmodularFunction checker = f;
  std::uint64_t mask = 0;
  for (int e : res.minimizer) mask |= std::uint64_t{1} << e;
  const bool value_ok = checker.evaluate(mask) == res.value;

  json report;
  report["seed"] = flags.seed;
  report["backend"] = flags.backend;
  report["oracle_calls"] = res.separation_calls;
  report["eo_calls"] = res.evaluation_calls;
  report["dimension_reductions"] = res.solve.reductions;
  report["status"] = status_name(res.solver_status);
  report["certified"] = res.certified;
  report["lower_bound"] = res.lower_bound;
  json set = json::array();
  for (int e : res.minimizer) set.push_back(e + 1);  // 1-based ground elements
  report["minimizer"] = set;
  report["value"] = res.value;
  if (flags.diagnostics) report["trace"] = trace_to_json(res.solve.trace);

  const bool good =
      value_ok && (res.certified ||
                   res.solver_status == latcut::SolveStatus::kVerified);
  return finish_run(std::move(report), alarm_of(res.solver_status, good),
                    flags, start);
}

int do_run(const RunFlags& flags) {
  const json doc = load_instance_document(flags.instance_path);
  const std::string family =
      doc.is_object() && doc.contains("family") && doc["family"].is_string()
          ? doc["family"].get<std::string>()
          : "";
  const bool sfm_family = family == "directed_cut" ||
                          family == "concave_cardinality" ||
                          family == "coverage";
  if (flags.kind == "sfm") {
    if (!sfm_family)
      throw UsageError("--kind sfm needs a submodular instance family, got \"" +
                       family + "\"");
    return run_sfm(doc, flags);
  }
  if (sfm_family)
    throw UsageError("--kind separation cannot run the submodular family \"" +
                     family + "\"");
  return run_separation(doc, flags);
}

int do_sweep(const SweepFlags& flags) {
  latcut::SweepSpec spec;
  spec.kind = flags.kind == "sfm" ? ProblemKind::kSfm : ProblemKind::kSeparation;
  spec.n_list = flags.n_list;
  spec.radius_list = flags.radius_list;
  spec.seeds = flags.seeds;
  spec.backend = parse_backend(flags.backend);

  const latcut::SweepResult result =
      latcut::run_sweep(spec, flags.diagnostics ? &std::cerr : nullptr);
  // Partial tables are still written: a failed cell must not discard the
  // rows that did finish.
  write_text(flags.out_path, latcut::sweep_csv(result.rows));
  for (const std::string& e : result.errors)
    std::cerr << "latcut sweep: " << e << "\n";
  std::cerr << "latcut sweep: " << result.rows.size() << " cells, max C = "
            << result.max_ratio << "\n";
  return result.failures == 0 ? kExitOk : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"integral minimization of convex separation oracles"};
  app.require_subcommand(1);

  RunFlags run;
  CLI::App* run_cmd =
      app.add_subcommand("run", "solve one instance and write a JSON report");
  run_cmd->add_option("--instance", run.instance_path, "instance JSON file")
      ->required();
  run_cmd->add_option("--kind", run.kind, "problem kind")
      ->check(CLI::IsMember({"separation", "sfm"}));
  run_cmd->add_option("--backend", run.backend, "shortest-vector backend")
      ->check(CLI::IsMember({"lll", "exact"}));
  run_cmd->add_option("--radius", run.radius,
                      "search box radius (default: from the instance)");
  run_cmd->add_option("--seed", run.seed, "RNG seed");
  run_cmd->add_option("--max-oracle-calls", run.max_oracle_calls,
                      "separation-call budget");
  run_cmd->add_option("--perturb", run.perturb, "tie-breaking perturbation")
      ->check(CLI::IsMember({"on", "off"}));
  run_cmd->add_flag("--diagnostics", run.diagnostics,
                    "include the event trace in the report");
  run_cmd->add_option("--out", run.out_path, "report path")->required();

  SweepFlags sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run a scaling grid and write a CSV table");
  sweep_cmd->add_option("--kind", sweep.kind, "problem kind")
      ->check(CLI::IsMember({"separation", "sfm"}));
  sweep_cmd->add_option("--backend", sweep.backend, "shortest-vector backend")
      ->check(CLI::IsMember({"lll", "exact"}));
  sweep_cmd->add_option("--n-list", sweep.n_list, "dimensions to run")
      ->delimiter(',');
  sweep_cmd
      ->add_option("--radius-list", sweep.radius_list,
                   "box radii to run (separation kind)")
      ->delimiter(',');
  sweep_cmd->add_option("--seeds", sweep.seeds, "seeds 1..k per cell");
  sweep_cmd->add_flag("--diagnostics", sweep.diagnostics,
                      "print per-cell progress");
  sweep_cmd->add_option("--out", sweep.out_path, "CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return do_run(run);
    return do_sweep(sweep);
  } catch (const UsageError& e) {
    std::cerr << "latcut: " << e.what() << "\n";
    return kExitUsage;
  } catch (const latcut::InstanceError& e) {
    std::cerr << "latcut: " << e.what() << "\n";
    return kExitUsage;
  } catch (const latcut::SfmError& e) {
    std::cerr << "latcut: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    // Anything past schema validation is a solver-side failure.
    std::cerr << "latcut: solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
}
