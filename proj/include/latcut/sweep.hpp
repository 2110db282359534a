// Copyright 2026 The latcut Authors
// SPDX-License-Identifier: MIT
//
// Scaling sweeps: run the solver over a grid of (n, R, seed) cells and
// report, per cell, the observed call counts next to the expected growth
// model. The table is the empirical check that oracle complexity scales the
// way the construction promises:
//
//   separation, lll backend     oracle_calls <= C  * n * (n + log2 R)
//   separation, exact backend   oracle_calls <= C' * n * log2(2 n R)
//   sfm (any backend)           eo_calls     <= C" * n^3
//
// Each row carries its own ratio against the model; the sweep-wide fitted
// constant is the maximum ratio, so "constant <= bound" is a one-number
// verdict over the whole grid. Every cell is also verified for correctness
// (anchor recovery for the convex families, brute-force value match for the
// submodular ones): a scaling table over wrong answers would be noise.

#ifndef LATCUT_SWEEP_HPP_
#define LATCUT_SWEEP_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "latcut/instances.hpp"
#include "latcut/sfm.hpp"

namespace latcut {

enum class ProblemKind { kSeparation, kSfm };

inline constexpr const char* kSweepCsvHeader =
    "kind,n,R,seed,backend,oracle_calls,eo_calls,reductions,C";

inline const char* kind_name(ProblemKind k) {
  return k == ProblemKind::kSeparation ? "separation" : "sfm";
}

inline const char* backend_name(SvpBackend b) {
  return b == SvpBackend::kLll ? "lll" : "exact";
}

// Expected call growth for one cell. The separation models bound oracle
// calls; the sfm model bounds evaluation-oracle calls.
inline double call_model(ProblemKind kind, SvpBackend backend, int n,
                         long long radius) {
  const double nd = n;
  const double rd = static_cast<double>(radius);
  if (kind == ProblemKind::kSfm) return nd * nd * nd;
  if (backend == SvpBackend::kLll) return nd * (nd + std::log2(rd));
  return nd * std::log2(2.0 * nd * rd);
}

struct SweepSpec {
  ProblemKind kind = ProblemKind::kSeparation;
  std::vector<int> n_list;
  std::vector<long long> radius_list = {1};
  int seeds = 5;  // cells use seed values 1..seeds
  SvpBackend backend = SvpBackend::kLll;
  // Sampling effort per moment estimate. Sweeps trade estimate quality for
  // wall time: noisier moments cost a few extra cuts, which the ratio
  // columns absorb, while correctness is re-verified per cell regardless.
  SampleConfig sample{800, 80, 60, 6};
  int max_oracle_calls = 100000;
};

struct SweepRow {
  std::string kind;
  int n = 0;
  long long radius = 1;
  int seed = 0;
  std::string backend;
  long long oracle_calls = 0;
  long long eo_calls = 0;
  int reductions = 0;
  double ratio = 0;  // measured calls divided by the model value
};

struct SweepResult {
  std::vector<SweepRow> rows;
  int failures = 0;
  double max_ratio = 0;
  std::vector<std::string> errors;
};

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  char buf[160];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%d,%lld,%d,%s,%lld,%lld,%d,%.6f\n",
                  r.kind.c_str(), r.n, r.radius, r.seed, r.backend.c_str(),
                  r.oracle_calls, r.eo_calls, r.reductions, r.ratio);
    out += buf;
  }
  return out;
}

namespace detail {

// One convex-family cell: solve, insist on the known minimizer.
inline SweepRow separation_cell(const SweepSpec& spec, int n, long long radius,
                                int seed) {
  const auto family = seed % 2 == 1 ? ConvexInstance::Kind::kWeightedAbs
                                    : ConvexInstance::Kind::kQuadraticDiag;
  const ConvexInstance inst = random_convex_instance(
      family, n, radius, static_cast<std::uint64_t>(seed));

  SolverConfig cfg;
  cfg.radius = static_cast<double>(radius);
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.backend = spec.backend;
  cfg.sample = spec.sample;
  cfg.max_oracle_calls = spec.max_oracle_calls;

  CuttingPlaneSolver solver(inst.oracle(), static_cast<std::size_t>(n), cfg);
  while (!solver.finished()) solver.advance();
  const SolveResult res = solver.result();
  if (res.status != SolveStatus::kVerified)
    throw std::runtime_error("cell did not verify its answer");
  if (to_longs(res.minimizer) != inst.minimizer())
    throw std::runtime_error("cell minimizer disagrees with the instance");

  SweepRow row;
  row.oracle_calls = res.oracle_calls;
  row.eo_calls = 0;
  row.reductions = res.reductions;
  row.ratio = static_cast<double>(res.oracle_calls) /
              call_model(ProblemKind::kSeparation, spec.backend, n, radius);
  return row;
}

// One submodular cell: minimize, insist on the brute-force value.
inline SweepRow sfm_cell(const SweepSpec& spec, int n, int seed) {
  const auto family = static_cast<SubmodularFunction::Kind>(seed % 3);
  const SubmodularFunction f =
      random_instance(family, n, static_cast<std::uint64_t>(seed));

  SfmConfig cfg;
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.backend = spec.backend;
  cfg.max_oracle_calls = spec.max_oracle_calls;
  cfg.sample = spec.sample;

  const SfmResult res = minimize_submodular(f, cfg);
  if (res.value != brute_force_min(f).value)
    throw std::runtime_error("cell value disagrees with brute force");

  SweepRow row;
  row.oracle_calls = res.separation_calls;
  row.eo_calls = res.evaluation_calls;
  row.reductions = res.solve.reductions;
  row.ratio = static_cast<double>(res.evaluation_calls) /
              call_model(ProblemKind::kSfm, spec.backend, n, 1);
  return row;
}

}  // namespace detail

// Runs every cell of the grid in sorted (n, R, seed) order. A failing cell
// is recorded and skipped — partial tables are still written — and the
// failure count is surfaced for the caller's exit code. Cells are
// independent (own solver, own generator seed), so this loop could fan out;
// it stays sequential to keep the table bit-reproducible on one core.
inline SweepResult run_sweep(const SweepSpec& spec,
                             std::ostream* progress = nullptr) {
  SweepResult out;
  std::vector<int> ns = spec.n_list;
  std::sort(ns.begin(), ns.end());
  std::vector<long long> radii =
      spec.kind == ProblemKind::kSfm ? std::vector<long long>{1}
                                     : spec.radius_list;
  std::sort(radii.begin(), radii.end());

  for (int n : ns) {
    for (long long radius : radii) {
      for (int seed = 1; seed <= spec.seeds; ++seed) {
        SweepRow row;
        try {
          row = spec.kind == ProblemKind::kSfm
                    ? detail::sfm_cell(spec, n, seed)
                    : detail::separation_cell(spec, n, radius, seed);
        } catch (const std::exception& e) {
          ++out.failures;
          out.errors.push_back("cell n=" + std::to_string(n) +
                               " R=" + std::to_string(radius) +
                               " seed=" + std::to_string(seed) + ": " +
                               e.what());
          continue;
        }
        row.kind = kind_name(spec.kind);
        row.n = n;
        row.radius = radius;
        row.seed = seed;
        row.backend = backend_name(spec.backend);
        out.max_ratio = std::max(out.max_ratio, row.ratio);
        out.rows.push_back(std::move(row));
        if (progress)
          (*progress) << "cell " << row.kind << " n=" << n << " R=" << radius
                      << " seed=" << seed << " calls=" << row.oracle_calls
                      << " eo=" << row.eo_calls << " ratio=" << row.ratio
                      << "\n";
      }
    }
  }
  return out;
}

}  // namespace latcut

#endif  // LATCUT_SWEEP_HPP_
