// Copyright 2026 The latcut Authors
// SPDX-License-Identifier: MIT
//
// Tests for the cutting-plane solver. Oracles are built from convex functions
// with known integral minimizers, so every end-to-end expectation is frozen in
// advance; the structural invariants (reductions preserve the integral point
// set, thresholds gate reductions) are checked against exact rational
// arithmetic, not against the solver's own bookkeeping.

#include <cmath>
#include <optional>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "latcut/solver.hpp"

using namespace latcut;

namespace {

// Subgradient oracle for f(y) = sum (y_i - t_i)^2; optimal iff y == t.
SeparationOracle quadratic_oracle(VecD target) {
  return [target = std::move(target)](const VecD& x) {
    Separation s;
    double dist = 0;
    s.normal.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      s.normal[i] = 2.0 * (x[i] - target[i]);
      dist = std::max(dist, std::abs(x[i] - target[i]));
    }
    if (dist < 1e-9) {
      s.optimal = true;
      s.normal.clear();
    }
    return s;
  };
}

// f(y) = g . y over the box [-r, r]^n; the minimizer is the corner with
// coordinates -r * sign(g_i).
SeparationOracle linear_oracle(VecD gradient, double r) {
  return [gradient = std::move(gradient), r](const VecD& x) {
    Separation s;
    bool at_corner = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double corner = gradient[i] > 0 ? -r : r;
      at_corner = at_corner && std::abs(x[i] - corner) < 1e-9;
    }
    if (at_corner) {
      s.optimal = true;
    } else {
      s.normal = gradient;
    }
    return s;
  };
}

// All integral points that satisfy the float halfspaces (tolerance 1e-7) and
// lie exactly on every recorded hyperplane; grid search over [-lim, lim]^n.
std::vector<VecI> exact_feasible_points(const Polytope& body,
                                        const std::vector<VecR>& normals,
                                        const std::vector<Rat>& offsets,
                                        int lim) {
  const std::size_t n = body.ambient_dim();
  std::vector<VecI> out;
  std::vector<int> z(n, -lim);
  while (true) {
    VecD zd(n);
    VecR zr(n);
    for (std::size_t i = 0; i < n; ++i) {
      zd[i] = z[i];
      zr[i] = Rat(z[i]);
    }
    bool ok = body.contains(zd, 1e-7);
    for (std::size_t j = 0; ok && j < normals.size(); ++j)
      ok = dot(normals[j], zr) == offsets[j];
    if (ok) {
      VecI zi(n);
      for (std::size_t i = 0; i < n; ++i) zi[i] = z[i];
      out.push_back(std::move(zi));
    }
    std::size_t k = 0;
    while (k < n && z[k] == lim) z[k++] = -lim;
    if (k == n) break;
    ++z[k];
  }
  return out;
}

VecI ivec(std::initializer_list<long long> v) {
  VecI out;
  for (long long x : v) out.push_back(Int(x));
  return out;
}

}  // namespace

TEST_CASE("perturbed oracle: cut perturbation and YES conversion") {
  const std::size_t n = 3;
  const double r = 4;
  int base_hits = 0;
  SeparationOracle base = [&base_hits](const VecD& x) {
    ++base_hits;
    Separation s;
    if (x[0] > 100) {
      s.optimal = true;  // pretend this is a minimizer
    } else if (x[0] < -100) {
      s.feasibility = true;  // pretend the query left the domain
      s.normal = {0.0, 0.0, 1.0};
    } else {
      s.normal = {1.0, 2.0, -3.0};
    }
    return s;
  };
  PerturbedOracle po(base, n, r, 42);

  const VecI& c = po.direction();
  REQUIRE(c.size() == n);
  const long long m = po.magnitude_bound();
  REQUIRE(m == (2 * 3 * 4 + 1) * (2 * 3 * 4 + 1));
  bool nonzero = false;
  for (const Int& ci : c) {
    REQUIRE(abs_int(ci) <= Int(m));
    nonzero = nonzero || ci != 0;
  }
  REQUIRE(nonzero);

  // Perturbation strength keeps the integral minimizer set stable whenever
  // the objective has unit-separated values on the grid.
  REQUIRE(po.delta() > 0.0);
  REQUIRE(po.delta() * 2.0 * static_cast<double>(m) * n * r < 0.5 + 1e-12);

  // A cut response gets tilted by delta * c, nothing else.
  Separation s = po(VecD{0.0, 0.0, 0.0});
  REQUIRE(base_hits == 1);
  REQUIRE(!s.optimal);
  const VecD g = {1.0, 2.0, -3.0};
  for (std::size_t i = 0; i < n; ++i)
    REQUIRE(s.normal[i] == Catch::Approx(g[i] + po.delta() * to_double(c[i]))
                               .margin(1e-15));

  // A YES from the base oracle becomes a tie-breaking cut along c.
  Separation y = po(VecD{101.0, 0.0, 0.0});
  REQUIRE(base_hits == 2);
  REQUIRE(!y.optimal);
  for (std::size_t i = 0; i < n; ++i)
    REQUIRE(y.normal[i] == Catch::Approx(to_double(c[i])).margin(0.0));
  REQUIRE(po.base_calls() == 2);

  // A feasibility cut is a domain separator, not a subgradient: it passes
  // through exactly as issued, with no tilt.
  Separation fs = po(VecD{-101.0, 0.0, 0.0});
  REQUIRE(base_hits == 3);
  REQUIRE(!fs.optimal);
  REQUIRE(fs.feasibility);
  REQUIRE(fs.normal == VecD{0.0, 0.0, 1.0});

  // The tilt direction is a deterministic function of the seed.
  PerturbedOracle po2(base, n, r, 42);
  REQUIRE(po2.direction() == c);
  PerturbedOracle po3(base, n, r, 43);
  REQUIRE(po3.direction() != c);
}

TEST_CASE("solver norm: quantized lift of the covariance") {
  // Full frame: the form is the covariance itself plus a tiny dyadic ridge.
  MatD cov(2, 2);
  cov(0, 0) = 4.0;
  cov(1, 1) = 1.0;
  MatD frame = MatD::identity(2);

  QuadraticNorm a24 = solver_norm(cov, frame, 24);
  VecR e0(2, Rat(0)), e1(2, Rat(0));
  e0[0] = 1;
  e1[1] = 1;
  REQUIRE(to_double(a24.norm_sq(e0)) == Catch::Approx(4.0).epsilon(1e-4));
  REQUIRE(to_double(a24.norm_sq(e1)) == Catch::Approx(1.0).epsilon(1e-4));

  QuadraticNorm a0 = solver_norm(cov, frame, 0);
  REQUIRE(to_double(a0.norm_sq(e0)) == Catch::Approx(4.0).epsilon(1e-9));

  // Partial frame: directions orthogonal to the frame get the complement
  // weight (the largest covariance diagonal), so the form stays PD over the
  // whole ambient space without attracting the search off the subspace.
  MatD sub(2, 1);
  sub(0, 0) = 0.0;
  sub(1, 0) = 1.0;
  MatD cov1(1, 1);
  cov1(0, 0) = 9.0;
  QuadraticNorm as = solver_norm(cov1, sub, 24);
  REQUIRE(to_double(as.norm_sq(e1)) == Catch::Approx(9.0).epsilon(1e-4));
  REQUIRE(to_double(as.norm_sq(e0)) == Catch::Approx(9.0).epsilon(1e-4));

  // Positive on a few non-axis vectors.
  VecR v(2);
  v[0] = Rat(3, 2);
  v[1] = Rat(-7, 3);
  REQUIRE(a24.norm_sq(v) > 0);
  REQUIRE(as.norm_sq(v) > 0);
}

TEST_CASE("endgame: exact affine intersection and integrality check") {
  // Orthogonal normals (1,1,0), (1,-1,0), (0,0,1) with offsets 3, 1, -5
  // intersect at (2, 1, -5).
  std::vector<VecR> vs;
  std::vector<Rat> os;
  auto rv = [](std::initializer_list<int> xs) {
    VecR v;
    for (int x : xs) v.push_back(Rat(x));
    return v;
  };
  vs.push_back(rv({1, 1, 0}));
  vs.push_back(rv({1, -1, 0}));
  vs.push_back(rv({0, 0, 1}));
  os = {Rat(3), Rat(1), Rat(-5)};
  VecR x = exact_affine_point(vs, os);
  REQUIRE(x == rv({2, 1, -5}));
  std::optional<VecI> zi = integral_candidate(x, 1e-6);
  REQUIRE(zi.has_value());
  REQUIRE(*zi == ivec({2, 1, -5}));

  // Half-integer intersection is rejected.
  std::vector<VecR> vs2{rv({1, 1}), rv({1, -1})};
  std::vector<Rat> os2{Rat(1), Rat(0)};
  VecR xh = exact_affine_point(vs2, os2);
  REQUIRE(xh[0] == Rat(1, 2));
  REQUIRE(!integral_candidate(xh, 1e-6).has_value());

  // Near-integral points within tolerance round cleanly.
  VecR near{Rat(1999999, 1000000), Rat(-3)};
  std::optional<VecI> zr = integral_candidate(near, 1e-5);
  REQUIRE(zr.has_value());
  REQUIRE(*zr == ivec({2, -3}));
}

TEST_CASE("one-dimensional absolute value is minimized exactly") {
  SeparationOracle oracle = [](const VecD& x) {
    Separation s;
    if (std::abs(x[0] - 3.0) < 1e-9) {
      s.optimal = true;
    } else {
      s.normal = {x[0] < 3.0 ? -1.0 : 1.0};
    }
    return s;
  };

  for (SvpBackend backend : {SvpBackend::kLll, SvpBackend::kExact}) {
    SolverConfig cfg;
    cfg.radius = 8;
    cfg.seed = 7;
    cfg.backend = backend;
    CuttingPlaneSolver solver(oracle, 1, cfg);
    SolveResult r = solver.solve();
    REQUIRE(r.status == SolveStatus::kVerified);
    REQUIRE(r.minimizer == ivec({3}));
    REQUIRE(r.reductions == 1);
    REQUIRE(r.oracle_calls <= 60);
  }

  SolverConfig raw;
  raw.radius = 8;
  raw.seed = 8;
  raw.perturb = false;
  CuttingPlaneSolver solver(oracle, 1, raw);
  SolveResult r = solver.solve();
  REQUIRE(r.status == SolveStatus::kVerified);
  REQUIRE(r.minimizer == ivec({3}));
}

TEST_CASE("two-dimensional quadratic: exact minimizer, trace, determinism") {
  SeparationOracle oracle = quadratic_oracle({2.0, -1.0});
  SolverConfig cfg;
  cfg.radius = 8;
  cfg.seed = 11;
  cfg.collect_trace = true;

  CuttingPlaneSolver solver(oracle, 2, cfg);
  SolveResult r = solver.solve();
  REQUIRE(r.status == SolveStatus::kVerified);
  REQUIRE(r.minimizer == ivec({2, -1}));
  REQUIRE(r.reductions == 2);
  REQUIRE(r.cuts >= 1);
  REQUIRE(r.oracle_calls <= 120);

  // Trace: reductions fire only below the threshold, cuts only at or above,
  // and the threshold tracks the current dimension.
  REQUIRE(!r.trace.empty());
  int cut_events = 0, reduce_events = 0;
  for (const SolverEvent& ev : r.trace) {
    REQUIRE(ev.threshold ==
            Catch::Approx(1.0 / (10.0 * static_cast<double>(ev.dim_before))));
    if (ev.kind == SolverEventKind::kReduce) {
      ++reduce_events;
      REQUIRE(ev.shortest_norm < ev.threshold);
      REQUIRE(ev.rounding_margin <= 0.45);
    } else {
      ++cut_events;
      REQUIRE(ev.shortest_norm >= ev.threshold);
    }
  }
  REQUIRE(cut_events == r.cuts);
  REQUIRE(reduce_events == r.reductions);

  // Re-running with the same configuration reproduces everything.
  CuttingPlaneSolver again(oracle, 2, cfg);
  SolveResult r2 = again.solve();
  REQUIRE(r2.minimizer == r.minimizer);
  REQUIRE(r2.oracle_calls == r.oracle_calls);
  REQUIRE(r2.trace.size() == r.trace.size());

  // The exact backend agrees on the answer.
  SolverConfig ex = cfg;
  ex.backend = SvpBackend::kExact;
  CuttingPlaneSolver exact(oracle, 2, ex);
  REQUIRE(exact.solve().minimizer == ivec({2, -1}));
}

TEST_CASE("three-dimensional linear objective finds the corner") {
  SeparationOracle oracle = linear_oracle({2.0, 3.0, -1.0}, 2.0);
  SolverConfig cfg;
  cfg.radius = 2;
  cfg.seed = 5;
  CuttingPlaneSolver solver(oracle, 3, cfg);
  SolveResult r = solver.solve();
  REQUIRE(r.status == SolveStatus::kVerified);
  REQUIRE(r.minimizer == ivec({-2, -2, 2}));
  REQUIRE(r.reductions == 3);
}

TEST_CASE("reductions preserve the integral point set exactly") {
  SeparationOracle oracle = quadratic_oracle({1.0, 0.0, -1.0});
  SolverConfig cfg;
  cfg.radius = 2;
  cfg.seed = 23;
  CuttingPlaneSolver solver(oracle, 3, cfg);

  int reduces_checked = 0;
  while (!solver.finished()) {
    Polytope before_body = solver.body();
    std::vector<VecR> before_normals = solver.hyperplane_normals();
    std::vector<Rat> before_offsets = solver.hyperplane_offsets();
    std::optional<SolverEvent> ev = solver.advance();
    if (!ev || ev->kind != SolverEventKind::kReduce) continue;
    ++reduces_checked;
    std::vector<VecI> before =
        exact_feasible_points(before_body, before_normals, before_offsets, 3);
    std::vector<VecI> after = exact_feasible_points(
        solver.body(), solver.hyperplane_normals(), solver.hyperplane_offsets(),
        3);
    REQUIRE(before == after);
  }
  REQUIRE(reduces_checked == 3);
  REQUIRE(solver.result().minimizer == ivec({1, 0, -1}));
}

TEST_CASE("oracle budget is enforced") {
  SeparationOracle oracle = quadratic_oracle({2.0, -1.0});
  SolverConfig cfg;
  cfg.radius = 8;
  cfg.seed = 3;
  cfg.max_oracle_calls = 2;
  CuttingPlaneSolver solver(oracle, 2, cfg);
  SolveResult r = solver.solve();
  REQUIRE(r.status == SolveStatus::kOracleLimit);
  REQUIRE(r.oracle_calls == 2);
  REQUIRE(r.minimizer.empty());
}

TEST_CASE("threshold can be pinned to the ambient dimension") {
  SeparationOracle oracle = quadratic_oracle({0.0, 1.0});
  SolverConfig cfg;
  cfg.radius = 4;
  cfg.seed = 17;
  cfg.collect_trace = true;
  cfg.threshold_uses_ambient_dim = true;
  CuttingPlaneSolver solver(oracle, 2, cfg);
  SolveResult r = solver.solve();
  REQUIRE(r.status == SolveStatus::kVerified);
  REQUIRE(r.minimizer == ivec({0, 1}));
  for (const SolverEvent& ev : r.trace)
    REQUIRE(ev.threshold == Catch::Approx(1.0 / 20.0));
}
