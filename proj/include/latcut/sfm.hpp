// Copyright 2026 The latcut Authors
// SPDX-License-Identifier: MIT
//
// Submodular function minimization on top of the cutting-plane solver.
//
// A set function on {0, ..., n-1} is minimized by relaxing it to its convex
// sorted-prefix extension on the unit cube and handing the solver a
// separation oracle for that relaxation over the box [-1, 1]^n:
//
//   * outside the unit cube the oracle answers with an axis facet cut and
//     never touches the set function;
//   * inside, one greedy pass over the coordinates sorted in descending
//     order yields both the function value and an integral subgradient at
//     the cost of exactly n set evaluations;
//   * every greedy pass doubles as a certificate: the sum of its negative
//     marginals lower-bounds the minimum, and any visited prefix whose
//     value meets the best bound is provably optimal.
//
// Instances are integer-valued and normalized so the empty set maps to 0,
// which separates distinct function values by at least 1 — the gap the
// solver's tie-breaking perturbation needs to stay below.

#ifndef LATCUT_SFM_HPP_
#define LATCUT_SFM_HPP_

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "latcut/solver.hpp"

namespace latcut {

struct SfmError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integer-valued submodular set function, stored as one of three closed
// families. Values are normalized by subtracting the empty-set value, so
// evaluate(0) == 0 for every instance. Evaluations through evaluate() are
// counted (the oracle-complexity measure); evaluate_raw() is the free
// back door for tests and exhaustive search.
class SubmodularFunction {
 public:
  enum class Kind { kDirectedCut, kConcaveCardinality, kCoverage };

  // Cut function of a directed graph on vertices {0, ..., n+1}: ground
  // element i stands for vertex i+1, vertex 0 is pinned to the source side
  // and vertex n+1 to the sink side. f(S) is the total weight of edges
  // leaving the source side {0} + S.
  static SubmodularFunction directed_cut(
      int n, std::vector<std::array<long long, 3>> edges) {
    check(n >= 1 && n <= 24, "directed_cut: ground size must be in 1..24");
    for (const auto& e : edges) {
      check(e[0] >= 0 && e[0] <= n + 1 && e[1] >= 0 && e[1] <= n + 1,
            "directed_cut: edge endpoint out of range");
      check(e[0] != e[1], "directed_cut: self-loops are not allowed");
      check(e[2] >= 0, "directed_cut: edge weights must be non-negative");
    }
    SubmodularFunction f;
    f.kind_ = Kind::kDirectedCut;
    f.n_ = n;
    f.edges_ = std::move(edges);
    f.offset_ = f.evaluate_raw(0);
    return f;
  }

  // f(S) = phi(|S|) + sum of per-element weights over S, with phi concave
  // (non-increasing increments). phi has one entry per cardinality 0..n.
  static SubmodularFunction concave_cardinality(std::vector<long long> phi,
                                                std::vector<long long> modular) {
    const int n = static_cast<int>(modular.size());
    check(n >= 1 && n <= 24,
          "concave_cardinality: ground size must be in 1..24");
    check(phi.size() == modular.size() + 1,
          "concave_cardinality: profile needs one entry per cardinality");
    for (int k = 1; k + 1 <= n; ++k)
      check(phi[k + 1] - phi[k] <= phi[k] - phi[k - 1],
            "concave_cardinality: profile increments must be non-increasing");
    SubmodularFunction f;
    f.kind_ = Kind::kConcaveCardinality;
    f.n_ = n;
    f.phi_ = std::move(phi);
    f.modular_ = std::move(modular);
    f.offset_ = f.evaluate_raw(0);
    return f;
  }

  // f(S) = total weight of universe elements covered by the chosen sets
  // minus the sum of per-set penalties. Weights must be non-negative for
  // coverage to be submodular; penalties are an arbitrary modular part.
  static SubmodularFunction coverage(std::vector<std::vector<int>> sets,
                                     std::vector<long long> weights,
                                     std::vector<long long> penalties) {
    const int n = static_cast<int>(sets.size());
    const int universe = static_cast<int>(weights.size());
    check(n >= 1 && n <= 24, "coverage: ground size must be in 1..24");
    check(universe >= 1 && universe <= 63,
          "coverage: universe size must be in 1..63");
    check(penalties.size() == sets.size(),
          "coverage: one penalty per set required");
    for (long long w : weights)
      check(w >= 0, "coverage: weights must be non-negative");
    for (const auto& s : sets)
      for (int e : s)
        check(e >= 0 && e < universe, "coverage: set element out of range");
    SubmodularFunction f;
    f.kind_ = Kind::kCoverage;
    f.n_ = n;
    f.sets_ = std::move(sets);
    f.weights_ = std::move(weights);
    f.penalties_ = std::move(penalties);
    f.offset_ = f.evaluate_raw(0);
    return f;
  }

  static SubmodularFunction from_json(const nlohmann::json& j) {
    try {
      if (!j.is_object() || !j.contains("family"))
        throw SfmError("sfm: instance document needs a \"family\" field");
      const std::string family = j.at("family").get<std::string>();
      if (family == "directed_cut")
        return directed_cut(
            j.at("n").get<int>(),
            j.at("edges").get<std::vector<std::array<long long, 3>>>());
      if (family == "concave_cardinality")
        return concave_cardinality(
            j.at("phi").get<std::vector<long long>>(),
            j.at("modular").get<std::vector<long long>>());
      if (family == "coverage")
        return coverage(j.at("sets").get<std::vector<std::vector<int>>>(),
                        j.at("weights").get<std::vector<long long>>(),
                        j.at("penalties").get<std::vector<long long>>());
      throw SfmError("sfm: unknown instance family \"" + family + "\"");
    } catch (const nlohmann::json::exception& e) {
      throw SfmError(std::string("sfm: malformed instance document: ") +
                     e.what());
    }
  }

  nlohmann::json to_json() const {
    switch (kind_) {
      case Kind::kDirectedCut:
        return {{"family", "directed_cut"}, {"n", n_}, {"edges", edges_}};
      case Kind::kConcaveCardinality:
        return {{"family", "concave_cardinality"},
                {"phi", phi_},
                {"modular", modular_}};
      case Kind::kCoverage:
        return {{"family", "coverage"},
                {"sets", sets_},
                {"weights", weights_},
                {"penalties", penalties_}};
    }
    throw SfmError("sfm: corrupt instance kind");
  }

  Kind kind() const { return kind_; }
  int ground_size() const { return n_; }

  long long evaluate(std::uint64_t mask) const {
    ++calls_;
    return evaluate_raw(mask);
  }

  long long evaluate_raw(std::uint64_t mask) const {
    if ((mask >> n_) != 0)
      throw SfmError("sfm: set mask exceeds the ground set");
    switch (kind_) {
      case Kind::kDirectedCut: {
        const auto source_side = [&](long long v) {
          if (v == 0) return true;
          if (v == n_ + 1) return false;
          return ((mask >> (v - 1)) & 1) != 0;
        };
        long long total = 0;
        for (const auto& e : edges_)
          if (source_side(e[0]) && !source_side(e[1])) total += e[2];
        return total - offset_;
      }
      case Kind::kConcaveCardinality: {
        long long total = phi_[static_cast<std::size_t>(std::popcount(mask))];
        for (int i = 0; i < n_; ++i)
          if ((mask >> i) & 1) total += modular_[i];
        return total - offset_;
      }
      case Kind::kCoverage: {
        std::uint64_t covered = 0;
        long long total = 0;
        for (int i = 0; i < n_; ++i)
          if ((mask >> i) & 1) {
            for (int e : sets_[i]) covered |= std::uint64_t{1} << e;
            total -= penalties_[i];
          }
        for (std::size_t e = 0; e < weights_.size(); ++e)
          if ((covered >> e) & 1) total += weights_[e];
        return total - offset_;
      }
    }
    throw SfmError("sfm: corrupt instance kind");
  }

  long long evaluation_calls() const { return calls_; }

 private:
  SubmodularFunction() = default;

  static void check(bool ok, const char* message) {
    if (!ok) throw SfmError(std::string("sfm: ") + message);
  }

  Kind kind_ = Kind::kDirectedCut;
  int n_ = 0;
  long long offset_ = 0;  // raw empty-set value, subtracted from every answer
  std::vector<std::array<long long, 3>> edges_;     // directed cut
  std::vector<long long> phi_, modular_;            // concave cardinality
  std::vector<std::vector<int>> sets_;              // coverage
  std::vector<long long> weights_, penalties_;      // coverage
  mutable long long calls_ = 0;
};

// Ground elements of a set mask in ascending order.
inline std::vector<int> elements_of(std::uint64_t mask) {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i)
    if ((mask >> i) & 1) out.push_back(i);
  return out;
}

// Total order used to break value ties between candidate sets: fewer
// elements first, then lexicographic on the sorted element lists (the set
// owning the smallest element of the symmetric difference comes first).
inline bool canonical_less(std::uint64_t a, std::uint64_t b) {
  const int pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  const std::uint64_t d = a ^ b;
  return (a & (d & ~(d - 1))) != 0;
}

namespace detail {

// One greedy pass at x: visit coordinates in descending x-order (ties by
// ascending index) and difference consecutive prefix values. Costs exactly
// ground_size() counted evaluations. The marginals form a subgradient of
// the sorted-prefix extension at x, their negative part sums to a lower
// bound on the minimum, and the best prefix (the empty set included) is
// the pass's candidate minimizer.
struct GreedyPass {
  VecD subgradient;
  std::vector<int> order;
  long long bound = 0;
  std::uint64_t best_mask = 0;
  long long best_value = 0;
};

inline GreedyPass greedy_pass(const SubmodularFunction& f, const VecD& x) {
  const int n = f.ground_size();
  if (static_cast<int>(x.size()) != n)
    throw SfmError("sfm: query dimension does not match the ground set");
  GreedyPass g;
  g.order.resize(n);
  std::iota(g.order.begin(), g.order.end(), 0);
  std::stable_sort(g.order.begin(), g.order.end(),
                   [&x](int i, int j) { return x[i] > x[j]; });
  g.subgradient.assign(n, 0.0);
  std::uint64_t mask = 0;
  long long prev = 0;
  for (int k = 0; k < n; ++k) {
    mask |= std::uint64_t{1} << g.order[k];
    const long long value = f.evaluate(mask);
    const long long marginal = value - prev;
    g.subgradient[g.order[k]] = static_cast<double>(marginal);
    if (marginal < 0) g.bound += marginal;
    if (value < g.best_value) {
      g.best_value = value;
      g.best_mask = mask;
    }
    prev = value;
  }
  return g;
}

}  // namespace detail

// Sorted-prefix convex extension of f on the unit cube: the unique
// piecewise-linear interpolation of the set values that is linear on each
// descending-order simplex. Minimizing it over [0, 1]^n is equivalent to
// minimizing f.
struct LovaszEval {
  double value = 0;
  VecD subgradient;
  std::uint64_t best_prefix_mask = 0;
  long long best_prefix_value = 0;
};

inline LovaszEval lovasz_extension(const SubmodularFunction& f, const VecD& x) {
  const detail::GreedyPass g = detail::greedy_pass(f, x);
  LovaszEval ev;
  ev.subgradient = g.subgradient;
  ev.best_prefix_mask = g.best_mask;
  ev.best_prefix_value = g.best_value;
  for (std::size_t i = 0; i < x.size(); ++i)
    ev.value += g.subgradient[i] * x[i];
  return ev;
}

// Separation oracle over the solver box [-1, 1]^n. Queries outside the
// unit cube get a facet cut on the most violated coordinate (lowest index
// on ties) at zero evaluation cost; interior queries get the greedy
// subgradient. The oracle accumulates the best certificate bound and the
// best visited prefix across all queries, and answers YES only for an
// integral query whose own value meets the bound.
class SfmOracle {
 public:
  explicit SfmOracle(const SubmodularFunction& f) : f_(&f) {}

  Separation operator()(const VecD& x) {
    ++calls_;
    const int n = f_->ground_size();
    int worst_axis = -1;
    double worst = kCubeTol, direction = 0;
    for (int j = 0; j < n; ++j) {
      if (-x[j] > worst) {
        worst = -x[j];
        worst_axis = j;
        direction = -1.0;
      }
      if (x[j] - 1.0 > worst) {
        worst = x[j] - 1.0;
        worst_axis = j;
        direction = 1.0;
      }
    }
    if (worst_axis >= 0) {
      ++facet_cuts_;
      Separation s;
      s.feasibility = true;  // domain separator: must never be tilted
      s.normal.assign(n, 0.0);
      s.normal[worst_axis] = direction;
      return s;
    }

    const detail::GreedyPass g = detail::greedy_pass(*f_, x);
    if (!has_bound_ || g.bound > bound_) {
      bound_ = g.bound;
      has_bound_ = true;
    }
    if (g.best_value < best_value_) {
      best_value_ = g.best_value;
      best_mask_ = g.best_mask;
    }

    std::uint64_t mask = 0;
    bool integral = true;
    for (int j = 0; j < n && integral; ++j) {
      if (std::abs(x[j] - 1.0) <= kCubeTol)
        mask |= std::uint64_t{1} << j;
      else if (std::abs(x[j]) > kCubeTol)
        integral = false;
    }
    if (integral) {
      // The prefix after popcount(mask) greedy steps is exactly the
      // support of x, so its value is already known.
      const long long value = f_->evaluate_raw(mask);
      if (value == bound_) {
        Separation s;
        s.optimal = true;
        return s;
      }
    }
    Separation s;
    s.normal = g.subgradient;
    return s;
  }

  int calls() const { return calls_; }
  int facet_cuts() const { return facet_cuts_; }
  bool has_bound() const { return has_bound_; }
  long long bound() const {
    if (!has_bound_) throw SfmError("sfm: no certificate bound yet");
    return bound_;
  }
  long long best_value() const { return best_value_; }
  std::uint64_t best_mask() const { return best_mask_; }
  bool certified() const { return has_bound_ && best_value_ == bound_; }

 private:
  static constexpr double kCubeTol = 1e-9;

  const SubmodularFunction* f_;
  int calls_ = 0;
  int facet_cuts_ = 0;
  bool has_bound_ = false;
  long long bound_ = 0;
  long long best_value_ = 0;   // empty set is always a candidate
  std::uint64_t best_mask_ = 0;
};

struct BruteForceResult {
  std::vector<int> minimizer;
  long long value = 0;
};

// Exhaustive reference minimizer over all subsets, using uncounted
// evaluations. Ties resolve by canonical_less.
inline BruteForceResult brute_force_min(const SubmodularFunction& f) {
  const int n = f.ground_size();
  std::uint64_t best = 0;
  long long best_value = f.evaluate_raw(0);
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t m = 1; m <= full; ++m) {
    const long long v = f.evaluate_raw(m);
    if (v < best_value || (v == best_value && canonical_less(m, best))) {
      best = m;
      best_value = v;
    }
  }
  return {elements_of(best), best_value};
}

struct SfmConfig {
  std::uint64_t seed = 1;
  SvpBackend backend = SvpBackend::kLll;
  bool perturb = true;
  int max_oracle_calls = 100000;
  double epsilon = 0.01;
  int norm_bits = 24;
  // Halt as soon as the certificate closes, instead of driving the solver
  // all the way to dimension collapse.
  bool stop_on_certificate = true;
  bool collect_trace = false;
  // Lighter sampling than the solver default: the relaxation is cheap to
  // cut and the certificate usually closes long before collapse.
  SampleConfig sample{1500, 150, 80, 8};
};

struct SfmResult {
  std::vector<int> minimizer;  // ascending ground elements
  long long value = 0;
  long long lower_bound = 0;   // best certificate bound (= value if certified)
  bool certified = false;
  bool stopped_early = false;  // certificate closed before the solver finished
  long long evaluation_calls = 0;
  int separation_calls = 0;
  int facet_cuts = 0;
  SolveStatus solver_status = SolveStatus::kUnverified;
  SolveResult solve;
};

// Minimize a submodular function by cutting-plane search on its convex
// relaxation over [-1, 1]^n. The returned set is the best candidate seen
// by any greedy pass, folded with the solver's own integral point; it is
// certified optimal when its value meets the best lower bound.
inline SfmResult minimize_submodular(const SubmodularFunction& f,
                                     const SfmConfig& cfg = {}) {
  const int n = f.ground_size();
  const long long calls_before = f.evaluation_calls();
  SfmOracle oracle(f);

  SolverConfig solver_cfg;
  solver_cfg.radius = 1.0;
  solver_cfg.seed = cfg.seed;
  solver_cfg.backend = cfg.backend;
  solver_cfg.perturb = cfg.perturb;
  solver_cfg.max_oracle_calls = cfg.max_oracle_calls;
  solver_cfg.epsilon = cfg.epsilon;
  solver_cfg.norm_bits = cfg.norm_bits;
  solver_cfg.collect_trace = cfg.collect_trace;
  solver_cfg.sample = cfg.sample;

  CuttingPlaneSolver solver([&oracle](const VecD& x) { return oracle(x); },
                            static_cast<std::size_t>(n), solver_cfg);
  SfmResult out;
  while (!solver.finished()) {
    solver.advance();
    if (cfg.stop_on_certificate && oracle.certified()) {
      out.stopped_early = !solver.finished();
      break;
    }
  }

  out.solve = solver.result();
  out.solver_status = out.solve.status;

  std::uint64_t best_mask = oracle.best_mask();
  long long best_value = oracle.best_value();
  if (!out.solve.minimizer.empty()) {
    std::uint64_t mask = 0;
    bool indicator = true;
    for (std::size_t i = 0; i < out.solve.minimizer.size() && indicator; ++i) {
      if (out.solve.minimizer[i] == 1)
        mask |= std::uint64_t{1} << i;
      else if (out.solve.minimizer[i] != 0)
        indicator = false;  // stray corner of the enclosing box; ignore
    }
    if (indicator) {
      const long long v = f.evaluate(mask);
      if (v < best_value || (v == best_value && canonical_less(mask, best_mask))) {
        best_value = v;
        best_mask = mask;
      }
    }
  }

  out.minimizer = elements_of(best_mask);
  out.value = best_value;
  if (oracle.has_bound()) {
    out.lower_bound = oracle.bound();
    out.certified = best_value == out.lower_bound;
  } else {
    out.lower_bound = best_value;  // nothing evaluated; the empty set stands
  }
  out.evaluation_calls = f.evaluation_calls() - calls_before;
  out.separation_calls = oracle.calls();
  out.facet_cuts = oracle.facet_cuts();
  return out;
}

// Seeded generators for the three families, used by tests, the sweep
// driver, and the CLI.
inline SubmodularFunction random_instance(SubmodularFunction::Kind kind, int n,
                                          std::uint64_t seed) {
  if (n < 1 || n > 24)
    throw SfmError("sfm: random instances support ground sizes 1..24");
  Rng rng(derive_seed(seed, 0x73666d69, static_cast<std::uint64_t>(n),
                      static_cast<std::uint64_t>(static_cast<int>(kind))));
  switch (kind) {
    case SubmodularFunction::Kind::kDirectedCut: {
      std::vector<std::array<long long, 3>> edges;
      const int count = 2 * n + 2;
      edges.reserve(static_cast<std::size_t>(count));
      for (int e = 0; e < count; ++e) {
        long long u = 0, v = 0;
        do {
          u = rng.uniform_int(0, n);      // source or internal tail
          v = rng.uniform_int(1, n + 1);  // internal head or sink
        } while (u == v);
        edges.push_back({u, v, rng.uniform_int(1, 9)});
      }
      return SubmodularFunction::directed_cut(n, std::move(edges));
    }
    case SubmodularFunction::Kind::kConcaveCardinality: {
      std::vector<long long> increments(static_cast<std::size_t>(n));
      for (auto& d : increments) d = rng.uniform_int(-3, 6);
      std::sort(increments.rbegin(), increments.rend());
      std::vector<long long> phi(static_cast<std::size_t>(n) + 1, 0);
      for (int k = 0; k < n; ++k) phi[k + 1] = phi[k] + increments[k];
      std::vector<long long> modular(static_cast<std::size_t>(n));
      for (auto& m : modular) m = rng.uniform_int(-4, 4);
      return SubmodularFunction::concave_cardinality(std::move(phi),
                                                     std::move(modular));
    }
    case SubmodularFunction::Kind::kCoverage: {
      const int universe = n + 2;
      std::vector<std::vector<int>> sets(static_cast<std::size_t>(n));
      for (auto& s : sets) {
        for (int e = 0; e < universe; ++e)
          if (rng.uniform01() < 1.0 / 3.0) s.push_back(e);
        if (s.empty())
          s.push_back(static_cast<int>(rng.uniform_int(0, universe - 1)));
      }
      std::vector<long long> weights(static_cast<std::size_t>(universe));
      std::vector<long long> penalties(static_cast<std::size_t>(n));
      for (auto& w : weights) w = rng.uniform_int(1, 8);
      for (auto& p : penalties) p = rng.uniform_int(0, 10);
      return SubmodularFunction::coverage(std::move(sets), std::move(weights),
                                          std::move(penalties));
    }
  }
  throw SfmError("sfm: unknown instance kind");
}

}  // namespace latcut

#endif  // LATCUT_SFM_HPP_
