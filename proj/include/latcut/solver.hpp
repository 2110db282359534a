// Copyright 2026 The latcut Authors
// SPDX-License-Identifier: MIT
//
// Cutting-plane minimization of a convex function over the integer points of
// a box, given only a separation oracle. The solver alternates two moves:
//
//  * Cut: query the oracle at the (estimated) centroid of the current body K
//    and intersect K with the returned halfspace.
//  * Reduce: when some vector of the projected integer lattice is short in
//    the covariance norm of K, every remaining integral point lies on a
//    single hyperplane; K and the lattice are restricted to it exactly, and
//    the ambient dimension of the search drops by one.
//
// Reductions are bookkept in exact rational arithmetic (the hyperplane
// normals are pairwise orthogonal by construction), so after n reductions
// the remaining affine subspace is a single exactly-known point, which is
// the answer. Floating point is confined to the sampling estimates and the
// lattice norm, where it only affects efficiency, not correctness of the
// retained point set — except through the one rounding step per reduction,
// which is monitored and reported.

#ifndef LATCUT_SOLVER_HPP_
#define LATCUT_SOLVER_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "latcut/lattice.hpp"
#include "latcut/rng.hpp"
#include "latcut/sampler.hpp"

namespace latcut {

// One oracle answer: either "this point is a minimizer" or a halfspace
// {y : normal . y <= normal . x} that contains every minimizer.
struct Separation {
  bool optimal = false;
  // Marks a cut that separates the query from the oracle's feasible domain
  // instead of bounding the objective. Such cuts are kept verbatim by the
  // tie-breaking perturbation: tilting a domain separator could rotate it
  // into the domain and slice off the very minimizer it must preserve.
  bool feasibility = false;
  VecD normal;
};

using SeparationOracle = std::function<Separation(const VecD&)>;

// Tie-breaking wrapper around a separation oracle. A random integral
// direction c is drawn once; every cut is tilted by delta * c and a YES
// answer is converted into the cut {y : c . y <= c . x}. Both are valid
// subgradient cuts for the perturbed objective f + delta' c . y (any
// delta' in (0, delta]), whose integral minimizers form a subset of the
// original ones whenever f has unit-separated values on the grid — the
// tilt magnitude is chosen so that delta * (range of c . y over the box)
// stays below 1/2. With the minimizer (generically) unique, the solver
// terminates by dimension collapse instead of stalling on flat faces.
class PerturbedOracle {
 public:
  PerturbedOracle(SeparationOracle base, std::size_t n, double radius,
                  std::uint64_t seed)
      : base_(std::move(base)) {
    const long long r =
        std::max<long long>(1, static_cast<long long>(std::ceil(radius)));
    bound_ = 2 * static_cast<long long>(n) * r + 1;
    bound_ *= bound_;
    delta_ = 0.5 / (2.0 * static_cast<double>(bound_) *
                    static_cast<double>(n) * static_cast<double>(r + 1));
    Rng rng(mix_seed(seed ^ 0x7065727475726bull));
    direction_.assign(n, Int(0));
    direction_d_.assign(n, 0.0);
    bool nonzero = false;
    while (!nonzero) {
      for (std::size_t i = 0; i < n; ++i) {
        const long long v = rng.uniform_int(-bound_, bound_);
        direction_[i] = Int(v);
        direction_d_[i] = static_cast<double>(v);
        nonzero = nonzero || v != 0;
      }
    }
  }

  Separation operator()(const VecD& x) {
    ++calls_;
    Separation s = base_(x);
    if (s.feasibility) return s;
    Separation out;
    if (s.optimal) {
      out.normal = direction_d_;
    } else {
      out.normal.resize(direction_d_.size());
      for (std::size_t i = 0; i < out.normal.size(); ++i)
        out.normal[i] = s.normal[i] + delta_ * direction_d_[i];
    }
    return out;
  }

  const VecI& direction() const { return direction_; }
  double delta() const { return delta_; }
  long long magnitude_bound() const { return bound_; }
  int base_calls() const { return calls_; }

 private:
  SeparationOracle base_;
  VecI direction_;
  VecD direction_d_;
  long long bound_ = 0;
  double delta_ = 0;
  int calls_ = 0;
};

// Lifts the sampled covariance (given in frame coordinates) to an exact
// rational quadratic form on the ambient space: U C U^T on the frame,
// max-diagonal weight on the orthogonal complement (the lattice lives in the
// frame span, so the complement weight only needs to keep the form PD).
// Entries are rounded to `bits` significant bits and a diagonal ridge of n
// quantization steps is added; the ridge dominates both the rounding error
// and any slightly negative eigenvalue of the empirical covariance, so the
// result is always positive definite. Small dyadic entries keep the exact
// lattice arithmetic downstream fast. bits == 0 requests a full-precision
// lift (with a 2^-40-scale ridge only).
inline QuadraticNorm solver_norm(const MatD& cov_local, const MatD& frame,
                                 int bits) {
  const std::size_t n = frame.rows, d = frame.cols;
  if (cov_local.rows != d || cov_local.cols != d || d == 0)
    throw std::invalid_argument("solver_norm: dimension mismatch");
  double max_diag = 1e-12;
  for (std::size_t i = 0; i < d; ++i)
    max_diag = std::max(max_diag, cov_local(i, i));

  MatD uc(n, d);  // U * C
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      double s = 0;
      for (std::size_t l = 0; l < d; ++l) s += frame(i, l) * cov_local(l, k);
      uc(i, k) = s;
    }
  MatD a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double ucu = 0, uut = 0;
      for (std::size_t k = 0; k < d; ++k) {
        ucu += uc(i, k) * frame(j, k);
        uut += frame(i, k) * frame(j, k);
      }
      const double v = ucu + max_diag * ((i == j ? 1.0 : 0.0) - uut);
      a(i, j) = a(j, i) = v;
    }

  const int ebits = bits > 0 ? bits : 40;
  int e = 0;
  std::frexp(max_diag, &e);
  const double step = std::ldexp(1.0, e - ebits);
  const Rat rat_step = rat_from_double(step);
  MatR out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Rat q = bits > 0 ? Rat(Int(static_cast<long long>(
                             std::floor(a(i, j) / step + 0.5)))) *
                             rat_step
                       : rat_from_double(a(i, j));
      out(i, j) = out(j, i) = q;
    }
  const Rat ridge = Rat(Int(static_cast<long long>(n))) * rat_step;
  for (std::size_t i = 0; i < n; ++i) out(i, i) += ridge;
  return QuadraticNorm(std::move(out));
}

// Intersection point of n pairwise-orthogonal hyperplanes {v_j . y = o_j};
// exact, and exactly on every hyperplane.
inline VecR exact_affine_point(const std::vector<VecR>& normals,
                               const std::vector<Rat>& offsets) {
  if (normals.empty() || normals.size() != offsets.size())
    throw std::invalid_argument("exact_affine_point: bad constraint lists");
  VecR x(normals[0].size(), Rat(0));
  for (std::size_t j = 0; j < normals.size(); ++j) {
    const Rat nsq = dot(normals[j], normals[j]);
    if (nsq == 0)
      throw std::invalid_argument("exact_affine_point: zero normal");
    axpy(x, Rat(offsets[j] / nsq), normals[j]);
  }
  return x;
}

// Rounds an exact point to the integer grid if every coordinate is within
// tol of an integer; nullopt otherwise.
inline std::optional<VecI> integral_candidate(const VecR& x, double tol) {
  VecI out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Int r = round_half_up(x[i]);
    if (to_double(abs_rat(x[i] - Rat(r))) > tol) return std::nullopt;
    out[i] = r;
  }
  return out;
}

enum class SolveStatus {
  kVerified,        // oracle confirmed the returned point
  kUnverified,      // point found, oracle did not confirm it
  kNoIntegralPoint, // the exact endgame point is not on the integer grid
  kOracleLimit,     // stopped by the oracle-call budget
};

enum class SolverEventKind { kCut, kReduce };

struct SolverEvent {
  SolverEventKind kind = SolverEventKind::kCut;
  std::size_t dim_before = 0;
  double shortest_norm = 0;    // covariance norm of the chosen lattice vector
  double threshold = 0;        // reduction trigger compared against it
  double rounding_margin = 0;  // reductions: distance of z . x_K to the grid
};

struct SolverConfig {
  double radius = 8;             // minimizer promised in [-radius, radius]^n
  std::uint64_t seed = 1;
  SvpBackend backend = SvpBackend::kLll;
  bool perturb = true;
  int max_oracle_calls = 100000;
  int norm_bits = 24;            // quantization of the lifted covariance norm
  bool threshold_uses_ambient_dim = false;  // 1/(10 n) instead of 1/(10 d)
  std::size_t svp_rank_limit = 12;          // cap for the exact backend
  SampleConfig sample;
  double epsilon = 0.01;         // recorded into the moment estimates
  bool collect_trace = false;
};

struct SolveResult {
  VecI minimizer;      // empty unless a point was produced
  VecD minimizer_d;
  SolveStatus status = SolveStatus::kUnverified;
  int oracle_calls = 0;
  int cuts = 0;
  int reductions = 0;
  int rounding_alarms = 0;  // reductions whose grid rounding was > 0.45 off
  int thickenings = 0;      // degenerate-body recoveries (offsets relaxed)
  std::vector<SolverEvent> trace;
};

class CuttingPlaneSolver {
 public:
  CuttingPlaneSolver(SeparationOracle oracle, std::size_t n, SolverConfig cfg)
      : cfg_(cfg),
        n_(n),
        base_(std::move(oracle)),
        // The box must have integral vertices: for objectives with flat
        // directions the cuts close in on the continuous minimizer over the
        // initial body, and only a lattice-aligned boundary makes that point
        // integral.
        body_(Polytope::box(n, cfg.radius)),
        lattice_(LatticeBasis::integer_lattice(n)) {
    if (n == 0) throw std::invalid_argument("solver: dimension must be positive");
    if (cfg.radius < 0.5)
      throw std::invalid_argument("solver: radius must be at least 1/2");
    if (cfg_.perturb)
      perturbed_.emplace(base_, n, cfg_.radius,
                         derive_seed(cfg_.seed, 0x706572, 0, 0));
  }

  bool finished() const { return finished_; }
  const Polytope& body() const { return body_; }
  const LatticeBasis& lattice() const { return lattice_; }
  const std::vector<VecR>& hyperplane_normals() const { return cut_normals_; }
  const std::vector<Rat>& hyperplane_offsets() const { return cut_offsets_; }
  const SolveResult& result() const { return result_; }

  // Performs one algorithm step: a cut or a reduction, whichever the lattice
  // test selects. Returns the event, or nullopt when the run finishes
  // (dimension zero reached, oracle budget exhausted, or an early YES with
  // perturbation disabled) — the outcome is then in result().
  std::optional<SolverEvent> advance() {
    if (finished_) return std::nullopt;
    const std::size_t d = body_.dim();
    if (d == 0) {
      finalize_exact();
      return std::nullopt;
    }

    MomentEstimate moments = sample_moments();
    const VecD& center = moments.centroid;

    SolverEvent ev;
    ev.dim_before = d;
    QuadraticNorm norm =
        solver_norm(moments.covariance, body_.frame.directions, cfg_.norm_bits);
    ShortestVectorResult sv = approx_shortest_vector(
        lattice_, norm, cfg_.backend, cfg_.svp_rank_limit);
    ev.shortest_norm = std::sqrt(to_double(sv.norm_sq));
    ev.threshold =
        1.0 / (10.0 * static_cast<double>(
                          cfg_.threshold_uses_ambient_dim ? n_ : d));

    if (ev.shortest_norm < ev.threshold) {
      ev.kind = SolverEventKind::kReduce;
      ev.rounding_margin = reduce_dimension(sv, center);
      ++result_.reductions;
      precond_valid_ = false;
      // Restart the interior search from the old centroid projected onto
      // the restricted subspace: it lands next to the surviving body even
      // when the slice is a sliver.
      warm_ = body_.frame.to_local(center);
    } else {
      if (result_.oracle_calls >= cfg_.max_oracle_calls) {
        result_.status = SolveStatus::kOracleLimit;
        finished_ = true;
        return std::nullopt;
      }
      ev.kind = SolverEventKind::kCut;
      ++result_.oracle_calls;
      Separation s = perturbed_ ? (*perturbed_)(center) : base_(center);
      if (s.optimal) {
        finalize_rounded(center);
        return std::nullopt;
      }
      body_.add_halfspace(s.normal, dot(s.normal, center));
      ++result_.cuts;
      if (result_.cuts % 16 == 0) prune_constraints(moments, center);
      precond_ = moments.covariance;
      precond_valid_ = true;
      warm_ = body_.frame.to_local(center);
    }
    if (cfg_.collect_trace) result_.trace.push_back(ev);
    return ev;
  }

  SolveResult solve() {
    while (!finished_) advance();
    return result_;
  }

 private:
  // Drops accumulated cut halfspaces that are far outside the current body
  // (slack at the centroid beyond a generous reach bound derived from the
  // covariance). Dropping a constraint can only enlarge K, and the retained
  // point the algorithm converges to — the perturbed integral minimizer — is
  // never removed by enlarging, so pruning affects speed, not correctness.
  // The 2n initial box rows are never dropped: they carry the grid promise.
  // Moment estimation with a degeneracy fallback. A reduction hyperplane
  // can be tangent to the body at the one remaining integral point, leaving
  // a restricted body with (numerically) empty interior that the sampler
  // rejects. Relaxing every constraint offset by a tiny pad restores full
  // dimension without losing anything: the padded body is a superset, and
  // the pad stays far below the unit lattice spacing, so no distant
  // integral point is re-admitted. The thin padded body then collapses
  // quickly through further reductions.
  MomentEstimate sample_moments() {
    const std::size_t d = body_.frame.dim();
    const MatD* precond =
        (precond_valid_ && precond_.rows == d) ? &precond_ : nullptr;
    double pad = 1e-7;
    for (int attempt = 0;; ++attempt) {
      try {
        return estimate_moments(body_, cfg_.epsilon,
                                derive_seed(cfg_.seed, 1, ++round_), warm_,
                                cfg_.sample, precond);
      } catch (const SamplerError&) {
        if (attempt >= 4) throw;
        ++result_.thickenings;
        for (double& offset : body_.offsets) offset += pad;
        warm_.clear();
        precond = nullptr;
        pad *= 8;
      }
    }
  }

  void prune_constraints(const MomentEstimate& moments, const VecD& center) {
    const std::size_t d = body_.dim();
    double tr = 0;
    for (std::size_t i = 0; i < d; ++i) tr += moments.covariance(i, i);
    const double reach =
        3.0 * static_cast<double>(d + 2) * std::sqrt(std::max(tr, 0.0));
    std::vector<std::size_t> drop;
    for (std::size_t i = 2 * n_; i < body_.num_constraints(); ++i) {
      double val = 0;
      for (std::size_t j = 0; j < n_; ++j)
        val += body_.normals(i, j) * center[j];
      if (body_.offsets[i] - val > reach) drop.push_back(i);
    }
    body_.remove_constraints(drop);
  }

  // Restricts the search to the hyperplane {v . y = o} that carries every
  // integral point still inside the body. The offset combines the exact
  // constant of v - z over the current subspace with the rounded integer
  // value of z . y; the only inexact ingredient is the centroid estimate,
  // whose effect is watched through the rounding margin. Returns the margin.
  double reduce_dimension(const ShortestVectorResult& sv, const VecD& center) {
    double zdot = 0;
    for (std::size_t i = 0; i < n_; ++i)
      zdot += to_double(sv.preimage[i]) * center[i];
    const double rounded = std::floor(zdot + 0.5);
    const double margin = std::abs(zdot - rounded);
    if (margin > 0.45) ++result_.rounding_alarms;

    VecR w(n_);
    for (std::size_t i = 0; i < n_; ++i)
      w[i] = sv.vector[i] - Rat(sv.preimage[i]);
    Rat offset{Int(static_cast<long long>(rounded))};
    for (std::size_t j = 0; j < cut_normals_.size(); ++j)
      offset += dot(w, cut_normals_[j]) / normal_sq_[j] * cut_offsets_[j];

    cut_normals_.push_back(sv.vector);
    cut_offsets_.push_back(offset);
    normal_sq_.push_back(dot(sv.vector, sv.vector));

    body_.restrict_frame(to_double_vec(sv.vector), to_double(offset));
    lattice_ = project_out(lattice_, sv.vector);
    return margin;
  }

  // Dimension zero: the hyperplane system pins a unique exact point.
  void finalize_exact() {
    finished_ = true;
    VecR x = exact_affine_point(cut_normals_, cut_offsets_);
    result_.minimizer_d = to_double_vec(x);
    std::optional<VecI> zi = integral_candidate(x, 1e-6);
    if (!zi.has_value()) {
      result_.status = SolveStatus::kNoIntegralPoint;
      return;
    }
    verify(*zi);
  }

  // Early YES with perturbation off: round the query point to the grid.
  void finalize_rounded(const VecD& x) {
    finished_ = true;
    VecI zi(n_);
    for (std::size_t i = 0; i < n_; ++i)
      zi[i] = Int(static_cast<long long>(std::floor(x[i] + 0.5)));
    verify(zi);
  }

  // Final confirmation query against the unperturbed oracle.
  void verify(const VecI& zi) {
    result_.minimizer = zi;
    result_.minimizer_d = to_double_vec(zi);
    ++result_.oracle_calls;
    result_.status = base_(result_.minimizer_d).optimal
                         ? SolveStatus::kVerified
                         : SolveStatus::kUnverified;
  }

  SolverConfig cfg_;
  std::size_t n_;
  SeparationOracle base_;
  std::optional<PerturbedOracle> perturbed_;
  Polytope body_;
  LatticeBasis lattice_;
  std::vector<VecR> cut_normals_;  // pairwise orthogonal, exact
  std::vector<Rat> cut_offsets_;
  std::vector<Rat> normal_sq_;
  VecD warm_;       // previous centroid in frame coordinates
  MatD precond_;    // previous covariance (frame coordinates)
  bool precond_valid_ = false;
  std::uint64_t round_ = 0;
  bool finished_ = false;
  SolveResult result_;
};

}  // namespace latcut

#endif  // LATCUT_SOLVER_HPP_
