// Copyright 2026 The latcut Authors
// SPDX-License-Identifier: MIT
//
// Convex-body machinery for the cutting-plane solver: a halfspace-intersection
// polytope that lives inside an affine subspace of the ambient space, an
// interior-point repair routine, and hit-and-run Monte-Carlo estimators for
// the centroid, covariance, and volume of the body.
//
// All randomized routines are deterministic functions of their seed.

#ifndef LATCUT_SAMPLER_HPP_
#define LATCUT_SAMPLER_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "latcut/rng.hpp"
#include "latcut/vecmat.hpp"

namespace latcut {

struct SamplerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The repair step could not find a strictly feasible starting point: the
// polytope is empty (or numerically indistinguishable from empty).
struct InfeasibleStartError : SamplerError {
  using SamplerError::SamplerError;
};

// The body is so thin along some direction that the random walk cannot move;
// callers should reduce dimension instead of sampling.
struct DegenerateBodyError : SamplerError {
  using SamplerError::SamplerError;
};

struct DimensionTooLargeError : SamplerError {
  using SamplerError::SamplerError;
};

// An affine subspace base + span(directions) of the ambient space, with the
// direction columns kept orthonormal so that local coordinates are isometric.
struct AffineSubspace {
  VecD base;        // point in ambient space
  MatD directions;  // ambient_dim x dim, orthonormal columns

  static AffineSubspace full(std::size_t n) {
    AffineSubspace s;
    s.base = VecD(n, 0.0);
    s.directions = MatD::identity(n);
    return s;
  }

  std::size_t ambient_dim() const { return base.size(); }
  std::size_t dim() const { return directions.cols; }

  VecD to_ambient(const VecD& local) const {
    return vec_add(base, mat_vec(directions, local));
  }
  VecD to_local(const VecD& ambient) const {
    return mat_tvec(directions, vec_sub(ambient, base));
  }
};

// Bounded convex body {x : normals x <= offsets} intersected with an affine
// frame. Normal rows are stored in ambient coordinates at unit length;
// `enclosing_radius` is an upper bound on the 2-norm of every point of the
// body (valid bounds survive adding halfspaces and restricting the frame, so
// the constructor's bound is simply carried along).
struct Polytope {
  MatD normals;  // m x ambient_dim, unit rows
  VecD offsets;  // m
  AffineSubspace frame;
  double enclosing_radius = 0;

  static Polytope box(std::size_t n, double radius) {
    Polytope p;
    p.frame = AffineSubspace::full(n);
    p.normals = MatD(0, n);
    p.enclosing_radius = radius * std::sqrt(static_cast<double>(n));
    VecD e(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = 1.0;
      p.add_halfspace(e, radius);
      e[i] = -1.0;
      p.add_halfspace(e, radius);
      e[i] = 0.0;
    }
    return p;
  }

  std::size_t num_constraints() const { return normals.rows; }
  std::size_t ambient_dim() const { return frame.ambient_dim(); }
  std::size_t dim() const { return frame.dim(); }

  // Adds {x : normal . x <= offset}, rescaling so the stored normal is unit.
  void add_halfspace(VecD normal, double offset) {
    if (normal.size() != ambient_dim())
      throw std::invalid_argument("add_halfspace: dimension mismatch");
    const double nn = norm2(normal);
    if (nn <= 1e-12)
      throw std::invalid_argument("add_halfspace: zero normal");
    for (auto& v : normal) v /= nn;
    normals.data.insert(normals.data.end(), normal.begin(), normal.end());
    ++normals.rows;
    offsets.push_back(offset / nn);
  }

  // Removes the given constraint rows (indices into the current ordering;
  // duplicates and out-of-range entries are ignored).
  void remove_constraints(const std::vector<std::size_t>& rows) {
    if (rows.empty()) return;
    std::vector<bool> drop(normals.rows, false);
    for (std::size_t r : rows)
      if (r < normals.rows) drop[r] = true;
    MatD kept(0, normals.cols);
    VecD kept_off;
    for (std::size_t i = 0; i < normals.rows; ++i) {
      if (drop[i]) continue;
      for (std::size_t j = 0; j < normals.cols; ++j)
        kept.data.push_back(normals(i, j));
      ++kept.rows;
      kept_off.push_back(offsets[i]);
    }
    normals = std::move(kept);
    offsets = std::move(kept_off);
  }

  bool contains(const VecD& x, double tol = 1e-9) const {
    for (std::size_t i = 0; i < normals.rows; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < normals.cols; ++j) s += normals(i, j) * x[j];
      if (s > offsets[i] + tol) return false;
    }
    return true;
  }

  // Intersects the frame with the hyperplane {x : normal . x = value}. The
  // halfspace list is untouched (its rows stay valid in ambient coordinates);
  // only the frame loses one dimension.
  void restrict_frame(const VecD& normal, double value) {
    const std::size_t d = dim();
    VecD alpha = mat_tvec(frame.directions, normal);
    const double na = norm2(alpha);
    if (na <= 1e-12)
      throw std::invalid_argument("restrict_frame: hyperplane parallel to frame");
    const double beta = value - dot(normal, frame.base);
    // Foot of the perpendicular from the frame origin onto the hyperplane.
    axpy(frame.base, beta / (na * na), mat_vec(frame.directions, alpha));

    // Orthonormal basis of the orthogonal complement of alpha inside the
    // local space, built by Gram-Schmidt over the coordinate axes.
    VecD ahat = scaled(alpha, 1.0 / na);
    std::vector<VecD> ortho{ahat};
    for (std::size_t j = 0; j < d && ortho.size() < d; ++j) {
      VecD v(d, 0.0);
      v[j] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        for (const VecD& u : ortho) axpy(v, -dot(u, v), u);
      const double nv = norm2(v);
      if (nv > 1e-8) ortho.push_back(scaled(v, 1.0 / nv));
    }
    if (ortho.size() != d)
      throw SamplerError("restrict_frame: failed to complete basis");
    MatD q(d, d - 1);
    for (std::size_t c = 1; c < d; ++c)
      for (std::size_t r = 0; r < d; ++r) q(r, c - 1) = ortho[c][r];
    frame.directions = mat_mul(frame.directions, q);
  }
};

struct SampleConfig {
  int min_samples = 2000;     // floor on the number of recorded points
  int per_dim = 200;          // recorded points per local dimension
  int burnin_per_dim = 100;   // discarded steps per dimension before recording
  int thin_per_dim = 10;      // steps between recorded points, per dimension
};

struct MomentEstimate {
  VecD centroid;    // ambient coordinates
  MatD covariance;  // local (frame) coordinates, dim x dim
  int sample_count = 0;
  double epsilon = 0;  // requested accuracy, recorded for diagnostics
};

struct VolumeEstimate {
  double volume = 0;   // dim-dimensional volume within the frame
  double rel_err = 0;  // achieved standard-error estimate
  long long proposals = 0;
  long long hits = 0;
};

namespace detail {

// The polytope's constraints expressed in frame coordinates. Rows whose
// local normal vanishes are constant over the frame: they are dropped when
// satisfied and flag the whole body infeasible otherwise.
struct LocalView {
  MatD a;  // m x d
  VecD b;  // m
  std::size_t d = 0;
  bool infeasible = false;

  std::size_t size() const { return a.rows; }
};

inline LocalView local_view(const Polytope& p) {
  LocalView lv;
  lv.d = p.dim();
  lv.a = MatD(0, lv.d);
  for (std::size_t i = 0; i < p.normals.rows; ++i) {
    VecD row(p.ambient_dim());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = p.normals(i, j);
    VecD alpha = mat_tvec(p.frame.directions, row);
    const double beta = p.offsets[i] - dot(row, p.frame.base);
    if (norm2(alpha) <= 1e-12) {
      if (beta < -1e-9) lv.infeasible = true;
      continue;
    }
    lv.a.data.insert(lv.a.data.end(), alpha.begin(), alpha.end());
    ++lv.a.rows;
    lv.b.push_back(beta);
  }
  return lv;
}

// Hit-and-run walker over a LocalView. Directions are either uniform on the
// sphere or N(0, C) for a caller-supplied covariance C (the chord is still
// sampled uniformly, so the uniform distribution on the body stays
// stationary; the direction law only affects mixing speed).
class HitAndRun {
 public:
  HitAndRun(const LocalView& lv, VecD start, Rng& rng, const MatD* precond)
      : lv_(lv), y_(std::move(start)), rng_(rng) {
    refresh_values();
    if (precond != nullptr && precond->rows == lv.d && lv.d > 0) {
      MatD c = *precond;
      double tr = 0;
      for (std::size_t i = 0; i < c.rows; ++i) tr += c(i, i);
      const double ridge = std::max(1e-12 * tr / c.rows, 1e-300);
      for (std::size_t i = 0; i < c.rows; ++i) c(i, i) += ridge;
      if (!cholesky(c, chol_)) {
        // Fall back to a diagonal rescaling if the estimate is not PD.
        chol_ = MatD(c.rows, c.rows);
        for (std::size_t i = 0; i < c.rows; ++i)
          chol_(i, i) = std::sqrt(std::max(c(i, i), ridge));
      }
      preconditioned_ = true;
    }
  }

  const VecD& position() const { return y_; }

  void step() {
    const std::size_t d = lv_.d;
    VecD u;
    if (preconditioned_) {
      VecD g(d);
      double nu = 0;
      do {
        for (auto& x : g) x = rng_.normal();
        u = mat_vec(chol_, g);
        nu = norm2(u);
      } while (nu < 1e-300);
    } else {
      u = rng_.unit_vector(d);
    }

    double tlo = -std::numeric_limits<double>::infinity();
    double thi = std::numeric_limits<double>::infinity();
    const double nu = norm2(u);
    denom_.assign(lv_.size(), 0.0);
    for (std::size_t i = 0; i < lv_.size(); ++i) {
      double denom = 0;
      for (std::size_t j = 0; j < d; ++j) denom += lv_.a(i, j) * u[j];
      denom_[i] = denom;
      const double slack = lv_.b[i] - val_[i];
      if (std::abs(denom) <= 1e-14 * (nu + 1.0)) continue;
      const double t = slack / denom;
      if (denom > 0) {
        thi = std::min(thi, t);
      } else {
        tlo = std::max(tlo, t);
      }
    }
    if (!std::isfinite(tlo) || !std::isfinite(thi))
      throw SamplerError("hit-and-run: unbounded chord");

    ++chords_;
    const double width = (thi - tlo) * nu;  // geometric chord length
    if (width < 1e-9) {
      ++tiny_;
    } else {
      const double t = rng_.uniform(tlo, thi);
      axpy(y_, t, u);
      for (std::size_t i = 0; i < lv_.size(); ++i) val_[i] += t * denom_[i];
      if (++since_refresh_ >= 1024) refresh_values();
    }
    if (chords_ >= 128 && 2 * tiny_ > chords_)
      throw DegenerateBodyError(
          "hit-and-run: body is degenerate (chords collapse)");
  }

 private:
  // Recomputes the cached constraint values a_i . y from scratch; the
  // incremental updates drift by at most an ulp per step, so a periodic
  // refresh keeps them honest over long walks.
  void refresh_values() {
    val_.assign(lv_.size(), 0.0);
    for (std::size_t i = 0; i < lv_.size(); ++i)
      for (std::size_t j = 0; j < lv_.d; ++j) val_[i] += lv_.a(i, j) * y_[j];
    since_refresh_ = 0;
  }

  const LocalView& lv_;
  VecD y_;
  Rng& rng_;
  MatD chol_;
  VecD val_;    // a_i . y, maintained incrementally
  VecD denom_;  // a_i . u for the current direction
  bool preconditioned_ = false;
  long long chords_ = 0, tiny_ = 0;
  long long since_refresh_ = 0;
};

}  // namespace detail

// Finds a strictly feasible point of the polytope in frame coordinates by
// cyclic projection onto the halfspaces, shrunk by a safety margin. The
// margin is halved until the shrunk body admits a point; if no margin works
// the polytope is declared infeasible.
inline VecD find_interior_point(const Polytope& p, VecD start_local = {}) {
  detail::LocalView lv = detail::local_view(p);
  if (lv.infeasible)
    throw InfeasibleStartError("polytope is infeasible within its frame");
  const std::size_t d = lv.d;
  if (start_local.empty()) start_local = VecD(d, 0.0);
  if (start_local.size() != d)
    throw std::invalid_argument("find_interior_point: start has wrong dimension");

  std::vector<double> row_norm(lv.size());
  for (std::size_t i = 0; i < lv.size(); ++i) {
    double s = 0;
    for (std::size_t j = 0; j < d; ++j) s += lv.a(i, j) * lv.a(i, j);
    row_norm[i] = std::sqrt(s);
  }

  // Relaxation with a shrinking strictness margin. Each margin level
  // continues from the previous level's iterate: even when the level
  // failed, its iterate has already been pulled next to the feasible
  // region, which is what makes needle-shaped bodies reachable from a
  // distant start.
  VecD y = start_local;
  for (double margin = 1e-2; margin > 1e-15; margin *= 0.5) {
    for (int pass = 0; pass < 400; ++pass) {
      bool moved = false;
      for (std::size_t i = 0; i < lv.size(); ++i) {
        double val = 0;
        for (std::size_t j = 0; j < d; ++j) val += lv.a(i, j) * y[j];
        const double bound = lv.b[i] - margin * row_norm[i];
        if (val > bound) {
          const double f = (val - bound) / (row_norm[i] * row_norm[i]);
          for (std::size_t j = 0; j < d; ++j) y[j] -= f * lv.a(i, j);
          moved = true;
        }
      }
      if (!moved) return y;
    }
  }
  throw InfeasibleStartError("no strictly feasible point found");
}

// Draws `count` approximately uniform points from the body (ambient
// coordinates) by hit-and-run with burn-in and thinning.
inline std::vector<VecD> sample(const Polytope& p, int count,
                                std::uint64_t seed, VecD warm_local = {},
                                const SampleConfig& cfg = {}) {
  const std::size_t d = p.dim();
  std::vector<VecD> out;
  if (d == 0) {
    out.assign(static_cast<std::size_t>(std::max(count, 0)), p.frame.base);
    return out;
  }
  detail::LocalView lv = detail::local_view(p);
  if (lv.infeasible)
    throw InfeasibleStartError("polytope is infeasible within its frame");
  VecD start = find_interior_point(p, std::move(warm_local));
  Rng rng(seed);
  detail::HitAndRun walk(lv, std::move(start), rng, nullptr);
  const int burnin = cfg.burnin_per_dim * static_cast<int>(d);
  const int thin = std::max(1, cfg.thin_per_dim * static_cast<int>(d));
  for (int i = 0; i < burnin; ++i) walk.step();
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int s = 0; s < count; ++s) {
    for (int i = 0; i < thin; ++i) walk.step();
    out.push_back(p.frame.to_ambient(walk.position()));
  }
  return out;
}

// Estimates the centroid (ambient) and covariance (frame coordinates) of the
// uniform distribution on the body. `epsilon` is recorded in the result for
// diagnostics; the sampling budget itself comes from `cfg` (see the config
// defaults for the fixed floor and per-dimension schedule). When the caller
// has a covariance estimate from a previous round, passing it as
// `precond_cov` draws walk directions from N(0, C), which keeps the walk
// mixing quickly on elongated bodies.
inline MomentEstimate estimate_moments(const Polytope& p, double epsilon,
                                       std::uint64_t seed, VecD warm_local = {},
                                       const SampleConfig& cfg = {},
                                       const MatD* precond_cov = nullptr) {
  const std::size_t d = p.dim();
  MomentEstimate out;
  out.epsilon = epsilon;
  if (d == 0) {
    out.centroid = p.frame.base;
    out.covariance = MatD(0, 0);
    return out;
  }
  detail::LocalView lv = detail::local_view(p);
  if (lv.infeasible)
    throw InfeasibleStartError("polytope is infeasible within its frame");
  VecD start = find_interior_point(p, std::move(warm_local));

  const int count = std::max(cfg.min_samples, cfg.per_dim * static_cast<int>(d));
  const int burnin = cfg.burnin_per_dim * static_cast<int>(d);
  const int thin = std::max(1, cfg.thin_per_dim * static_cast<int>(d));

  Rng rng(seed);
  detail::HitAndRun walk(lv, std::move(start), rng, precond_cov);
  for (int i = 0; i < burnin; ++i) walk.step();

  VecD mean(d, 0.0);
  MatD second(d, d);
  for (int s = 0; s < count; ++s) {
    for (int i = 0; i < thin; ++i) walk.step();
    const VecD& y = walk.position();
    for (std::size_t i = 0; i < d; ++i) {
      mean[i] += y[i];
      for (std::size_t j = 0; j <= i; ++j) second(i, j) += y[i] * y[j];
    }
  }
  for (auto& v : mean) v /= count;
  out.covariance = MatD(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double c = second(i, j) / count - mean[i] * mean[j];
      out.covariance(i, j) = out.covariance(j, i) = c;
    }
  out.centroid = p.frame.to_ambient(mean);
  out.sample_count = count;
  return out;
}

// Estimates the volume of the body (within its frame) by rejection sampling
// from an enclosing cube. Only sensible in low dimension, where the
// acceptance rate stays workable; higher dimensions are refused.
inline VolumeEstimate estimate_volume(const Polytope& p, std::uint64_t seed,
                                      double target_rel_err = 0.02,
                                      long long max_proposals = 5000000) {
  const std::size_t d = p.dim();
  if (d > 6)
    throw DimensionTooLargeError(
        "estimate_volume: rejection sampling is limited to dimension <= 6");
  VolumeEstimate out;
  if (d == 0) {
    out.volume = 1.0;
    return out;
  }
  detail::LocalView lv = detail::local_view(p);
  if (lv.infeasible)
    throw InfeasibleStartError("polytope is infeasible within its frame");

  // Every body point x has |x| <= enclosing_radius, so its local coordinates
  // satisfy |y| <= enclosing_radius + |base|.
  const double h = p.enclosing_radius + norm2(p.frame.base);
  double cube = 1.0;
  for (std::size_t i = 0; i < d; ++i) cube *= 2.0 * h;

  Rng rng(seed);
  long long hits = 0, trials = 0;
  VecD y(d);
  while (trials < max_proposals) {
    for (int chunk = 0; chunk < 4096 && trials < max_proposals; ++chunk) {
      for (auto& v : y) v = rng.uniform(-h, h);
      ++trials;
      bool inside = true;
      for (std::size_t i = 0; i < lv.size() && inside; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < d; ++j) s += lv.a(i, j) * y[j];
        inside = s <= lv.b[i];
      }
      if (inside) ++hits;
    }
    if (hits > 0) {
      const double phat = static_cast<double>(hits) / trials;
      if (static_cast<double>(hits) >=
          (1.0 - phat) / (target_rel_err * target_rel_err))
        break;
    }
  }
  if (hits == 0)
    throw SamplerError("estimate_volume: no proposals landed in the body");
  const double phat = static_cast<double>(hits) / trials;
  out.volume = cube * phat;
  out.rel_err = std::sqrt((1.0 - phat) / static_cast<double>(hits));
  out.proposals = trials;
  out.hits = hits;
  return out;
}

}  // namespace latcut

#endif  // LATCUT_SAMPLER_HPP_
