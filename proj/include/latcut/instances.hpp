// Copyright 2026 The latcut Authors
// SPDX-License-Identifier: MIT
//
// Benchmark instances for the continuous side of the solver: separable
// convex objectives with a known unique integral minimizer. Two families,
// both cheap to evaluate exactly:
//
//   weighted_abs     f(x) = sum_i w_i |x_i - a_i|        (w_i >= 1)
//   quadratic_diag   f(x) = sum_i q_i (x_i - a_i)^2      (q_i >= 1)
//
// The anchor a is integral and inside the search box [-R, R]^n, so f has the
// unique minimizer a with value 0. The separation oracle answers YES exactly
// at the anchor and otherwise returns a subgradient cut, which makes these
// instances a ground-truth harness for the solver: the returned point either
// equals the anchor or the run is wrong.

#ifndef LATCUT_INSTANCES_HPP_
#define LATCUT_INSTANCES_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "latcut/rng.hpp"
#include "latcut/solver.hpp"

namespace latcut {

struct InstanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ConvexInstance {
 public:
  enum class Kind { kWeightedAbs, kQuadraticDiag };

  static ConvexInstance weighted_abs(std::vector<long long> anchor,
                                     std::vector<long long> weights,
                                     long long radius) {
    return make(Kind::kWeightedAbs, std::move(anchor), std::move(weights),
                radius);
  }

  static ConvexInstance quadratic_diag(std::vector<long long> anchor,
                                       std::vector<long long> coeffs,
                                       long long radius) {
    return make(Kind::kQuadraticDiag, std::move(anchor), std::move(coeffs),
                radius);
  }

  static ConvexInstance from_json(const nlohmann::json& j) {
    try {
      if (!j.is_object() || !j.contains("family"))
        throw InstanceError("instance document needs a \"family\" field");
      const std::string family = j.at("family").get<std::string>();
      Kind kind;
      const char* scale_key;
      if (family == "weighted_abs") {
        kind = Kind::kWeightedAbs;
        scale_key = "weights";
      } else if (family == "quadratic_diag") {
        kind = Kind::kQuadraticDiag;
        scale_key = "coeffs";
      } else {
        throw InstanceError("unknown convex instance family \"" + family +
                            "\"");
      }
      ConvexInstance f =
          make(kind, j.at("anchor").get<std::vector<long long>>(),
               j.at(scale_key).get<std::vector<long long>>(),
               j.at("radius").get<long long>());
      if (j.at("n").get<int>() != f.dimension())
        throw InstanceError("instance \"n\" disagrees with the anchor length");
      return f;
    } catch (const nlohmann::json::exception& e) {
      throw InstanceError(std::string("malformed instance document: ") +
                          e.what());
    }
  }

  nlohmann::json to_json() const {
    return {{"family", kind_ == Kind::kWeightedAbs ? "weighted_abs"
                                                   : "quadratic_diag"},
            {"n", dimension()},
            {"radius", radius_},
            {"anchor", anchor_},
            {kind_ == Kind::kWeightedAbs ? "weights" : "coeffs", scale_}};
  }

  Kind kind() const { return kind_; }
  int dimension() const { return static_cast<int>(anchor_.size()); }
  long long radius() const { return radius_; }
  const std::vector<long long>& minimizer() const { return anchor_; }

  double value(const VecD& x) const {
    require_dim(x.size());
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - static_cast<double>(anchor_[i]);
      s += static_cast<double>(scale_[i]) *
           (kind_ == Kind::kWeightedAbs ? std::abs(d) : d * d);
    }
    return s;
  }

  long long value_at(const std::vector<long long>& x) const {
    require_dim(x.size());
    long long s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const long long d = x[i] - anchor_[i];
      s += scale_[i] * (kind_ == Kind::kWeightedAbs ? std::abs(d) : d * d);
    }
    return s;
  }

  // YES exactly at the unique minimizer; otherwise a subgradient halfspace
  // {y : g . y <= g . x}. At a kink of |.| the zero subgradient component is
  // chosen, which is valid and keeps the cut normal integral.
  Separation separate(const VecD& x) const {
    require_dim(x.size());
    Separation s;
    s.normal.assign(x.size(), 0.0);
    bool at_anchor = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - static_cast<double>(anchor_[i]);
      if (d != 0.0) at_anchor = false;
      if (kind_ == Kind::kWeightedAbs) {
        if (d > 0.0)
          s.normal[i] = static_cast<double>(scale_[i]);
        else if (d < 0.0)
          s.normal[i] = -static_cast<double>(scale_[i]);
      } else {
        s.normal[i] = 2.0 * static_cast<double>(scale_[i]) * d;
      }
    }
    s.optimal = at_anchor;
    return s;
  }

  SeparationOracle oracle() const {
    return [inst = *this](const VecD& x) { return inst.separate(x); };
  }

 private:
  ConvexInstance() = default;

  static void check(bool ok, const char* msg) {
    if (!ok) throw InstanceError(msg);
  }

  static ConvexInstance make(Kind kind, std::vector<long long> anchor,
                             std::vector<long long> scale, long long radius) {
    check(!anchor.empty(), "instance needs at least one coordinate");
    check(anchor.size() <= 64, "instance dimension is limited to 64");
    check(scale.size() == anchor.size(),
          "anchor and scale vectors must have equal length");
    check(radius >= 1, "instance radius must be at least 1");
    for (long long a : anchor)
      check(-radius <= a && a <= radius,
            "anchor must lie inside the radius box");
    for (long long w : scale) check(w >= 1, "scale entries must be positive");
    ConvexInstance f;
    f.kind_ = kind;
    f.anchor_ = std::move(anchor);
    f.scale_ = std::move(scale);
    f.radius_ = radius;
    return f;
  }

  void require_dim(std::size_t m) const {
    if (m != anchor_.size())
      throw InstanceError("query dimension does not match the instance");
  }

  Kind kind_ = Kind::kWeightedAbs;
  std::vector<long long> anchor_;
  std::vector<long long> scale_;  // weights (abs) or coefficients (quadratic)
  long long radius_ = 1;
};

// Deterministic generator for sweep cells and fuzz suites: anchor uniform in
// the box, scale entries small so exact values stay far from overflow.
inline ConvexInstance random_convex_instance(ConvexInstance::Kind kind, int n,
                                             long long radius,
                                             std::uint64_t seed) {
  if (n < 1 || radius < 1)
    throw InstanceError("generator needs n >= 1 and radius >= 1");
  Rng rng(derive_seed(seed, 0x636e7678, n, static_cast<int>(kind)));
  std::vector<long long> anchor(n), scale(n);
  for (int i = 0; i < n; ++i) anchor[i] = rng.uniform_int(-radius, radius);
  const long long hi = kind == ConvexInstance::Kind::kWeightedAbs ? 9 : 5;
  for (int i = 0; i < n; ++i) scale[i] = rng.uniform_int(1, hi);
  return kind == ConvexInstance::Kind::kWeightedAbs
             ? ConvexInstance::weighted_abs(std::move(anchor),
                                            std::move(scale), radius)
             : ConvexInstance::quadratic_diag(std::move(anchor),
                                              std::move(scale), radius);
}

}  // namespace latcut

#endif  // LATCUT_INSTANCES_HPP_
