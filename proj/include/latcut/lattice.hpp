// Copyright 2026 The latcut Authors
// SPDX-License-Identifier: MIT
//
// Exact lattice machinery over rational vectors: Gram-Schmidt, LLL reduction
// under an arbitrary positive quadratic form, exhaustive shortest-vector
// enumeration, orthogonal projection of a lattice along one of its vectors,
// dual bases and determinants. Every operation is carried out in exact
// rational arithmetic; there is no floating-point drift anywhere in this
// header. Each basis vector carries an integral preimage that is kept in sync
// through every unimodular operation, so that a basis of a projected copy of
// Z^n always remembers integral representatives.

#ifndef LATCUT_LATTICE_HPP_
#define LATCUT_LATTICE_HPP_

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "latcut/rational.hpp"
#include "latcut/vecmat.hpp"

namespace latcut {

struct LatticeError : std::runtime_error {
  explicit LatticeError(const std::string& msg) : std::runtime_error(msg) {}
};
struct RankDeficientError : LatticeError {
  explicit RankDeficientError(const std::string& msg) : LatticeError(msg) {}
};
struct RankTooLargeError : LatticeError {
  explicit RankTooLargeError(const std::string& msg) : LatticeError(msg) {}
};
struct NotPrimitiveError : LatticeError {
  explicit NotPrimitiveError(const std::string& msg) : LatticeError(msg) {}
};
struct ZeroVectorError : LatticeError {
  explicit ZeroVectorError(const std::string& msg) : LatticeError(msg) {}
};

// A lattice given by independent generators in R^n. `preimages[i]` is an
// integral vector whose orthogonal projection onto span(vectors) equals
// vectors[i]; the projection/reduction routines below preserve this.
struct LatticeBasis {
  std::vector<VecR> vectors;
  std::vector<VecI> preimages;
  std::size_t ambient_dim = 0;

  std::size_t rank() const { return vectors.size(); }

  static LatticeBasis integer_lattice(std::size_t n) {
    LatticeBasis b;
    b.ambient_dim = n;
    for (std::size_t i = 0; i < n; ++i) {
      VecR v(n, Rat(0));
      VecI z(n, Int(0));
      v[i] = 1;
      z[i] = 1;
      b.vectors.push_back(std::move(v));
      b.preimages.push_back(std::move(z));
    }
    return b;
  }

  static LatticeBasis from_integer_vectors(const std::vector<VecI>& vs) {
    LatticeBasis b;
    if (vs.empty()) return b;
    b.ambient_dim = vs[0].size();
    for (const auto& v : vs) {
      VecR r(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
      b.vectors.push_back(std::move(r));
      b.preimages.push_back(v);
    }
    return b;
  }
};

// Symmetric positive form on R^n, held exactly.
class QuadraticNorm {
 public:
  explicit QuadraticNorm(MatR form) : form_(std::move(form)) {
    if (form_.rows != form_.cols)
      throw std::invalid_argument("QuadraticNorm: form must be square");
    for (std::size_t i = 0; i < form_.rows; ++i)
      for (std::size_t j = i + 1; j < form_.cols; ++j)
        if (form_(i, j) != form_(j, i))
          throw std::invalid_argument("QuadraticNorm: form must be symmetric");
  }

  static QuadraticNorm euclidean(std::size_t n) {
    return QuadraticNorm(MatR::identity(n));
  }

  // Exact dyadic lift of a float matrix. Requires symmetry to within 1e-12
  // relative and symmetrizes the residual exactly.
  static QuadraticNorm from_double(const MatD& m) {
    if (m.rows != m.cols)
      throw std::invalid_argument("QuadraticNorm: form must be square");
    MatR out(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) {
      for (std::size_t j = i; j < m.cols; ++j) {
        double a = m(i, j), b = m(j, i);
        if (std::abs(a - b) > 1e-12 * std::max({std::abs(a), std::abs(b), 1.0}))
          throw std::invalid_argument("QuadraticNorm: float form not symmetric");
        Rat v = (rat_from_double(a) + rat_from_double(b)) / 2;
        out(i, j) = v;
        out(j, i) = v;
      }
    }
    return QuadraticNorm(std::move(out));
  }

  const MatR& form() const { return form_; }
  std::size_t dim() const { return form_.rows; }

  Rat inner(const VecR& a, const VecR& b) const {
    assert(a.size() == form_.rows && b.size() == form_.rows);
    Rat s(0);
    for (std::size_t i = 0; i < form_.rows; ++i) {
      if (a[i] == 0) continue;
      Rat row(0);
      for (std::size_t j = 0; j < form_.cols; ++j) {
        if (b[j] == 0) continue;
        row += form_(i, j) * b[j];
      }
      s += a[i] * row;
    }
    return s;
  }

  Rat norm_sq(const VecR& v) const { return inner(v, v); }

 private:
  MatR form_;
};

namespace detail {

// Gram-Schmidt coefficients from the Gram matrix only (no orthogonal vectors
// materialized): r_ij = G_ij - sum_{t<j} r_it mu_jt, mu_ij = r_ij / r_jj.
struct GsoData {
  MatR mu;      // strictly lower triangle is meaningful
  VecR norms;   // ||b*_i||_A^2
};

inline GsoData gso_from_gram(const MatR& g) {
  const std::size_t k = g.rows;
  GsoData out{MatR(k, k), VecR(k, Rat(0))};
  MatR r(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Rat v = g(i, j);
      for (std::size_t t = 0; t < j; ++t) v -= r(i, t) * out.mu(j, t);
      r(i, j) = v;
      if (j < i) {
        if (out.norms[j] == 0)
          throw RankDeficientError("gram_schmidt: zero pivot");
        out.mu(i, j) = v / out.norms[j];
      }
    }
    if (r(i, i) <= 0)
      throw RankDeficientError(
          "gram_schmidt: form not positive definite on basis span");
    out.norms[i] = r(i, i);
  }
  return out;
}

inline MatR gram_matrix(const LatticeBasis& b, const QuadraticNorm& a) {
  const std::size_t k = b.rank();
  MatR g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Rat v = a.inner(b.vectors[i], b.vectors[j]);
      g(i, j) = v;
      g(j, i) = v;
    }
  return g;
}

inline MatR euclidean_gram(const LatticeBasis& b) {
  const std::size_t k = b.rank();
  MatR g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Rat v = dot(b.vectors[i], b.vectors[j]);
      g(i, j) = v;
      g(j, i) = v;
    }
  return g;
}

inline void egcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
  // Iterative extended Euclid; g >= 0, s*a + t*b = g.
  Int old_r = a, r = b, old_s = 1, s_ = 0, old_t = 0, t_ = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s_;
    old_s = s_;
    s_ = tmp;
    tmp = old_t - q * t_;
    old_t = t_;
    t_ = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  s = old_s;
  t = old_t;
}

// Unimodular k x k integer matrix whose first column is the primitive vector
// c. Built by row-reducing c to e1 with 2x2 determinant-one blocks and
// accumulating the inverse column operations.
inline Mat<Int> unimodular_with_first_column(const VecI& c) {
  const std::size_t k = c.size();
  Mat<Int> u = Mat<Int>::identity(k);
  VecI w = c;
  for (std::size_t i = 1; i < k; ++i) {
    if (w[i] == 0) continue;
    Int g, s, t;
    egcd(w[0], w[i], g, s, t);
    Int a = w[0] / g, b = w[i] / g;
    // Row op on w: (w0, wi) <- (s*w0 + t*wi, 0); inverse column op on u:
    // (u0, ui) <- (a*u0 + b*ui, -t*u0 + s*ui).
    for (std::size_t r = 0; r < k; ++r) {
      Int u0 = u(r, 0), ui = u(r, i);
      u(r, 0) = a * u0 + b * ui;
      u(r, i) = -t * u0 + s * ui;
    }
    w[0] = g;
    w[i] = 0;
  }
  if (w[0] == -1) {
    // det flip: negate two columns to keep det +-1 and make column 0 == c.
    for (std::size_t r = 0; r < k; ++r) {
      u(r, 0) = -u(r, 0);
      if (k > 1) u(r, 1) = -u(r, 1);
    }
    w[0] = 1;
  }
  assert(w[0] == 1);
  for (std::size_t r = 0; r < k; ++r) assert(u(r, 0) == c[r]);
  return u;
}

}  // namespace detail

struct GramSchmidtResult {
  std::vector<VecR> ortho;
  MatR mu;
  VecR norms_sq;
};

inline GramSchmidtResult gram_schmidt(const LatticeBasis& b,
                                      const QuadraticNorm& a) {
  detail::GsoData gso = detail::gso_from_gram(detail::gram_matrix(b, a));
  GramSchmidtResult out;
  out.mu = gso.mu;
  out.norms_sq = gso.norms;
  for (std::size_t i = 0; i < b.rank(); ++i) {
    VecR star = b.vectors[i];
    for (std::size_t j = 0; j < i; ++j)
      for (std::size_t t = 0; t < star.size(); ++t)
        star[t] -= out.mu(i, j) * out.ortho[j][t];
    out.ortho.push_back(std::move(star));
  }
  return out;
}

struct LllResult {
  LatticeBasis basis;
  Mat<Int> transform;  // column j expresses output vector j in input vectors
  long swaps = 0;
};

// Lenstra-Lenstra-Lovasz reduction under the form `a`, exact throughout.
// Guarantee: ||b1||_A^2 <= 2^(k-1) * lambda1(L, A)^2 at delta = 3/4.
inline LllResult lll_reduce(LatticeBasis basis, const QuadraticNorm& a,
                            const Rat& delta = Rat(3, 4)) {
  const std::size_t k = basis.rank();
  LllResult out;
  out.transform = Mat<Int>::identity(k);
  if (k <= 1) {
    out.basis = std::move(basis);
    return out;
  }

  detail::GsoData gso = detail::gso_from_gram(detail::gram_matrix(basis, a));
  MatR& mu = gso.mu;
  VecR& nb = gso.norms;

  auto size_reduce = [&](std::size_t i, std::size_t j) {
    Int q = round_half_up(mu(i, j));
    if (q == 0) return;
    Rat qr(q);
    for (std::size_t t = 0; t < basis.ambient_dim; ++t)
      basis.vectors[i][t] -= qr * basis.vectors[j][t];
    for (std::size_t t = 0; t < basis.preimages[i].size(); ++t)
      basis.preimages[i][t] -= q * basis.preimages[j][t];
    for (std::size_t t = 0; t < k; ++t)
      out.transform(t, i) -= q * out.transform(t, j);
    mu(i, j) -= qr;
    for (std::size_t t = 0; t < j; ++t) mu(i, t) -= qr * mu(j, t);
  };

  std::size_t cur = 1;
  long guard = 0;
  while (cur < k) {
    if (++guard > 200000)
      throw LatticeError("lll_reduce: iteration guard tripped");
    size_reduce(cur, cur - 1);
    if (nb[cur] >= (delta - mu(cur, cur - 1) * mu(cur, cur - 1)) * nb[cur - 1]) {
      for (std::size_t j = cur - 1; j-- > 0;) size_reduce(cur, j);
      ++cur;
    } else {
      // Swap cur-1 and cur, updating the GSO data in place.
      const Rat m = mu(cur, cur - 1);
      const Rat bnew = nb[cur] + m * m * nb[cur - 1];
      mu(cur, cur - 1) = m * nb[cur - 1] / bnew;
      nb[cur] = nb[cur - 1] * nb[cur] / bnew;
      nb[cur - 1] = bnew;
      std::swap(basis.vectors[cur - 1], basis.vectors[cur]);
      std::swap(basis.preimages[cur - 1], basis.preimages[cur]);
      for (std::size_t t = 0; t < k; ++t)
        std::swap(out.transform(t, cur - 1), out.transform(t, cur));
      for (std::size_t j = 0; j + 1 < cur; ++j) std::swap(mu(cur - 1, j), mu(cur, j));
      for (std::size_t i = cur + 1; i < k; ++i) {
        const Rat t = mu(i, cur);
        mu(i, cur) = mu(i, cur - 1) - m * t;
        mu(i, cur - 1) = t + mu(cur, cur - 1) * mu(i, cur);
      }
      ++out.swaps;
      if (cur > 1) --cur;
    }
  }
  out.basis = std::move(basis);
  return out;
}

struct ShortestVectorResult {
  VecR vector;
  VecI preimage;
  VecI coefficients;  // in the basis passed by the caller
  Rat norm_sq;
  Rat gamma_sq;  // squared approximation guarantee (1 for exact search)
};

// Integer coefficients of a lattice vector in the given basis; throws
// std::invalid_argument if v is not in the lattice.
inline VecI coefficients_of(const LatticeBasis& b, const VecR& v) {
  const std::size_t k = b.rank();
  MatR g = detail::euclidean_gram(b);
  VecR rhs(k);
  for (std::size_t i = 0; i < k; ++i) rhs[i] = dot(b.vectors[i], v);
  VecR c;
  try {
    c = solve_linear(g, rhs);
  } catch (const std::domain_error&) {
    throw RankDeficientError("coefficients_of: dependent basis");
  }
  VecI out(k);
  VecR rebuilt(b.ambient_dim, Rat(0));
  for (std::size_t i = 0; i < k; ++i) {
    if (denominator(c[i]) != 1)
      throw std::invalid_argument("coefficients_of: vector not in lattice");
    out[i] = numerator(c[i]);
    for (std::size_t t = 0; t < rebuilt.size(); ++t)
      rebuilt[t] += c[i] * b.vectors[i][t];
  }
  if (rebuilt != v)
    throw std::invalid_argument("coefficients_of: vector not in lattice span");
  return out;
}

// Lattice vector (and its preimage) for a coefficient vector.
inline std::pair<VecR, VecI> combine(const LatticeBasis& b, const VecI& coeffs) {
  VecR v(b.ambient_dim, Rat(0));
  VecI z(b.preimages.empty() ? VecI() : VecI(b.preimages[0].size(), Int(0)));
  for (std::size_t i = 0; i < b.rank(); ++i) {
    if (coeffs[i] == 0) continue;
    Rat cr(coeffs[i]);
    for (std::size_t t = 0; t < v.size(); ++t) v[t] += cr * b.vectors[i][t];
    for (std::size_t t = 0; t < z.size(); ++t) z[t] += coeffs[i] * b.preimages[i][t];
  }
  return {std::move(v), std::move(z)};
}

// Exhaustive shortest nonzero vector under `a`, by depth-first coefficient
// enumeration over the LLL-reduced basis with exact pruning. Deterministic
// tie rule: among optimal vectors, the one whose coefficient vector in the
// caller's basis, sign-normalized so its first nonzero entry is positive, is
// lexicographically smallest.
inline ShortestVectorResult enumerate_shortest_vector(
    const LatticeBasis& basis, const QuadraticNorm& a,
    std::size_t rank_limit = 8) {
  const std::size_t k = basis.rank();
  if (k == 0) throw std::invalid_argument("enumerate_shortest_vector: empty basis");
  if (k > rank_limit)
    throw RankTooLargeError("enumerate_shortest_vector: rank " +
                            std::to_string(k) + " exceeds limit " +
                            std::to_string(rank_limit));

  LllResult red = lll_reduce(basis, a);
  detail::GsoData gso =
      detail::gso_from_gram(detail::gram_matrix(red.basis, a));

  auto canonical = [&](VecI c) {
    for (const Int& x : c) {
      if (x == 0) continue;
      if (x < 0)
        for (Int& y : c) y = -y;
      break;
    }
    return c;
  };
  auto to_input_coeffs = [&](const VecI& cred) {
    VecI c(k, Int(0));
    for (std::size_t j = 0; j < k; ++j) {
      if (cred[j] == 0) continue;
      for (std::size_t i = 0; i < k; ++i)
        c[i] += red.transform(i, j) * cred[j];
    }
    return c;
  };

  // Incumbent: best reduced-basis vector.
  Rat best(-1);
  VecI best_coeffs;  // canonical, in caller's basis
  for (std::size_t i = 0; i < k; ++i) {
    Rat n = a.norm_sq(red.basis.vectors[i]);
    VecI cred(k, Int(0));
    cred[i] = 1;
    VecI cin = canonical(to_input_coeffs(cred));
    if (best < 0 || n < best || (n == best && cin < best_coeffs)) {
      best = n;
      best_coeffs = cin;
    }
  }

  VecI cur(k, Int(0));
  // Levels run from k-1 down to 0; at a completed assignment the squared norm
  // is sum_i B_i (c_i + t_i)^2 with t_i = sum_{j>i} mu(j,i) c_j.
  auto dfs = [&](auto&& self, std::size_t level, const Rat& partial) -> void {
    const std::size_t i = level - 1;
    Rat t(0);
    for (std::size_t j = level; j < k; ++j)
      if (cur[j] != 0) t += gso.mu(j, i) * Rat(cur[j]);

    auto cost = [&](const Int& c) -> Rat {
      Rat d = Rat(c) + t;
      return gso.norms[i] * d * d;
    };
    Int center = round_half_up(-t);
    Int down = center, up = center + 1;
    bool down_live = true, up_live = true;
    while (down_live || up_live) {
      Int pick;
      Rat cd(-1), cu(-1);
      if (down_live) cd = cost(down);
      if (up_live) cu = cost(up);
      bool take_down;
      if (down_live && up_live)
        take_down = cd <= cu;
      else
        take_down = down_live;
      Rat c = take_down ? cd : cu;
      if (partial + c > best) {
        if (take_down)
          down_live = false;
        else
          up_live = false;
        continue;
      }
      pick = take_down ? down : up;
      if (take_down) --down; else ++up;

      cur[i] = pick;
      if (i == 0) {
        bool zero = true;
        for (const Int& x : cur) zero = zero && x == 0;
        if (!zero) {
          Rat total = partial + c;
          VecI cin = canonical(to_input_coeffs(cur));
          if (total < best || (total == best && cin < best_coeffs)) {
            best = total;
            best_coeffs = cin;
          }
        }
      } else {
        self(self, i, partial + c);
      }
      cur[i] = 0;
    }
  };
  dfs(dfs, k, Rat(0));

  ShortestVectorResult out;
  out.coefficients = best_coeffs;
  auto [v, z] = combine(basis, best_coeffs);
  out.vector = std::move(v);
  out.preimage = std::move(z);
  out.norm_sq = best;
  out.gamma_sq = Rat(1);
  return out;
}

enum class SvpBackend { kLll, kExact };

// Approximately-shortest vector: first vector of the LLL-reduced basis
// (gamma^2 = 2^(k-1)), or the exact enumerated optimum (gamma^2 = 1).
inline ShortestVectorResult approx_shortest_vector(
    const LatticeBasis& basis, const QuadraticNorm& a, SvpBackend backend,
    std::size_t rank_limit = 8) {
  if (backend == SvpBackend::kExact)
    return enumerate_shortest_vector(basis, a, rank_limit);
  const std::size_t k = basis.rank();
  if (k == 0) throw std::invalid_argument("approx_shortest_vector: empty basis");
  LllResult red = lll_reduce(basis, a);
  ShortestVectorResult out;
  out.vector = red.basis.vectors[0];
  out.preimage = red.basis.preimages[0];
  out.coefficients.resize(k);
  for (std::size_t i = 0; i < k; ++i) out.coefficients[i] = red.transform(i, 0);
  out.norm_sq = a.norm_sq(out.vector);
  out.gamma_sq = Rat(Int(1) << (k - 1));
  return out;
}

// Orthogonal projection of the lattice onto the hyperplane v-perp, where v
// must be a primitive lattice vector. The result has rank k-1 and preimages
// that still project onto the returned generators.
inline LatticeBasis project_out(const LatticeBasis& basis, const VecR& v) {
  bool zero = true;
  for (const Rat& x : v) zero = zero && x == 0;
  if (zero) throw ZeroVectorError("project_out: zero direction");

  VecI c = coefficients_of(basis, v);
  Int g(0);
  for (const Int& x : c) g = boost::multiprecision::gcd(g, x);
  if (g != 1)
    throw NotPrimitiveError("project_out: vector is not primitive in the lattice");

  const std::size_t k = basis.rank();
  Mat<Int> u = detail::unimodular_with_first_column(c);
  const Rat vv = dot(v, v);

  LatticeBasis out;
  out.ambient_dim = basis.ambient_dim;
  for (std::size_t j = 1; j < k; ++j) {
    VecR w(basis.ambient_dim, Rat(0));
    VecI z(basis.preimages[0].size(), Int(0));
    for (std::size_t i = 0; i < k; ++i) {
      if (u(i, j) == 0) continue;
      Rat f(u(i, j));
      for (std::size_t t = 0; t < w.size(); ++t) w[t] += f * basis.vectors[i][t];
      for (std::size_t t = 0; t < z.size(); ++t) z[t] += u(i, j) * basis.preimages[i][t];
    }
    const Rat coef = dot(w, v) / vv;
    for (std::size_t t = 0; t < w.size(); ++t) w[t] -= coef * v[t];
    out.vectors.push_back(std::move(w));
    out.preimages.push_back(std::move(z));
  }
  return out;
}

inline std::vector<VecR> dual_basis(const LatticeBasis& b) {
  const std::size_t k = b.rank();
  MatR g = detail::euclidean_gram(b);
  MatR ginv;
  try {
    ginv = solve_linear(g, MatR::identity(k));
  } catch (const std::domain_error&) {
    throw RankDeficientError("dual_basis: dependent generators");
  }
  std::vector<VecR> out;
  for (std::size_t i = 0; i < k; ++i) {
    VecR d(b.ambient_dim, Rat(0));
    for (std::size_t j = 0; j < k; ++j) {
      if (ginv(i, j) == 0) continue;
      for (std::size_t t = 0; t < d.size(); ++t)
        d[t] += ginv(i, j) * b.vectors[j][t];
    }
    out.push_back(std::move(d));
  }
  return out;
}

// Squared lattice determinant det(B^T B), exact. (The determinant itself is
// generally irrational for projected lattices; all identities used here are
// stated on squares.)
inline Rat determinant_sq(const LatticeBasis& b) {
  if (b.rank() == 0) return Rat(1);
  return determinant(detail::euclidean_gram(b));
}

inline double lattice_determinant(const LatticeBasis& b) {
  return std::sqrt(to_double(determinant_sq(b)));
}

// Exact check of the first-minimum bound lambda1^2 <= k * det_A(L)^(2/k),
// i.e. (lambda1^2)^k <= k^k * det(B^T A B).
inline bool minkowski_check(const LatticeBasis& b, const QuadraticNorm& a,
                            const Rat& lambda1_sq) {
  const std::size_t k = b.rank();
  if (k == 0) return true;
  Rat det_a = determinant(detail::gram_matrix(b, a));
  Rat lhs(1), kk(1);
  for (std::size_t i = 0; i < k; ++i) {
    lhs *= lambda1_sq;
    kk *= Rat(static_cast<long>(k));
  }
  return lhs <= kk * det_a;
}

inline double minkowski_bound(const LatticeBasis& b, const QuadraticNorm& a) {
  const std::size_t k = b.rank();
  if (k == 0) return 0.0;
  double det_a = to_double(determinant(detail::gram_matrix(b, a)));
  return static_cast<double>(k) * std::pow(det_a, 1.0 / static_cast<double>(k));
}

// Invariant check: projecting preimages[i] onto span(vectors) reproduces
// vectors[i] exactly.
inline bool preimages_consistent(const LatticeBasis& b) {
  const std::size_t k = b.rank();
  if (k == 0) return true;
  MatR g = detail::euclidean_gram(b);
  for (std::size_t i = 0; i < k; ++i) {
    VecR z(b.ambient_dim);
    for (std::size_t t = 0; t < b.ambient_dim; ++t) z[t] = Rat(b.preimages[i][t]);
    VecR rhs(k);
    for (std::size_t j = 0; j < k; ++j) rhs[j] = dot(b.vectors[j], z);
    VecR c;
    try {
      c = solve_linear(g, rhs);
    } catch (const std::domain_error&) {
      return false;
    }
    VecR proj(b.ambient_dim, Rat(0));
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t t = 0; t < b.ambient_dim; ++t)
        proj[t] += c[j] * b.vectors[j][t];
    if (proj != b.vectors[i]) return false;
  }
  return true;
}

}  // namespace latcut

#endif  // LATCUT_LATTICE_HPP_
