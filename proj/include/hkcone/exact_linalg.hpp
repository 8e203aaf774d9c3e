#pragma once

// Exact integer/rational linear algebra: Hermite and Smith normal forms,
// saturated kernels, a rational LDL^T split for positive definite forms,
// lattice point enumeration in ellipsoids (Fincke-Pohst with exact bound
// predicates) and a phase-one simplex for nonnegative feasibility with
// Farkas certificates. Everything is exact; there is no floating point.

#include "hkcone/errors.hpp"
#include "hkcone/matrix.hpp"
#include "hkcone/numeric.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace hkcone {

struct HermiteResult {
  IntMatrix h;  // row-style HNF of the input
  IntMatrix u;  // unimodular, u * input == h
};

// Row-style Hermite normal form. Pivots are positive, entries above a pivot
// are reduced into [0, pivot), zero rows sink to the bottom. Deterministic:
// the pivot chosen is always the minimal-|value| candidate, lowest row first.
inline HermiteResult hermite_normal_form(const IntMatrix& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  HermiteResult res{m, IntMatrix::identity(rows)};
  IntMatrix& h = res.h;
  IntMatrix& u = res.u;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    // Gauss-reduce the column below pivot_row until one nonzero entry remains.
    for (;;) {
      std::size_t best = rows;
      for (std::size_t r = pivot_row; r < rows; ++r) {
        if (h.at(r, col) == 0) continue;
        if (best == rows || abs(h.at(r, col)) < abs(h.at(best, col))) best = r;
      }
      if (best == rows) break;  // column is zero from pivot_row down
      if (best != pivot_row) {
        h.swap_rows(pivot_row, best);
        u.swap_rows(pivot_row, best);
      }
      bool clean = true;
      for (std::size_t r = pivot_row + 1; r < rows; ++r) {
        if (h.at(r, col) == 0) continue;
        Int q = h.at(r, col) / h.at(pivot_row, col);  // truncated is fine here
        if (q != 0) {
          h.add_row(r, pivot_row, -q);
          u.add_row(r, pivot_row, -q);
        }
        if (h.at(r, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h.at(pivot_row, col) == 0) continue;  // no pivot in this column
    if (h.at(pivot_row, col) < 0) {
      h.scale_row(pivot_row, Int(-1));
      u.scale_row(pivot_row, Int(-1));
    }
    for (std::size_t r = 0; r < pivot_row; ++r) {
      Int q = floor_div(h.at(r, col), h.at(pivot_row, col));
      if (q != 0) {
        h.add_row(r, pivot_row, -q);
        u.add_row(r, pivot_row, -q);
      }
    }
    ++pivot_row;
  }
  return res;
}

struct SmithResult {
  IntMatrix d;  // diagonal, d(i,i) >= 0, d(i,i) | d(i+1,i+1)
  IntMatrix u;  // unimodular row transform
  IntMatrix v;  // unimodular column transform, u * input * v == d
};

inline SmithResult smith_normal_form(const IntMatrix& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  SmithResult res{m, IntMatrix::identity(rows), IntMatrix::identity(cols)};
  IntMatrix& d = res.d;
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;
  std::size_t t = 0;
  std::size_t steps = rows < cols ? rows : cols;
  while (t < steps) {
    // Find the minimal-|value| nonzero entry of the trailing submatrix.
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (d.at(i, j) == 0) continue;
        if (pi == rows || abs(d.at(i, j)) < abs(d.at(pi, pj))) {
          pi = i;
          pj = j;
        }
      }
    if (pi == rows) break;  // trailing submatrix vanished
    if (pi != t) {
      d.swap_rows(t, pi);
      u.swap_rows(t, pi);
    }
    if (pj != t) {
      d.swap_cols(t, pj);
      v.swap_cols(t, pj);
    }
    bool dirty = false;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (d.at(i, t) == 0) continue;
      Int q = d.at(i, t) / d.at(t, t);
      if (q != 0) {
        d.add_row(i, t, -q);
        u.add_row(i, t, -q);
      }
      if (d.at(i, t) != 0) dirty = true;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (d.at(t, j) == 0) continue;
      Int q = d.at(t, j) / d.at(t, t);
      if (q != 0) {
        d.add_col(j, t, -q);
        v.add_col(j, t, -q);
      }
      if (d.at(t, j) != 0) dirty = true;
    }
    if (dirty) continue;  // smaller pivot now exists, redo this step
    // Pivot must divide everything that remains; if not, fold the offending
    // row into row t and redo (the pivot gcd strictly shrinks, so this ends).
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i)
      for (std::size_t j = t + 1; j < cols; ++j)
        if (d.at(i, j) % d.at(t, t) != 0) {
          d.add_row(t, i, Int(1));
          u.add_row(t, i, Int(1));
          divides = false;
          break;
        }
    if (!divides) continue;
    if (d.at(t, t) < 0) {
      d.scale_row(t, Int(-1));
      u.scale_row(t, Int(-1));
    }
    ++t;
  }
  return res;
}

// Basis of the saturated integer kernel {x : m x = 0}, i.e. a basis of a
// direct summand. Rows of the result are the basis vectors, canonicalized
// through a final HNF so the output is deterministic.
inline std::vector<std::vector<Int>> kernel_basis(const IntMatrix& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  SmithResult s = smith_normal_form(m);
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < cols; ++j)
    if (j >= rows || s.d.at(j, j) == 0) free_cols.push_back(j);
  if (free_cols.empty()) return {};
  IntMatrix k(free_cols.size(), cols);
  for (std::size_t i = 0; i < free_cols.size(); ++i)
    for (std::size_t r = 0; r < cols; ++r) k.at(i, r) = s.v.at(r, free_cols[i]);
  IntMatrix h = hermite_normal_form(k).h;
  std::vector<std::vector<Int>> basis;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::vector<Int> row(cols);
    bool zero = true;
    for (std::size_t j = 0; j < cols; ++j) {
      row[j] = h.at(i, j);
      if (row[j] != 0) zero = false;
    }
    if (!zero) basis.push_back(std::move(row));
  }
  return basis;
}

// Exact inverse of a unimodular integer matrix.
inline IntMatrix int_inverse(const IntMatrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("int_inverse: not square");
  Int dd = det(u);
  if (dd != 1 && dd != -1) throw std::invalid_argument("int_inverse: not unimodular");
  std::size_t n = u.rows();
  // Solve U X = I by Gauss-Jordan over Q; entries of X are integral.
  RatMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a.at(i, j) = Rat(u.at(i, j));
    a.at(i, n + i) = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (a.at(p, k) == 0) ++p;
    if (p != k) a.swap_rows(k, p);
    Rat piv = a.at(k, k);
    for (std::size_t j = 0; j < 2 * n; ++j) a.at(k, j) /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a.at(i, k) == 0) continue;
      Rat f = a.at(i, k);
      for (std::size_t j = 0; j < 2 * n; ++j) a.at(i, j) -= f * a.at(k, j);
    }
  }
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = to_int(a.at(i, n + j));
  return inv;
}

// Unimodular matrix whose first row is the given primitive vector.
inline IntMatrix complete_to_unimodular(const std::vector<Int>& a) {
  std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("complete_to_unimodular: empty vector");
  if (gcd_all(a) != 1) throw NotPrimitive("completion needs a primitive vector");
  IntMatrix row(1, n);
  for (std::size_t j = 0; j < n; ++j) row.at(0, j) = a[j];
  SmithResult s = smith_normal_form(row);  // u * row * v = [1 0 ... 0]
  // row * v = u^{-1} [1 0...0] = (+-1, 0, ..., 0), so after fixing the sign
  // the first row of v^{-1} is a.
  IntMatrix v = s.v;
  Int lead = (row * v).at(0, 0);
  if (lead == -1) {
    for (std::size_t i = 0; i < n; ++i) v.at(i, 0) = -v.at(i, 0);
  }
  return int_inverse(v);
}

// One exact solution of A x = b over the rationals, or nullopt when the
// system is inconsistent. Free variables (if any) are set to zero.
inline std::optional<std::vector<Rat>> solve_linear(const RatMatrix& a0, const std::vector<Rat>& b) {
  std::size_t rows = a0.rows(), cols = a0.cols();
  if (b.size() != rows) throw std::invalid_argument("solve_linear: rhs length mismatch");
  RatMatrix a(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a.at(i, j) = a0.at(i, j);
    a.at(i, cols) = b[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a.at(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) a.swap_rows(r, p);
    Rat piv = a.at(r, c);
    for (std::size_t j = c; j <= cols; ++j) a.at(r, j) /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a.at(i, c) == 0) continue;
      Rat f = a.at(i, c);
      for (std::size_t j = c; j <= cols; ++j) a.at(i, j) -= f * a.at(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (a.at(i, cols) != 0) return std::nullopt;
  std::vector<Rat> x(cols);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = a.at(i, cols);
  return x;
}

// Rational LDL^T-style split of a symmetric positive definite matrix g:
// returns q with q(i,i) = d_i > 0 and q(i,j) for j > i the multipliers, so
//   g(a,b) = sum_i d_i * l(i,a) * l(i,b),  l(i,a) = [a == i] + [a > i] q(i,a).
// Throws NotPositiveDefinite as soon as a pivot fails to be positive.
inline RatMatrix rational_cholesky(const RatMatrix& g) {
  if (!is_symmetric(g)) throw std::invalid_argument("rational_cholesky: not symmetric");
  std::size_t n = g.rows();
  RatMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat d = g.at(i, i);
    for (std::size_t k = 0; k < i; ++k) d -= q.at(k, k) * q.at(k, i) * q.at(k, i);
    if (d <= 0) throw NotPositiveDefinite("pivot " + std::to_string(i) + " is " + rat_str(d));
    q.at(i, i) = d;
    for (std::size_t j = i + 1; j < n; ++j) {
      Rat s = g.at(i, j);
      for (std::size_t k = 0; k < i; ++k) s -= q.at(k, k) * q.at(k, i) * q.at(k, j);
      q.at(i, j) = s / d;
    }
  }
  return q;
}

namespace detail {

// Largest integer z with z <= mu + sqrt(r), exactly (r >= 0). Seeded from an
// integer square root, then corrected with the exact predicate
//   z - mu <= sqrt(r)  <=>  z <= mu  or  (z - mu)^2 <= r.
inline Int upper_sqrt_bound(const Rat& mu, const Rat& r) {
  auto ok = [&](const Int& z) {
    Rat d = Rat(z) - mu;
    if (d <= 0) return true;
    return d * d <= r;
  };
  Int z = floor_rat(mu) + isqrt_floor(floor_rat(r)) + 2;
  while (!ok(z)) --z;
  while (ok(z + 1)) ++z;  // defensive; the seed overshoots by design
  return z;
}

// Smallest integer z with z >= mu - sqrt(r), exactly.
inline Int lower_sqrt_bound(const Rat& mu, const Rat& r) {
  auto ok = [&](const Int& z) {
    Rat d = mu - Rat(z);
    if (d <= 0) return true;
    return d * d <= r;
  };
  Int z = ceil_rat(mu) - isqrt_floor(floor_rat(r)) - 2;
  while (!ok(z)) ++z;
  while (ok(z - 1)) --z;
  return z;
}

}  // namespace detail

// All integer points z with (z - center)^T P (z - center) <= bound, for P
// symmetric positive definite. chol must be rational_cholesky(P). Classic
// Fincke-Pohst recursion, but every interval endpoint is decided by an exact
// rational predicate. Output order: last coordinate varies slowest.
inline std::vector<std::vector<Int>> enumerate_quadratic_region(const RatMatrix& chol,
                                                                const std::vector<Rat>& center,
                                                                const Rat& bound) {
  std::size_t n = chol.rows();
  if (center.size() != n) throw std::invalid_argument("enumerate_quadratic_region: center length");
  std::vector<std::vector<Int>> out;
  if (bound < 0) return out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  std::vector<Int> z(n);
  // walk(i, remaining): coordinates i+1..n-1 are fixed.
  std::function<void(std::size_t, const Rat&)> walk = [&](std::size_t i, const Rat& remaining) {
    // s = sum_{j>i} q(i,j) (z_j - c_j)
    Rat s = 0;
    for (std::size_t j = i + 1; j < n; ++j) s += chol.at(i, j) * (Rat(z[j]) - center[j]);
    Rat mu = center[i] - s;
    Rat radius2 = remaining / chol.at(i, i);
    Int lo = detail::lower_sqrt_bound(mu, radius2);
    Int hi = detail::upper_sqrt_bound(mu, radius2);
    for (Int zi = lo; zi <= hi; ++zi) {
      z[i] = zi;
      Rat y = Rat(zi) - mu;  // equals (z_i - c_i) + s
      Rat used = chol.at(i, i) * y * y;
      if (used > remaining) continue;  // endpoints are exact, but stay safe
      if (i == 0)
        out.push_back(z);
      else
        walk(i - 1, remaining - used);
    }
  };
  walk(n - 1, bound);
  return out;
}

struct FeasibilityResult {
  bool feasible = false;
  // feasible: nonnegative rationals with sum_j coefficients[j] * gen_j = target.
  std::vector<Rat> coefficients;
  // infeasible: y with <y, gen_j> >= 0 for all j and <y, target> < 0
  // (plain coordinate dot products).
  std::vector<Rat> farkas;
};

// Decide whether target is a nonnegative rational combination of the given
// generators; exact phase-one simplex with Bland's rule, so it terminates.
// Either outcome comes with a certificate; both are re-verified here before
// returning, and a failed re-verification throws (it would be a bug).
inline FeasibilityResult rational_feasibility(const std::vector<std::vector<Rat>>& generators,
                                              const std::vector<Rat>& target) {
  std::size_t n = target.size();
  std::size_t k = generators.size();
  for (const auto& g : generators)
    if (g.size() != n) throw std::invalid_argument("rational_feasibility: generator length");

  // Tableau rows: sum_j x_j gen_j + artificial_i = +-target, rhs >= 0.
  std::vector<int> sign(n, 1);
  RatMatrix t(n, k + n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    Rat rhs = target[i];
    if (rhs < 0) {
      sign[i] = -1;
      rhs = -rhs;
    }
    for (std::size_t j = 0; j < k; ++j) t.at(i, j) = Rat(sign[i]) * generators[j][i];
    t.at(i, k + i) = 1;
    t.at(i, k + n) = rhs;
  }
  std::vector<std::size_t> basis(n);
  for (std::size_t i = 0; i < n; ++i) basis[i] = k + i;

  // Reduced-cost row for minimizing the sum of artificials.
  std::vector<Rat> obj(k + n + 1);
  for (std::size_t j = 0; j <= k + n; ++j) {
    Rat s = (j >= k && j < k + n) ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) s -= t.at(i, j);
    obj[j] = s;
  }

  for (;;) {
    std::size_t enter = k + n;
    for (std::size_t j = 0; j < k + n; ++j)
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    if (enter == k + n) break;  // optimal
    std::size_t leave = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (t.at(i, enter) <= 0) continue;
      if (leave == n) {
        leave = i;
        continue;
      }
      Rat cur = t.at(i, k + n) / t.at(i, enter);
      Rat best = t.at(leave, k + n) / t.at(leave, enter);
      if (cur < best || (cur == best && basis[i] < basis[leave])) leave = i;
    }
    if (leave == n)
      throw Error("rational_feasibility: unbounded phase-one objective");  // cannot happen
    Rat piv = t.at(leave, enter);
    for (std::size_t j = 0; j <= k + n; ++j) t.at(leave, j) /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == leave || t.at(i, enter) == 0) continue;
      Rat f = t.at(i, enter);
      for (std::size_t j = 0; j <= k + n; ++j) t.at(i, j) -= f * t.at(leave, j);
    }
    if (obj[enter] != 0) {
      Rat f = obj[enter];
      for (std::size_t j = 0; j <= k + n; ++j) obj[j] -= f * t.at(leave, j);
    }
    basis[leave] = enter;
  }

  Rat residue = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (basis[i] >= k) residue += t.at(i, k + n);

  FeasibilityResult res;
  if (residue == 0) {
    res.feasible = true;
    res.coefficients.assign(k, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
      if (basis[i] < k) res.coefficients[basis[i]] = t.at(i, k + n);
    std::vector<Rat> check(n);
    for (std::size_t j = 0; j < k; ++j) {
      if (res.coefficients[j] == 0) continue;
      if (res.coefficients[j] < 0) throw Error("rational_feasibility: negative coefficient");
      for (std::size_t i = 0; i < n; ++i) check[i] += res.coefficients[j] * generators[j][i];
    }
    if (check != target) throw Error("rational_feasibility: recombination check failed");
    return res;
  }

  // Infeasible. The artificial columns of the final tableau hold B^{-1}, so
  // the dual vector is read off: y'_i = sum over artificial basis rows of
  // their entry in column k+i. Optimality gives y'^T A' <= 0, y'^T b' > 0;
  // undo the row signs and flip to get the advertised certificate.
  res.feasible = false;
  res.farkas.assign(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) {
    Rat y = 0;
    for (std::size_t r = 0; r < n; ++r)
      if (basis[r] >= k) y += t.at(r, k + i);
    res.farkas[i] = Rat(-sign[i]) * y;
  }
  Rat ft = 0;
  for (std::size_t i = 0; i < n; ++i) ft += res.farkas[i] * target[i];
  if (ft >= 0) throw Error("rational_feasibility: Farkas certificate failed on target");
  for (std::size_t j = 0; j < k; ++j) {
    Rat fg = 0;
    for (std::size_t i = 0; i < n; ++i) fg += res.farkas[i] * generators[j][i];
    if (fg < 0) throw Error("rational_feasibility: Farkas certificate failed on generator");
  }
  return res;
}

}  // namespace hkcone
