#pragma once

// Invariants of extremal-ray candidates: saturation into the divisor
// lattice, divisibility, the P^k-bundle bucket of the square, the Lagrangian
// detection, the wall-divisor filter in the Hilbert case, and the bounded
// cone tests (degree-sliced enumeration, ampleness certification and
// membership in the cone spanned by enumerated generators).

#include "hkcone/errors.hpp"
#include "hkcone/exact_linalg.hpp"
#include "hkcone/hk_model.hpp"
#include "hkcone/lattice.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hkcone {

// Bucket index of a negative square: k = 1 on [-2, 0), and for q < -2 the
// unique k with -(k+3)/2 <= q < -(k+2)/2, i.e. k = ceil(-2q) - 3.
inline int k_bucket_of(const Rat& q) {
  if (q >= 0) throw Error("k_bucket_of: square " + rat_str(q) + " is not negative");
  if (q >= -2) return 1;
  Int k = ceil_rat(Rat(-2) * q) - 3;
  return static_cast<int>(k);
}

// -2 <= (R,R) < 0: the square of a ray contracted by a divisorial contraction.
inline bool divisorial_bound_check(const ClassVector& r) {
  Rat q = square(r);
  return q >= -2 && q < 0;
}

enum class MarkmanStatus { Admissible, Inadmissible, NotApplicable };

struct MarkmanResult {
  MarkmanStatus status = MarkmanStatus::NotApplicable;
  // For the fractional admissible family (R,R) = -2/(m^2 (n-1)): the m.
  std::optional<Int> m;
};

// Value-level wall-divisor filter for the Hilbert case: a primitive ray R is
// admissible iff (R,R) = -2 (then rho = R), or (R,R) = -2/(m^2 (n-1)) for a
// positive integer m (then rho = (n-1) m R with (rho,rho) = -2(n-1)).
inline MarkmanResult markman_admissible(int n, const Rat& sq) {
  if (n < 2) throw WrongDeformationType("wall-divisor filter needs HilbK3 with n >= 2");
  if (sq >= 0) return {MarkmanStatus::Inadmissible, std::nullopt};
  Rat mm = Rat(-2) / (sq * Rat(n - 1));  // candidate m^2
  if (mm > 0 && is_integer(mm)) {
    Int root = isqrt_floor(num(mm));
    if (root * root == num(mm)) return {MarkmanStatus::Admissible, root};
  }
  if (sq == -2) return {MarkmanStatus::Admissible, std::nullopt};
  return {MarkmanStatus::Inadmissible, std::nullopt};
}

// Class-level filter: additionally checks that the saturation of R realizes
// the predicted rho, i.e. (rho,rho) is -2 or -2(n-1), the latter with rho
// divisible by (n-1) inside the curve lattice.
inline MarkmanResult markman_filter(const HKModel& m, const ClassVector& r) {
  if (m.dtype.kind != DeformKind::HilbK3)
    throw WrongDeformationType("wall-divisor filter applies to HilbK3 models only");
  if (content(r) != 1) throw NotPrimitive("wall-divisor filter expects a primitive ray");
  int n = m.dtype.n;
  MarkmanResult value = markman_admissible(n, square(r));
  if (value.status != MarkmanStatus::Admissible) return value;
  Saturation sat = saturate_to_sublattice(r, m.emb);
  Rat rho_sq = square(sat.rho);
  if (rho_sq == -2 && !value.m) return value;
  if (rho_sq == Rat(-2 * (n - 1)) && value.m) {
    // rho = (n-1) m R must hold on the nose: t = (n-1) m and the image of
    // rho is divisible by (n-1) in the curve lattice.
    if (Rat(sat.t) != Rat(n - 1) * Rat(*value.m)) return {MarkmanStatus::Inadmissible, value.m};
    for (const Rat& c : apply(m.emb, sat.rho).coords)
      if (num(c) % (n - 1) != 0) return {MarkmanStatus::Inadmissible, value.m};
    return value;
  }
  return {MarkmanStatus::Inadmissible, value.m};
}

struct RayReport {
  ClassVector r;
  Rat sq;                    // (R,R)
  Rat degree;                // R.g
  Int t = 1;                 // saturation index
  ClassVector rho;           // saturated class on N^1
  Rat rho_sq;                // (rho,rho) = t^2 (R,R)
  Int divisibility = 0;      // (rho, H^2) or (rho, N^1), see next flag
  bool divisibility_full = false;  // true when the ambient ideal was computable
  std::optional<int> k_bucket;     // absent when (R,R) >= 0
  bool divisorial_ok = false;      // -2 <= (R,R) < 0
  MarkmanResult markman;           // Hilbert models only, on the primitive ray
  std::string geometry_label;
  bool in_conjectural_range = true;  // (R,R) >= -c
  CStatus c_status = CStatus::Proven;
};

inline RayReport classify_ray(const HKModel& m, const ClassVector& r) {
  if (!same_lattice(r.lattice, m.curve_lattice))
    throw LatticeMismatch("classify_ray wants a class on '" + m.curve_lattice->name + "'");
  integer_coords(r);  // NonIntegralClass gate
  if (r.is_zero()) throw ZeroVector("classify_ray on the zero class");

  RayReport rep;
  rep.r = r;
  rep.sq = square(r);
  rep.degree = m.curve_degree(r);
  if (rep.degree == 0) throw ZeroDegree("(R, g) = 0; pick a different positive class g");
  Saturation sat = saturate_to_sublattice(r, m.emb);
  rep.t = sat.t;
  rep.rho = sat.rho;
  rep.rho_sq = square(sat.rho);
  if (m.surface->ambient_unimodular) {
    rep.divisibility = divisibility_ideal(m, sat.rho);
    rep.divisibility_full = true;
  } else {
    rep.divisibility = divisibility_in_span(m, sat.rho);
    rep.divisibility_full = false;
  }
  rep.c_status = m.c.status;
  rep.in_conjectural_range = rep.sq >= -m.c.value;
  rep.divisorial_ok = rep.sq >= -2 && rep.sq < 0;
  if (m.dtype.kind == DeformKind::HilbK3) rep.markman = markman_filter(m, primitive_part(r));

  if (rep.sq < 0) {
    rep.k_bucket = k_bucket_of(rep.sq);
    if (m.dtype.kind == DeformKind::K3Surface) {
      rep.geometry_label = "P^1";
    } else if (!rep.in_conjectural_range) {
      rep.geometry_label = "outside conjectural range";
    } else if (rep.sq == -m.c.value) {
      rep.geometry_label = "Lagrangian P^" + std::to_string(m.dtype.n);
    } else {
      rep.geometry_label = "P^" + std::to_string(*rep.k_bucket) + "-bundle";
    }
  } else {
    rep.geometry_label = "square >= 0";
  }
  return rep;
}

enum class DivisorPosition { InnerCone, OuterGeneratorOnly, OutsideOuter };

struct DivisorPositionResult {
  DivisorPosition position = DivisorPosition::OutsideOuter;
  int big_sign = 0;  // +-1 for InnerCone: which half the class lies in
};

// Places an integral divisor class relative to the two-cone sandwich on N^1:
// positive square lands in the (signed) inner positive cone; otherwise the
// class can only be effective if its primitive part has square >= -2 and it
// pairs positively with g.
inline DivisorPositionResult effective_divisor_position(const HKModel& m, const ClassVector& d) {
  if (!same_lattice(d.lattice, m.div_lattice))
    throw LatticeMismatch("effective_divisor_position wants a class on '" +
                          m.div_lattice->name + "'");
  integer_coords(d);
  if (d.is_zero()) throw ZeroVector("effective_divisor_position on the zero class");
  Rat q = square(d);
  Rat dg = pair(d, m.g);
  if (q > 0) {
    if (dg > 0) return {DivisorPosition::InnerCone, 1};
    if (dg < 0) return {DivisorPosition::InnerCone, -1};
    return {DivisorPosition::OutsideOuter, 0};  // impossible in signature (1,k)
  }
  Rat qp = square(primitive_part(d));
  if (qp < -2) return {DivisorPosition::OutsideOuter, 0};
  if (dg > 0) return {DivisorPosition::OuterGeneratorOnly, 0};
  return {DivisorPosition::OutsideOuter, 0};
}

namespace detail {

// Solve <u, x> = d over the integers: returns a particular solution when
// gcd(u) | d. Helper for the degree slices below.
inline std::optional<std::vector<Int>> dot_solution(const std::vector<Int>& u, const Int& d) {
  std::size_t n = u.size();
  // Iterated extended gcd: w with <u, w> = gcd(u).
  Int g = 0;
  std::vector<Int> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0) continue;
    if (g == 0) {
      g = abs(u[i]);
      w.assign(n, Int(0));
      w[i] = u[i] > 0 ? 1 : -1;
      continue;
    }
    // g_new = a*g + b*u[i]
    Int old_r = g, r = abs(u[i]);
    Int old_a = 1, a = 0;
    while (r != 0) {
      Int q = old_r / r;
      Int tmp = old_r - q * r;
      old_r = r;
      r = tmp;
      tmp = old_a - q * a;
      old_a = a;
      a = tmp;
    }
    Int b = (old_r - old_a * g) / abs(u[i]);
    for (Int& x : w) x *= old_a;
    w[i] += u[i] > 0 ? b : -b;
    g = old_r;
  }
  if (g == 0) return d == 0 ? std::optional<std::vector<Int>>(w) : std::nullopt;
  if (d % g != 0) return std::nullopt;
  Int f = d / g;
  for (Int& x : w) x *= f;
  return w;
}

struct SliceGeometry {
  std::vector<Int> u;                    // degree functional on curve coords
  std::vector<std::vector<Int>> kernel;  // saturated basis of u-perp
  RatMatrix p;                           // -K^T G K, positive definite
  RatMatrix chol;                        // rational_cholesky(p)
  RatMatrix pinv_cols;                   // columns: P^{-1} applied to K^T G (for centers)
};

inline SliceGeometry slice_geometry(const HKModel& m) {
  SliceGeometry s;
  ClassVector gc = m.g_curve();
  const RatMatrix& g = m.curve_lattice->gram;
  std::size_t n = m.curve_lattice->rank();
  std::vector<Rat> ur = g * gc.coords;  // u_i = (g, e_i), the degree functional
  s.u.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_integer(ur[i]))
      throw Error("degree functional is not integral on '" + m.curve_lattice->name + "'");
    s.u[i] = num(ur[i]);
  }
  IntMatrix urow(1, n);
  for (std::size_t i = 0; i < n; ++i) urow.at(0, i) = s.u[i];
  s.kernel = kernel_basis(urow);
  std::size_t k = s.kernel.size();
  s.p = RatMatrix(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      Rat acc = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          acc += Rat(s.kernel[a][i]) * g.at(i, j) * Rat(s.kernel[b][j]);
      s.p.at(a, b) = -acc;
    }
  try {
    s.chol = rational_cholesky(s.p);
  } catch (const NotPositiveDefinite& e) {
    throw IndefinitePerp(std::string("perpendicular of g on '") + m.curve_lattice->name +
                         "' is not negative definite (" + e.what() + ")");
  }
  return s;
}

}  // namespace detail

// All integral classes R on the curve lattice with 0 < R.g <= max_degree and
// floor <= (R,R), optionally restricted to (R,R) < 0. Exact and complete:
// each degree slice is a shifted negative definite form, enumerated as an
// ellipsoid. Output sorted by (degree, coordinates).
inline std::vector<ClassVector> enumerate_bounded_classes(const HKModel& m, const Int& max_degree,
                                                          const Rat& floor, bool negative_only) {
  if (max_degree < 1) throw Error("enumerate_bounded_classes: max_degree must be >= 1");
  detail::SliceGeometry geo = detail::slice_geometry(m);
  const RatMatrix& g = m.curve_lattice->gram;
  std::size_t n = m.curve_lattice->rank();
  std::size_t k = geo.kernel.size();
  std::vector<ClassVector> out;
  for (Int d = 1; d <= max_degree; ++d) {
    auto x0 = detail::dot_solution(geo.u, d);
    if (!x0) continue;
    std::vector<Rat> x0r(x0->begin(), x0->end());
    // (R,R) on the slice x0 + K z: c0 + 2 v.z - z^T P z with v = K^T G x0.
    std::vector<Rat> gx0 = g * x0r;
    Rat c0 = 0;
    for (std::size_t i = 0; i < n; ++i) c0 += x0r[i] * gx0[i];
    std::vector<Rat> v(k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t i = 0; i < n; ++i) v[a] += Rat(geo.kernel[a][i]) * gx0[i];
    std::vector<Rat> center(k);
    if (k > 0) {
      auto sol = solve_linear(geo.p, v);
      if (!sol) throw Error("enumerate_bounded_classes: singular slice form");
      center = *sol;
    }
    Rat vc = 0;
    for (std::size_t a = 0; a < k; ++a) vc += v[a] * center[a];
    Rat bound = c0 - floor + vc;  // (z - c)^T P (z - c) <= bound
    for (const auto& z : enumerate_quadratic_region(geo.chol, center, bound)) {
      std::vector<Rat> coords(x0r);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t i = 0; i < n; ++i) coords[i] += Rat(z[a]) * Rat(geo.kernel[a][i]);
      ClassVector r = m.curve_class(std::move(coords));
      Rat q = square(r);
      if (q < floor) continue;  // ellipsoid boundary is exact; belt and braces
      if (negative_only && q >= 0) continue;
      out.push_back(std::move(r));
    }
  }
  std::sort(out.begin(), out.end(), [&m](const ClassVector& a, const ClassVector& b) {
    Rat da = m.curve_degree(a), db = m.curve_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(),
                                        b.coords.end());
  });
  return out;
}

// Ray candidates: negative-square classes of bounded degree, each classified.
// floor defaults to -c, the conjectural lower bound for the model.
inline std::vector<RayReport> enumerate_ray_candidates(const HKModel& m, const Int& max_degree,
                                                       std::optional<Rat> floor = std::nullopt) {
  Rat f = floor ? *floor : -m.c.value;
  std::vector<RayReport> reps;
  for (const ClassVector& r : enumerate_bounded_classes(m, max_degree, f, true))
    reps.push_back(classify_ray(m, r));
  return reps;
}

// Generator set of the bounded cone test: every integral class with
// (R,R) >= -c and 0 < R.g <= max_degree, squares >= 0 included.
inline std::vector<ClassVector> enumerate_cone_generators(const HKModel& m,
                                                          const Int& max_degree) {
  return enumerate_bounded_classes(m, max_degree, -m.c.value, false);
}

struct AmpleResult {
  enum class Kind { CertifiedUpTo, Fails, NotBig } kind = Kind::NotBig;
  Int max_degree;
  // For Fails: the offending candidate, fully classified.
  std::optional<RayReport> violating;
  CStatus c_status = CStatus::Proven;
};

// Certify h.R > 0 against every enumerated candidate of degree <= max_degree.
// A pass is only a certificate up to the bound (and conditional on the cone
// conjecture); a failure pins the violating class but does not prove h
// non-ample for Hilbert-type models, since the candidate list is conjectural.
inline AmpleResult ample_certify(const HKModel& m, const ClassVector& h, const Int& max_degree) {
  if (!same_lattice(h.lattice, m.div_lattice))
    throw LatticeMismatch("ample_certify wants a divisor class on '" + m.div_lattice->name + "'");
  integer_coords(h);
  AmpleResult res;
  res.max_degree = max_degree;
  res.c_status = m.c.status;
  if (h.is_zero() || square(h) <= 0 || pair(h, m.g) <= 0) {
    res.kind = AmpleResult::Kind::NotBig;
    return res;
  }
  ClassVector hc = apply(m.emb, h);
  for (const ClassVector& r : enumerate_cone_generators(m, max_degree)) {
    if (pair(hc, r) <= 0) {
      res.kind = AmpleResult::Kind::Fails;
      res.violating = classify_ray(m, r);
      return res;
    }
  }
  res.kind = AmpleResult::Kind::CertifiedUpTo;
  return res;
}

enum class MembershipStatus { Generator, InsideByCombination, OutsideCertifiedUpTo, Unknown };

struct ConeVerdict {
  MembershipStatus status = MembershipStatus::Unknown;
  CStatus c_status = CStatus::Proven;
  Int degree_bound;
  // InsideByCombination: positive rationals and generators recombining to C.
  std::vector<std::pair<Rat, ClassVector>> certificate;
  // OutsideCertifiedUpTo: coordinate functional y with <y, gen> >= 0 for all
  // enumerated generators and <y, C> < 0.
  std::vector<Rat> separating_functional;
};

struct MembershipStats {
  int feasibility_calls = 0;
};

// Bounded membership of an integral curve class in the cone spanned by the
// enumerated generators. Generator recognition and positive multiples are
// decided arithmetically without the feasibility backend.
inline ConeVerdict cone_membership(const HKModel& m, const ClassVector& c, const Int& max_degree,
                                   MembershipStats* stats = nullptr) {
  if (!same_lattice(c.lattice, m.curve_lattice))
    throw LatticeMismatch("cone_membership wants a curve class on '" + m.curve_lattice->name +
                          "'");
  integer_coords(c);
  ConeVerdict verdict;
  verdict.c_status = m.c.status;
  verdict.degree_bound = max_degree;
  if (c.is_zero()) {  // apex: the empty combination
    verdict.status = MembershipStatus::InsideByCombination;
    return verdict;
  }
  // Fast paths against the generator predicate itself: C (or its primitive
  // part) would literally appear in the enumerated set.
  Rat q = square(c), deg = m.curve_degree(c);
  if (q >= -m.c.value && deg > 0 && deg <= Rat(max_degree)) {
    verdict.status = MembershipStatus::Generator;
    return verdict;
  }
  ClassVector c0 = primitive_part(c);
  Rat deg0 = m.curve_degree(c0);
  if (square(c0) >= -m.c.value && deg0 > 0 && deg0 <= Rat(max_degree)) {
    verdict.status = MembershipStatus::InsideByCombination;
    verdict.certificate.emplace_back(Rat(content(c)), c0);
    return verdict;
  }

  std::vector<ClassVector> gens = enumerate_cone_generators(m, max_degree);
  std::vector<std::vector<Rat>> rows;
  rows.reserve(gens.size());
  for (const ClassVector& g : gens) rows.push_back(g.coords);
  if (stats) ++stats->feasibility_calls;
  FeasibilityResult fr = rational_feasibility(rows, c.coords);
  if (fr.feasible) {
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (fr.coefficients[j] != 0) verdict.certificate.emplace_back(fr.coefficients[j], gens[j]);
    // Exact recombination was already verified inside rational_feasibility.
    verdict.status = MembershipStatus::InsideByCombination;
    return verdict;
  }
  verdict.separating_functional = fr.farkas;
  verdict.status = MembershipStatus::OutsideCertifiedUpTo;
  return verdict;
}

}  // namespace hkcone
