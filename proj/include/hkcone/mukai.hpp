#pragma once

// Even-degree cohomology of a K3 surface as an extended lattice: vectors
// (r, D, s) with pairing <(r1,D1,s1),(r2,D2,s2)> = D1.D2 - r1 s2 - r2 s1.
// Moduli spaces of sheaves with primitive vector v have dimension <v,v> + 2,
// and for isotropic v the period of the two-dimensional moduli space is the
// quotient v-perp / Z v computed here.

#include "hkcone/errors.hpp"
#include "hkcone/exact_linalg.hpp"
#include "hkcone/hk_model.hpp"
#include "hkcone/lattice.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hkcone {

struct MukaiVector {
  LatticePtr surface;    // Picard block of the surface, integral Gram
  Int r;                 // rank
  std::vector<Int> c1;   // first Chern class, coordinates on surface
  Int s;                 // degree-4 component

  std::size_t total_rank() const { return surface->rank() + 2; }
  std::vector<Int> total_coords() const {
    std::vector<Int> c;
    c.reserve(total_rank());
    c.push_back(r);
    c.insert(c.end(), c1.begin(), c1.end());
    c.push_back(s);
    return c;
  }
};

inline MukaiVector make_mukai_vector(LatticePtr surface, Int r, std::vector<Int> c1, Int s) {
  if (!surface) throw Error("make_mukai_vector: null lattice");
  if (!is_integral(surface->gram)) throw Error("make_mukai_vector: surface Gram must be integral");
  if (c1.size() != surface->rank())
    throw BadRank("Mukai vector: c1 has " + std::to_string(c1.size()) +
                  " coordinates on a rank-" + std::to_string(surface->rank()) + " block");
  return MukaiVector{std::move(surface), std::move(r), std::move(c1), std::move(s)};
}

inline Int mukai_pair(const MukaiVector& v, const MukaiVector& w) {
  if (!same_lattice(v.surface, w.surface))
    throw LatticeMismatch("Mukai pairing over '" + v.surface->name + "' and '" +
                          w.surface->name + "'");
  Rat dd = 0;
  const RatMatrix& g = v.surface->gram;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) dd += Rat(v.c1[i]) * g.at(i, j) * Rat(w.c1[j]);
  return to_int(dd) - v.r * w.s - w.r * v.s;
}

inline Int mukai_square(const MukaiVector& v) { return mukai_pair(v, v); }

// v(E) = (r, c1, c1^2/2 - c2 + r) for a sheaf with the given Chern data.
// Requires an even Picard block so that c1^2/2 is integral.
inline MukaiVector mukai_vector_from_chern(LatticePtr surface, Int r, std::vector<Int> c1,
                                           Int c2) {
  MukaiVector v = make_mukai_vector(std::move(surface), std::move(r), std::move(c1), Int(0));
  Rat c1sq = 0;
  const RatMatrix& g = v.surface->gram;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) c1sq += Rat(v.c1[i]) * g.at(i, j) * Rat(v.c1[j]);
  Int c1sq_int = to_int(c1sq);
  if (c1sq_int % 2 != 0) throw NotEven("c1^2 = " + c1sq_int.str() + " is odd");
  v.s = c1sq_int / 2 - c2 + v.r;
  return v;
}

// chi(E) = r + s on a K3 surface; chi(E, F) = -<v(E), v(F)>.
inline Int euler_characteristic(const MukaiVector& v) { return v.r + v.s; }
inline Int euler_pairing(const MukaiVector& v, const MukaiVector& w) { return -mukai_pair(v, w); }

// Expected dimension <v,v> + 2 of the moduli space of stable sheaves.
inline Int moduli_dimension(const MukaiVector& v) { return mukai_square(v) + 2; }

// gcd(r, s, d) = 1: the usual sufficient condition (with d the degree of the
// chosen polarization) for the moduli space of the isotropic vector to be a
// fine compact moduli space.
inline bool fine_compact_moduli_gcd(const MukaiVector& v, const Int& d) {
  return gcd(gcd(abs(v.r), abs(v.s)), abs(d)) == 1;
}

// Gram matrix of v-perp / Z v for a primitive isotropic v: the period lattice
// of the two-dimensional moduli space. Basis-choice independent up to
// isometry; this implementation is deterministic.
inline LatticePtr period_lattice(const MukaiVector& v) {
  std::vector<Int> coords = v.total_coords();
  if (gcd_all(coords) != 1) throw NotPrimitive("period lattice needs a primitive Mukai vector");
  if (mukai_square(v) != 0)
    throw NotIsotropic("<v,v> = " + mukai_square(v).str() + ", expected 0");
  std::size_t n = v.total_rank();
  std::size_t sr = v.surface->rank();
  RatMatrix g(n, n);
  g.at(0, n - 1) = -1;
  g.at(n - 1, 0) = -1;
  for (std::size_t i = 0; i < sr; ++i)
    for (std::size_t j = 0; j < sr; ++j) g.at(1 + i, 1 + j) = v.surface->gram.at(i, j);

  // Saturated kernel of x -> <v, x> contains v; rewrite it in a basis whose
  // first vector is v, then read off the quotient form from the rest.
  IntMatrix vrow(1, n);
  {
    std::vector<Rat> vr(coords.begin(), coords.end());
    std::vector<Rat> gv = g * vr;
    for (std::size_t j = 0; j < n; ++j) vrow.at(0, j) = to_int(gv[j]);
  }
  std::vector<std::vector<Int>> perp = kernel_basis(vrow);
  std::size_t m = perp.size();
  if (m == 0) throw Error("period_lattice: empty perpendicular lattice");
  RatMatrix basis(n, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) basis.at(i, j) = Rat(perp[j][i]);
  std::vector<Rat> rhs(coords.begin(), coords.end());
  auto a = solve_linear(basis, rhs);
  if (!a) throw Error("period_lattice: v not in its own perpendicular");
  std::vector<Int> avec(m);
  for (std::size_t i = 0; i < m; ++i) avec[i] = to_int((*a)[i]);  // exact: perp is saturated
  IntMatrix w = complete_to_unimodular(avec);
  // New basis vectors of v-perp: rows of w in perp coordinates; row 0 is v.
  std::vector<std::vector<Rat>> nb(m, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < n; ++l) nb[i][l] += Rat(w.at(i, j)) * Rat(perp[j][l]);
  RatMatrix q(m - 1, m - 1);
  for (std::size_t i = 1; i < m; ++i)
    for (std::size_t j = 1; j < m; ++j) {
      Rat s = 0;
      for (std::size_t a1 = 0; a1 < n; ++a1)
        for (std::size_t b1 = 0; b1 < n; ++b1) s += nb[i][a1] * g.at(a1, b1) * nb[j][b1];
      q.at(i - 1, j - 1) = s;
    }
  std::vector<std::string> labels(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) labels[i] = "q" + std::to_string(i);
  return make_lattice("period(" + v.surface->name + ")", std::move(labels), std::move(q), false);
}

// Self-check fixture for the rank-r spherical twist family over degree
// 2(r^2+r) surfaces: v_r = (r, f, r+1) is primitive isotropic, the twisted
// exceptional divisor 2f - (2r+1) delta on the associated Hilbert square has
// square -2 and divisibility 2, and the period of v_r recovers the surface.
struct FmFixtureRow {
  int r;
  bool isotropic = false;
  bool primitive = false;
  bool exceptional_square_ok = false;   // (delta', delta') == -2
  bool exceptional_divisibility_ok = false;  // (delta', H^2) == 2Z
  bool period_degree_ok = false;        // period Gram == [2(r^2+r)]
  bool ok() const {
    return isotropic && primitive && exceptional_square_ok && exceptional_divisibility_ok &&
           period_degree_ok;
  }
};

struct FmFixtureReport {
  std::vector<FmFixtureRow> rows;
  bool all_ok() const {
    for (const auto& r : rows)
      if (!r.ok()) return false;
    return true;
  }
};

inline FmFixtureReport fm_fixture_check(int r_max = 10) {
  FmFixtureReport rep;
  for (int r = 1; r <= r_max; ++r) {
    FmFixtureRow row;
    row.r = r;
    Int deg = Int(2) * r * (r + 1);
    RatMatrix sg(1, 1);
    sg.at(0, 0) = Rat(deg);
    LatticePtr surf = make_lattice("S" + deg.str(), {"f"}, sg, true);
    MukaiVector v = make_mukai_vector(surf, Int(r), {Int(1)}, Int(r + 1));
    row.isotropic = mukai_square(v) == 0;
    row.primitive = gcd_all(v.total_coords()) == 1;
    HKModel m = build_model(hilb_type(2), sg, {"f"}, {Int(1)}, true);
    ClassVector dp = m.div_class({Rat(2), Rat(-(2 * r + 1))});
    row.exceptional_square_ok = square(dp) == -2;
    row.exceptional_divisibility_ok = divisibility_ideal(m, dp) == 2;
    LatticePtr per = period_lattice(v);
    row.period_degree_ok = per->rank() == 1 && per->gram.at(0, 0) == Rat(deg);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace hkcone
