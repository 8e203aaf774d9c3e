#pragma once

// Built-in reference suites: a ledger of worked invariants (ray squares,
// saturations, divisibilities, Mukai-side dimensions and periods) recomputed
// from scratch on every run and compared exactly. The `tables` suite covers
// the standard negative-square witness classes on low-rank models; the
// `examples` suite covers worked geometric scenarios end to end.

#include "hkcone/hk_model.hpp"
#include "hkcone/lattice.hpp"
#include "hkcone/mukai.hpp"
#include "hkcone/ray_analysis.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hkcone {

struct FixtureCheck {
  std::string name;
  std::string computed;
  std::string expected;
  bool ok = false;
};

struct FixtureResult {
  std::string id;
  std::string title;
  CStatus c_status = CStatus::Proven;
  std::vector<FixtureCheck> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

struct VerificationReport {
  std::vector<FixtureResult> fixtures;

  bool all_pass() const {
    for (const auto& f : fixtures)
      if (!f.pass()) return false;
    return true;
  }
  std::size_t fail_count() const {
    std::size_t n = 0;
    for (const auto& f : fixtures)
      if (!f.pass()) ++n;
    return n;
  }
};

namespace verify_detail {

class Recorder {
 public:
  Recorder(std::string id, std::string title, CStatus status) {
    res_.id = std::move(id);
    res_.title = std::move(title);
    res_.c_status = status;
  }

  void eq(const std::string& name, const Rat& got, const Rat& want) {
    res_.checks.push_back({name, rat_str(got), rat_str(want), got == want});
  }
  void eq(const std::string& name, const Int& got, const Int& want) {
    res_.checks.push_back({name, got.str(), want.str(), got == want});
  }
  void eq(const std::string& name, int got, int want) {
    eq(name, Int(got), Int(want));
  }
  void eq(const std::string& name, const std::string& got, const std::string& want) {
    res_.checks.push_back({name, got, want, got == want});
  }
  void is_true(const std::string& name, bool got) {
    res_.checks.push_back({name, got ? "true" : "false", "true", got});
  }

  FixtureResult take() { return std::move(res_); }

 private:
  FixtureResult res_;
};

// Standard witness models. The distinguished class g is part of the fixture:
// it only has to be a positive class giving every witness a nonzero degree,
// and each fixture records (g,g) > 0 as its own check.

inline HKModel hilb_rank1(int n, int f2, std::vector<Int> g) {
  RatMatrix s(1, 1);
  s.at(0, 0) = f2;
  return build_model(hilb_type(n), s, {"f"}, std::move(g), true);
}

inline HKModel hilb_rank2(int n, int f2, std::vector<Int> g) {
  RatMatrix s(2, 2);
  s.at(0, 0) = f2;
  s.at(1, 1) = -2;
  return build_model(hilb_type(n), s, {"f", "E"}, std::move(g), true);
}

inline HKModel kummer_jacobian(int n, int theta2, std::vector<Int> g) {
  RatMatrix s(1, 1);
  s.at(0, 0) = theta2;
  return build_model(kummer_type(n), s, {"Theta"}, std::move(g), true);
}

inline HKModel kummer_product(int n, std::vector<Int> g) {
  RatMatrix s(2, 2);
  s.at(0, 1) = 1;
  s.at(1, 0) = 1;
  return build_model(kummer_type(n), s, {"E1", "E2"}, std::move(g), true);
}

inline HKModel k3_rank2(int f2, std::vector<Int> g) {
  RatMatrix s(2, 2);
  s.at(0, 0) = f2;
  s.at(1, 1) = -2;
  return build_model(k3_type(), s, {"f", "E"}, std::move(g), true);
}

// The common body of a table row: classify the witness and compare the
// invariants that the row prints.
struct RowExpect {
  Rat sq;
  Int t;
  Rat rho_sq;
  int k = 0;                 // 0: skip the bucket check (K3 rows)
  std::string label;         // empty: skip
  Int divisibility = 0;      // 0: skip
};

inline FixtureResult table_row(const std::string& id, const std::string& title, const HKModel& m,
                               const std::vector<Rat>& r_coords, const RowExpect& e) {
  Recorder rec(id, title, m.c.status);
  rec.is_true("(g,g) > 0", square(m.g) > 0);
  RayReport rep = classify_ray(m, m.curve_class(r_coords));
  rec.eq("(R,R)", rep.sq, e.sq);
  rec.eq("t", rep.t, e.t);
  rec.eq("(rho,rho)", rep.rho_sq, e.rho_sq);
  rec.eq("t^2 (R,R)", Rat(e.t) * Rat(e.t) * rep.sq, rep.rho_sq);
  if (e.k != 0) rec.eq("k", *rep.k_bucket, e.k);
  if (!e.label.empty()) rec.eq("geometry", rep.geometry_label, e.label);
  if (e.divisibility != 0) rec.eq("(rho,H^2)", rep.divisibility, e.divisibility);
  return rec.take();
}

}  // namespace verify_detail

inline VerificationReport run_table_suite() {
  using namespace verify_detail;
  VerificationReport rep;
  auto& out = rep.fixtures;

  {
    HKModel m = k3_rank2(4, {Int(1), Int(1)});
    RowExpect e;
    e.sq = -2;
    e.t = 1;
    e.rho_sq = -2;
    e.label = "P^1";
    out.push_back(table_row("k3.minus2", "(-2)-curve class on a K3 surface", m,
                            {Rat(0), Rat(1)}, e));
  }

  {
    HKModel m = hilb_rank2(2, 8, {Int(1), Int(1), Int(-1)});
    out.push_back(table_row("hilb2.dual", "half-diagonal dual on a Hilbert square", m,
                            {Rat(0), Rat(0), Rat(1)},
                            {Rat(-1, 2), Int(2), Rat(-2), 1, "P^1-bundle", Int(2)}));
    out.push_back(table_row("hilb2.minus2", "(-2)-class on a Hilbert square", m,
                            {Rat(0), Rat(1), Rat(0)},
                            {Rat(-2), Int(1), Rat(-2), 1, "P^1-bundle", Int(0)}));
    out.push_back(table_row("hilb2.lagrangian", "Lagrangian plane line on a Hilbert square", m,
                            {Rat(0), Rat(1), Rat(-1)},
                            {Rat(-5, 2), Int(2), Rat(-10), 2, "Lagrangian P^2", Int(0)}));
  }

  {
    HKModel m = hilb_rank2(3, 4, {Int(2), Int(1), Int(-1)});
    out.push_back(table_row("hilb3.dual", "half-diagonal dual, three points", m,
                            {Rat(0), Rat(0), Rat(1)},
                            {Rat(-1, 4), Int(4), Rat(-4), 1, "P^1-bundle", Int(4)}));
    out.push_back(table_row("hilb3.minus2", "(-2)-class, three points", m,
                            {Rat(0), Rat(1), Rat(0)}, {Rat(-2), Int(1), Rat(-2), 1, "P^1-bundle"}));
    out.push_back(table_row("hilb3.sat4", "index-4 saturation, three points", m,
                            {Rat(1), Rat(0), Rat(-5)},
                            {Rat(-9, 4), Int(4), Rat(-36), 2, "P^2-bundle"}));
    out.push_back(table_row("hilb3.lagrangian", "Lagrangian P^3 line", m,
                            {Rat(0), Rat(1), Rat(-2)},
                            {Rat(-3), Int(2), Rat(-12), 3, "Lagrangian P^3"}));
  }

  {
    HKModel m16 = hilb_rank1(4, 16, {Int(1), Int(-1)});
    out.push_back(table_row("hilb4.dual", "half-diagonal dual, four points", m16,
                            {Rat(0), Rat(1)}, {Rat(-1, 6), Int(6), Rat(-6), 1, "P^1-bundle",
                            Int(6)}));
    out.push_back(table_row("hilb4.isog", "degree-16 isogeny ray", m16, {Rat(1), Rat(-10)},
                            {Rat(-2, 3), Int(3), Rat(-6), 1, "P^1-bundle"}));
    HKModel m6 = hilb_rank2(4, 6, {Int(2), Int(1), Int(-1)});
    out.push_back(table_row("hilb4.minus2", "(-2)-class, four points", m6,
                            {Rat(0), Rat(1), Rat(0)}, {Rat(-2), Int(1), Rat(-2), 1, "P^1-bundle"}));
    out.push_back(table_row("hilb4.sat6", "index-6 saturation, four points", m6,
                            {Rat(1), Rat(0), Rat(-7)},
                            {Rat(-13, 6), Int(6), Rat(-78), 2, "P^2-bundle"}));
    HKModel m8 = hilb_rank1(4, 8, {Int(2), Int(-1)});
    out.push_back(table_row("hilb4.sat3", "index-3 saturation, four points", m8,
                            {Rat(1), Rat(-8)}, {Rat(-8, 3), Int(3), Rat(-24), 3, "P^3-bundle"}));
    HKModel m10 = hilb_rank1(4, 10, {Int(1), Int(-1)});
    out.push_back(table_row("hilb4.lagrangian", "Lagrangian P^4 line", m10, {Rat(1), Rat(-9)},
                            {Rat(-7, 2), Int(2), Rat(-14), 4, "Lagrangian P^4"}));
  }

  {
    HKModel mp = kummer_product(2, {Int(4), Int(1), Int(-1)});
    out.push_back(table_row("kum2.dual", "exceptional dual on a Kummer fourfold", mp,
                            {Rat(0), Rat(0), Rat(1)},
                            {Rat(-1, 6), Int(6), Rat(-6), 1, "P^1-bundle", Int(6)}));
    HKModel mj = kummer_jacobian(2, 2, {Int(3), Int(-1)});
    out.push_back(table_row("kum2.isog", "Jacobian isogeny ray on a Kummer fourfold", mj,
                            {Rat(1), Rat(-4)},
                            {Rat(-2, 3), Int(3), Rat(-6), 1, "P^1-bundle", Int(3)}));
    out.push_back(table_row("kum2.lagrangian", "Lagrangian plane on a Kummer fourfold", mp,
                            {Rat(1), Rat(0), Rat(-3)},
                            {Rat(-3, 2), Int(2), Rat(-6), 1, "Lagrangian P^2"}));
  }

  for (int n = 2; n <= 10; ++n) {
    std::string nn = std::to_string(n);
    HKModel mp = kummer_product(n, {Int(n + 2), Int(1), Int(-1)});
    out.push_back(table_row("kumN.dual@" + nn, "exceptional dual, Kummer n=" + nn, mp,
                            {Rat(0), Rat(0), Rat(1)},
                            {Rat(-1, 2 * (n + 1)), Int(2 * (n + 1)), Rat(-2 * (n + 1)), 1,
                             "P^1-bundle", Int(2 * (n + 1))}));
    HKModel mj = kummer_jacobian(n, 2 * n - 2, {Int(3), Int(-1)});
    out.push_back(table_row("kumN.isog@" + nn, "Jacobian family ray, Kummer n=" + nn, mj,
                            {Rat(1), Rat(-2 * n)},
                            {Rat(-2, n + 1), Int(n + 1), Rat(-2 * (n + 1)), 1, "P^1-bundle"}));
    out.push_back(table_row("kumN.lagrangian@" + nn, "Lagrangian P^n line, Kummer n=" + nn, mp,
                            {Rat(1), Rat(0), Rat(-(n + 1))},
                            {Rat(-(n + 1), 2), Int(2), Rat(-2 * (n + 1)),
                             n == 2 ? 1 : n - 2, "Lagrangian P^" + nn}));
  }

  return rep;
}

inline VerificationReport run_example_suite() {
  using namespace verify_detail;
  VerificationReport rep;
  auto& out = rep.fixtures;

  // Squares and pairings of the half-diagonal and its dual across n.
  for (int n = 2; n <= 6; ++n) {
    HKModel m = hilb_rank1(n, 2, {Int(n), Int(-1)});
    Recorder rec("hilb.halfdiagonal@" + std::to_string(n),
                 "half-diagonal pairings, n = " + std::to_string(n), m.c.status);
    ClassVector dv = m.curve_class({Rat(0), Rat(1)});
    rec.eq("(deltav,deltav)", square(dv), Rat(-1, 2 * (n - 1)));
    rec.eq("(delta,delta)", square(m.div_class({Rat(0), Rat(1)})), Rat(-2 * (n - 1)));
    rec.eq("delta.deltav", pair(apply(m.emb, m.div_class({Rat(0), Rat(1)})), dv), Rat(-1));
    rec.eq("Diag.deltav", pair(apply(m.emb, m.div_class({Rat(0), Rat(2)})), dv), Rat(-2));
    out.push_back(rec.take());
  }

  // Spherical-twist family: primitive isotropic vectors whose twisted
  // exceptional divisor keeps square -2 and divisibility 2, with the
  // original surface recovered as the period of the moduli space.
  {
    FmFixtureReport fm = fm_fixture_check(10);
    for (const auto& row : fm.rows) {
      Recorder rec("fm.spherical@" + std::to_string(row.r),
                   "spherical-twist family, r = " + std::to_string(row.r), CStatus::Proven);
      rec.is_true("isotropic", row.isotropic);
      rec.is_true("primitive", row.primitive);
      rec.is_true("(delta',delta') = -2", row.exceptional_square_ok);
      rec.is_true("(delta',H^2) = 2Z", row.exceptional_divisibility_ok);
      rec.is_true("period degree", row.period_degree_ok);
      out.push_back(rec.take());
    }
  }

  // Degree-16 fourfold: a square -2/3 ray inducing a degree-4 isogeny-like
  // correspondence, with the Mukai side isotropic of the right period.
  {
    HKModel m = hilb_rank1(4, 16, {Int(1), Int(-1)});
    Recorder rec("hilb4.degree16.isogeny", "degree-16 ray and its moduli side", m.c.status);
    ClassVector r = m.curve_class({Rat(1), Rat(-10)});
    RayReport rr = classify_ray(m, r);
    rec.eq("(R,R)", rr.sq, Rat(-2, 3));
    rec.is_true("divisorial range", rr.divisorial_ok);
    rec.eq("R.f", pair(apply(m.emb, m.div_class({Rat(1), Rat(0)})), r), Rat(16));
    rec.eq("R.delta", pair(apply(m.emb, m.div_class({Rat(0), Rat(1)})), r), Rat(10));
    rec.eq("t", rr.t, Int(3));
    rec.eq("(rho,rho)", rr.rho_sq, Rat(-6));
    rec.eq("correspondence degree", Rat(16) - Rat(10) - Rat(2), Rat(4));
    RatMatrix sg(1, 1);
    sg.at(0, 0) = 16;
    LatticePtr surf = make_lattice("S16", {"f"}, sg, true);
    MukaiVector v = mukai_vector_from_chern(surf, Int(2), {Int(1)}, Int(6));
    rec.eq("chi", euler_characteristic(v), Int(6));
    rec.eq("<v,v>", mukai_square(v), Int(0));
    LatticePtr per = period_lattice(v);
    rec.eq("period degree", per->gram.at(0, 0), Rat(4));
    out.push_back(rec.take());
  }

  // Degree-6 surface: rank-2 bundles with chi = 3 and a fine compact
  // four-dimensional moduli space.
  {
    RatMatrix sg(1, 1);
    sg.at(0, 0) = 6;
    LatticePtr surf = make_lattice("S6", {"f"}, sg, true);
    MukaiVector v = mukai_vector_from_chern(surf, Int(2), {Int(1)}, Int(4));
    Recorder rec("mukai.degree6.chi3", "rank-2 bundles on a degree-6 surface", CStatus::Proven);
    rec.eq("s", v.s, Int(1));
    rec.eq("chi", euler_characteristic(v), Int(3));
    rec.eq("dim", moduli_dimension(v), Int(4));
    rec.is_true("gcd(r,s,d) = 1", fine_compact_moduli_gcd(v, Int(6)));
    out.push_back(rec.take());
  }

  // The three standard moduli families: dimensions 4, 0 and 2n.
  for (int n = 3; n <= 10; ++n) {
    Recorder rec("mukai.families@" + std::to_string(n),
                 "moduli dimensions, n = " + std::to_string(n), CStatus::Proven);
    RatMatrix a(1, 1), b(1, 1), c(1, 1);
    a.at(0, 0) = 4 * n - 10;
    b.at(0, 0) = 4 * n - 6;
    c.at(0, 0) = 2 * n - 2;
    MukaiVector va = make_mukai_vector(make_lattice("A", {"f"}, a, true), Int(2), {Int(1)},
                                       Int(n - 3));
    MukaiVector vb = make_mukai_vector(make_lattice("B", {"f"}, b, true), Int(2), {Int(1)},
                                       Int(n - 1));
    MukaiVector vc = make_mukai_vector(make_lattice("C", {"f"}, c, true), Int(1), {Int(0)},
                                       Int(1 - n));
    rec.eq("dim (2,f,n-3)", moduli_dimension(va), Int(4));
    rec.eq("dim (2,f,n-1)", moduli_dimension(vb), Int(0));
    rec.eq("dim ideal sheaves", moduli_dimension(vc), Int(2 * n));
    out.push_back(rec.take());
  }

  // Exceptional curve over a (-2)-class: the Lagrangian line built from a
  // contracted curve and the half diagonal.
  for (int n = 2; n <= 6; ++n) {
    HKModel m = hilb_rank2(n, 4, {Int(2), Int(1), Int(-1)});
    Recorder rec("hilb.blowup.lagrangian@" + std::to_string(n),
                 "Lagrangian line over a (-2)-curve, n = " + std::to_string(n), m.c.status);
    ClassVector l = m.curve_class({Rat(0), Rat(1), Rat(-(n - 1))});
    RayReport rr = classify_ray(m, l);
    rec.eq("(l,l)", rr.sq, Rat(-(n + 3), 2));
    rec.eq("Diag.l", pair(apply(m.emb, m.div_class({Rat(0), Rat(0), Rat(2)})), l),
           Rat(2 * (n - 1)));
    rec.eq("l.E", pair(apply(m.emb, m.div_class({Rat(0), Rat(1), Rat(0)})), l), Rat(-2));
    rec.eq("t", rr.t, Int(2));
    rec.eq("(rho,rho)", rr.rho_sq, Rat(-8 - 2 * (n - 1)));
    rec.eq("geometry", rr.geometry_label, "Lagrangian P^" + std::to_string(n));
    out.push_back(rec.take());
  }

  // Degree-10 Hilbert square: the classical Lagrangian plane.
  {
    HKModel m = hilb_rank1(2, 10, {Int(1), Int(-1)});
    Recorder rec("hilb2.degree10.plane", "Lagrangian plane on the degree-10 Hilbert square",
                 m.c.status);
    RayReport rr = classify_ray(m, m.curve_class({Rat(1), Rat(-5)}));
    rec.eq("(R,R)", rr.sq, Rat(-5, 2));
    rec.eq("t", rr.t, Int(2));
    rec.eq("(rho,rho)", rr.rho_sq, Rat(-10));
    rec.eq("geometry", rr.geometry_label, "Lagrangian P^2");
    out.push_back(rec.take());
  }

  // Genus-2 Jacobian Kummer fourfold: the degree--2/3 ray.
  {
    HKModel m = kummer_jacobian(2, 2, {Int(3), Int(-1)});
    Recorder rec("kum2.jacobian.isogeny", "Jacobian Kummer fourfold ray", m.c.status);
    ClassVector r = m.curve_class({Rat(1), Rat(-4)});
    RayReport rr = classify_ray(m, r);
    rec.eq("(R,R)", rr.sq, Rat(-2, 3));
    rec.eq("R.Theta", pair(apply(m.emb, m.div_class({Rat(1), Rat(0)})), r), Rat(2));
    rec.eq("R.e", pair(apply(m.emb, m.div_class({Rat(0), Rat(1)})), r), Rat(4));
    rec.eq("t", rr.t, Int(3));
    rec.eq("(rho,rho)", rr.rho_sq, Rat(-6));
    rec.eq("(rho,H^2)", rr.divisibility, Int(3));
    out.push_back(rec.take());
  }

  // Jacobian Kummer family across genus.
  for (int g = 2; g <= 8; ++g) {
    HKModel m = kummer_jacobian(g, 2 * g - 2, {Int(3), Int(-1)});
    Recorder rec("kum.jacobian.family@" + std::to_string(g),
                 "Jacobian Kummer family, genus " + std::to_string(g), m.c.status);
    ClassVector r = m.curve_class({Rat(1), Rat(-2 * g)});
    RayReport rr = classify_ray(m, r);
    rec.eq("(R,R)", rr.sq, Rat(-2, g + 1));
    rec.eq("t", rr.t, Int(g + 1));
    rec.eq("(rho,rho)", rr.rho_sq, Rat(-2 * (g + 1)));
    rec.eq("R.Theta", pair(apply(m.emb, m.div_class({Rat(1), Rat(0)})), r), Rat(2 * g - 2));
    rec.eq("R.2e", pair(apply(m.emb, m.div_class({Rat(0), Rat(2)})), r), Rat(4 * g));
    out.push_back(rec.take());
  }

  // Product Kummer: the Lagrangian line from a factor elliptic curve.
  for (int n = 2; n <= 8; ++n) {
    HKModel m = kummer_product(n, {Int(n + 2), Int(1), Int(-1)});
    Recorder rec("kum.product.lagrangian@" + std::to_string(n),
                 "product Kummer Lagrangian line, n = " + std::to_string(n), m.c.status);
    ClassVector l = m.curve_class({Rat(1), Rat(0), Rat(-(n + 1))});
    RayReport rr = classify_ray(m, l);
    rec.eq("(l,l)", rr.sq, Rat(-(n + 1), 2));
    rec.eq("t", rr.t, Int(2));
    rec.eq("(rho,rho)", rr.rho_sq, Rat(-2 * (n + 1)));
    rec.eq("l.E1", pair(apply(m.emb, m.div_class({Rat(1), Rat(0), Rat(0)})), l), Rat(0));
    rec.eq("l.E2", pair(apply(m.emb, m.div_class({Rat(0), Rat(1), Rat(0)})), l), Rat(1));
    rec.eq("l.e", pair(apply(m.emb, m.div_class({Rat(0), Rat(0), Rat(1)})), l), Rat(n + 1));
    rec.eq("geometry", rr.geometry_label, "Lagrangian P^" + std::to_string(n));
    out.push_back(rec.take());
  }

  return rep;
}

}  // namespace hkcone
