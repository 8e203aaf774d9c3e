#include "hkcone/lattice.hpp"
#include "hkcone/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace hkcone;
using verify_detail::hilb_rank1;
using verify_detail::hilb_rank2;

namespace {

LatticePtr hyperbolic_plane() {
  RatMatrix g(2, 2);
  g.at(0, 1) = 1;
  g.at(1, 0) = 1;
  return make_lattice("U", {"u1", "u2"}, std::move(g), true);
}

}  // namespace

TEST_CASE("make_lattice validates its input", "[lattice_core]") {
  RatMatrix notsquare(1, 2);
  CHECK_THROWS_AS(make_lattice("x", {"a"}, notsquare, true), BadRank);

  RatMatrix asym(2, 2);
  asym.at(0, 1) = 1;
  CHECK_THROWS_AS(make_lattice("x", {"a", "b"}, asym, true), Error);

  RatMatrix ok(2, 2);
  ok.at(0, 1) = 1;
  ok.at(1, 0) = 1;
  CHECK_THROWS_AS(make_lattice("x", {"a", "a"}, ok, true), Error);
  CHECK_THROWS_AS(make_lattice("x", {"a"}, ok, true), BadRank);
  CHECK_NOTHROW(make_lattice("x", {"a", "b"}, ok, true));
}

TEST_CASE("pairing on the hyperbolic plane", "[lattice_core]") {
  LatticePtr u = hyperbolic_plane();
  ClassVector e = make_class(u, std::vector<Int>{Int(1), Int(0)});
  ClassVector f = make_class(u, std::vector<Int>{Int(0), Int(1)});
  CHECK(square(e) == 0);
  CHECK(square(f) == 0);
  CHECK(pair(e, f) == 1);
  ClassVector s = add(e, f);
  CHECK(square(s) == 2);
  CHECK(square(add(e, scale(f, Rat(-1)))) == -2);
}

TEST_CASE("pairing rejects mismatched lattices", "[lattice_core]") {
  LatticePtr u1 = hyperbolic_plane();
  RatMatrix g(1, 1);
  g.at(0, 0) = 2;
  LatticePtr a = make_lattice("A", {"a"}, std::move(g), true);
  ClassVector x = make_class(u1, std::vector<Int>{Int(1), Int(0)});
  ClassVector y = make_class(a, std::vector<Int>{Int(1)});
  CHECK_THROWS_AS(pair(x, y), LatticeMismatch);
}

TEST_CASE("structurally equal lattices are interchangeable", "[lattice_core]") {
  LatticePtr u1 = hyperbolic_plane();
  LatticePtr u2 = hyperbolic_plane();
  REQUIRE(u1 != u2);  // distinct objects
  ClassVector x = make_class(u1, std::vector<Int>{Int(1), Int(2)});
  ClassVector y = make_class(u2, std::vector<Int>{Int(3), Int(1)});
  CHECK(pair(x, y) == 1 * 1 + 2 * 3);  // via the off-diagonal form
}

TEST_CASE("content and primitive part", "[lattice_core]") {
  LatticePtr u = hyperbolic_plane();
  ClassVector x = make_class(u, std::vector<Int>{Int(4), Int(-6)});
  CHECK(content(x) == 2);
  ClassVector p = primitive_part(x);
  CHECK(p.coords[0] == 2);
  CHECK(p.coords[1] == -3);
  CHECK(content(p) == 1);

  ClassVector zero = make_class(u, std::vector<Int>{Int(0), Int(0)});
  CHECK_THROWS_AS(content(zero), ZeroVector);

  ClassVector frac = make_class(u, {Rat(1, 2), Rat(0)});
  CHECK_THROWS_AS(integer_coords(frac), NonIntegralClass);
}

TEST_CASE("embeddings check ranks and injectivity", "[lattice_core]") {
  LatticePtr u = hyperbolic_plane();
  RatMatrix g(1, 1);
  g.at(0, 0) = 2;
  LatticePtr a = make_lattice("A", {"a"}, std::move(g), true);

  IntMatrix good(2, 1);
  good.at(0, 0) = 1;
  good.at(1, 0) = 1;  // a -> u1 + u2, square 2: compatible
  LatticeEmbedding emb = make_embedding(a, u, good);
  CHECK(form_compatible(emb));
  ClassVector img = apply(emb, make_class(a, std::vector<Int>{Int(3)}));
  CHECK(img.coords[0] == 3);
  CHECK(img.coords[1] == 3);
  CHECK(square(img) == 18);

  IntMatrix zero(2, 1);
  CHECK_THROWS_AS(make_embedding(a, u, zero), Error);  // not injective

  IntMatrix wrong(1, 2);
  CHECK_THROWS_AS(make_embedding(a, u, wrong), BadRank);
}

TEST_CASE("saturation of a half-integral class", "[lattice_core]") {
  // n = 2 blowup model: the curve class E - delta^vee saturates to
  // 2E - delta in N^1, of square -10.
  HKModel m = hilb_rank2(2, 4, {Int(1), Int(0)});
  ClassVector ell = m.curve_class({Rat(0), Rat(1), Rat(-1)});
  Saturation s = saturate_to_sublattice(ell, m.emb);
  CHECK(s.t == 2);
  CHECK(square(s.rho) == -10);
  std::vector<Int> rc = integer_coords(s.rho);
  CHECK(rc == std::vector<Int>{Int(0), Int(2), Int(-1)});
}

TEST_CASE("saturation of the dual exceptional class", "[lattice_core]") {
  HKModel m = hilb_rank1(2, 2, {Int(1)});
  // delta^vee has t = 2(n-1) = 2 and saturation delta of square -2
  Saturation s = saturate_to_sublattice(m.curve_class({Rat(0), Rat(1)}), m.emb);
  CHECK(s.t == 2);
  CHECK(square(s.rho) == -2);
  // a class already in the image of N^1 saturates with t = 1
  ClassVector r = m.curve_class({Rat(1), Rat(-2)});
  Saturation s2 = saturate_to_sublattice(r, m.emb);
  CHECK(s2.t == 1);
  CHECK(square(s2.rho) == square(r));
}

TEST_CASE("saturation rejects classes outside the rational span", "[lattice_core]") {
  LatticePtr u = hyperbolic_plane();
  RatMatrix g(1, 1);
  g.at(0, 0) = 2;
  LatticePtr a = make_lattice("A", {"a"}, std::move(g), true);
  IntMatrix e(2, 1);
  e.at(0, 0) = 1;
  e.at(1, 0) = 1;
  LatticeEmbedding emb = make_embedding(a, u, e);
  ClassVector off = make_class(u, std::vector<Int>{Int(1), Int(0)});
  CHECK_THROWS_AS(saturate_to_sublattice(off, emb), NotInRationalSpan);
  ClassVector zero = make_class(u, std::vector<Int>{Int(0), Int(0)});
  CHECK_THROWS_AS(saturate_to_sublattice(zero, emb), ZeroVector);
}

TEST_CASE("saturation scale is stable under integral scaling of the ray", "[lattice_core]") {
  HKModel m = hilb_rank1(3, 4, {Int(1)});
  ClassVector r = m.curve_class({Rat(1), Rat(-5)});  // f - 5 delta^vee
  Saturation s1 = saturate_to_sublattice(r, m.emb);
  ClassVector r3 = scale(r, Rat(3));
  Saturation s3 = saturate_to_sublattice(r3, m.emb);
  CHECK(s1.t == 4);
  CHECK(square(s1.rho) == -36);
  CHECK(s3.t == s1.t);
  CHECK(square(s3.rho) == 9 * square(s1.rho));
}

TEST_CASE("mixed-space pairings are integral for integral classes", "[lattice_core]") {
  // (emb(x), C) for x in N^1 and C in N_1 with integer coordinates is an
  // integer: the curve lattice carries the dual layout of the divisor lattice.
  for (int n = 2; n <= 6; ++n) {
    HKModel m = hilb_rank1(n, 2 * n, {Int(1)});
    for (long long a = -3; a <= 3; ++a)
      for (long long b = -3; b <= 3; ++b)
        for (long long c = -3; c <= 3; ++c)
          for (long long d = -3; d <= 3; ++d) {
            ClassVector x = m.div_class({Rat(a), Rat(b)});
            ClassVector y = m.curve_class({Rat(c), Rat(d)});
            Rat p = pair(apply(m.emb, x), y);
            REQUIRE(is_integer(p));
          }
  }
}

TEST_CASE("t squared times the ray square equals the saturation square", "[lattice_core]") {
  for (int n = 2; n <= 5; ++n) {
    HKModel m = hilb_rank1(n, 6, {Int(1)});
    for (long long a = -4; a <= 4; ++a)
      for (long long b = -4; b <= 4; ++b) {
        if (a == 0 && b == 0) continue;
        ClassVector r = m.curve_class({Rat(a), Rat(b)});
        Saturation s = saturate_to_sublattice(r, m.emb);
        REQUIRE(square(s.rho) == Rat(s.t * s.t) * square(r));
        REQUIRE(is_integer(square(s.rho) / Rat(2)));  // rho lands in an even lattice
      }
  }
}

TEST_CASE("dual exceptional square across the family", "[lattice_core]") {
  // (delta^vee, delta^vee) * (2(n-1))^2 == -2(n-1), i.e. the dual square is
  // -1/(2(n-1)); same with n+1 on the generalized Kummer side.
  for (int n = 2; n <= 20; ++n) {
    HKModel m = hilb_rank1(n, 2, {Int(1)});
    Rat dv = square(m.curve_class({Rat(0), Rat(1)}));
    Int s = Int(2 * (n - 1));
    REQUIRE(dv * Rat(s * s) == Rat(-s));
    HKModel k = verify_detail::kummer_jacobian(n, 2, {Int(1)});
    Rat ev = square(k.curve_class({Rat(0), Rat(1)}));
    Int sk = Int(2 * (n + 1));
    REQUIRE(ev * Rat(sk * sk) == Rat(-sk));
  }
}
