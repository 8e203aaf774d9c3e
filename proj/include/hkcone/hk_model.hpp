#pragma once

// Models of the rank-(1 + rho) divisor/curve lattice pair attached to a
// punctual Hilbert scheme of a K3 surface, a generalized Kummer variety, or
// a plain K3 surface. The surface Picard block is user data; the extra
// exceptional direction and the dual embedding N^1 -> N_1 are derived here.
//
// Conventions, fixed once for the whole library:
//   Hilbert case   (delta, delta) = -2(n-1),  delta = 2(n-1) delta_vee,
//   Kummer case    (e, e)         = -2(n+1),  e     = 2(n+1) e_vee,
// so the exceptional dual generator has square -1/(2(n-1)) resp. -1/(2(n+1))
// and pair(delta, delta_vee) = -1. Basis order is always: surface classes in
// the order given, exceptional class last.

#include "hkcone/errors.hpp"
#include "hkcone/lattice.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hkcone {

enum class DeformKind { K3Surface, HilbK3, Kummer };

struct DeformationType {
  DeformKind kind = DeformKind::K3Surface;
  int n = 1;  // >= 2 for HilbK3/Kummer, fixed at 1 for K3Surface
};

inline DeformationType k3_type() { return DeformationType{DeformKind::K3Surface, 1}; }
inline DeformationType hilb_type(int n) { return DeformationType{DeformKind::HilbK3, n}; }
inline DeformationType kummer_type(int n) { return DeformationType{DeformKind::Kummer, n}; }

inline std::string type_name(const DeformationType& t) {
  switch (t.kind) {
    case DeformKind::K3Surface:
      return "K3";
    case DeformKind::HilbK3:
      return "HilbK3(" + std::to_string(t.n) + ")";
    case DeformKind::Kummer:
      return "Kummer(" + std::to_string(t.n) + ")";
  }
  return "?";
}

// Evidence status of any statement that depends on the cone constant below.
enum class CStatus { Proven, Conjectural, Tentative };

inline std::string cstatus_name(CStatus s) {
  switch (s) {
    case CStatus::Proven:
      return "proven";
    case CStatus::Conjectural:
      return "conjectural";
    case CStatus::Tentative:
      return "tentative";
  }
  return "?";
}

struct ConstantC {
  Rat value;
  CStatus status;
};

// The lower bound constant c: extremal-ray squares are expected to satisfy
// (R,R) >= -c. Proven for K3 surfaces, conjectural in the Hilbert case and
// for Kummer fourfolds, and only tentative for higher Kummer varieties.
inline ConstantC constant_c(const DeformationType& t) {
  switch (t.kind) {
    case DeformKind::K3Surface:
      return {Rat(2), CStatus::Proven};
    case DeformKind::HilbK3:
      if (t.n < 2) throw Error("constant_c: HilbK3 needs n >= 2");
      return {Rat(t.n + 3, 2), CStatus::Conjectural};
    case DeformKind::Kummer:
      if (t.n < 2) throw Error("constant_c: Kummer needs n >= 2");
      if (t.n == 2) return {Rat(3, 2), CStatus::Conjectural};
      return {Rat(t.n + 1, 2), CStatus::Tentative};
  }
  throw Error("constant_c: unknown deformation type");
}

// Expected square of the line class on a Lagrangian projective space.
inline Rat lagrangian_line_square(const DeformationType& t) { return -constant_c(t).value; }

struct HKModel {
  DeformationType dtype;
  LatticePtr surface;        // the input Picard block, integral Gram
  LatticePtr div_lattice;    // N^1: surface + exceptional divisor class
  LatticePtr curve_lattice;  // N_1: surface + dual exceptional class
  LatticeEmbedding emb;      // N^1 -> N_1 via the pairing
  ClassVector g;             // distinguished positive class on N^1
  ConstantC c;

  std::size_t surface_rank() const { return surface->rank(); }
  bool has_exceptional() const { return dtype.kind != DeformKind::K3Surface; }
  // |square of the exceptional divisor class|, i.e. 2(n-1) resp. 2(n+1).
  Int exceptional_scale() const {
    if (dtype.kind == DeformKind::HilbK3) return Int(2 * (dtype.n - 1));
    if (dtype.kind == DeformKind::Kummer) return Int(2 * (dtype.n + 1));
    throw WrongDeformationType("no exceptional class on " + type_name(dtype));
  }

  ClassVector div_class(std::vector<Rat> coords) const {
    return make_class(div_lattice, std::move(coords));
  }
  ClassVector curve_class(std::vector<Rat> coords) const {
    return make_class(curve_lattice, std::move(coords));
  }
  ClassVector g_curve() const { return apply(emb, g); }
  Rat curve_degree(const ClassVector& c) const { return pair(g_curve(), c); }
};

namespace detail {

inline RatMatrix block_with_corner(const RatMatrix& s, const Rat& corner) {
  RatMatrix g(s.rows() + 1, s.cols() + 1);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) g.at(i, j) = s.at(i, j);
  g.at(s.rows(), s.cols()) = corner;
  return g;
}

}  // namespace detail

// Assembles a model from its surface Picard block. g_coords may be given on
// the surface block alone (the exceptional coefficient defaults to zero) or
// on all of N^1. Throws NotEven for an odd block, NotPolarized when
// (g,g) <= 0 and BadRank for any dimension mismatch.
inline HKModel build_model(const DeformationType& dtype, const RatMatrix& surface_gram,
                           std::vector<std::string> surface_labels, std::vector<Int> g_coords,
                           bool ambient_unimodular = true) {
  if ((dtype.kind == DeformKind::HilbK3 || dtype.kind == DeformKind::Kummer) && dtype.n < 2)
    throw Error("build_model: " + type_name(dtype) + " needs n >= 2");
  if (!is_symmetric(surface_gram)) throw Error("build_model: surface Gram not symmetric");
  if (!is_integral(surface_gram)) throw Error("build_model: surface Gram must be integral");
  if (surface_labels.size() != surface_gram.rows())
    throw BadRank("build_model: " + std::to_string(surface_labels.size()) + " labels for a rank-" +
                  std::to_string(surface_gram.rows()) + " surface block");
  for (std::size_t i = 0; i < surface_gram.rows(); ++i)
    if (num(surface_gram.at(i, i)) % 2 != 0)
      throw NotEven("surface Gram diagonal entry " + std::to_string(i) + " is odd");

  HKModel m;
  m.dtype = dtype;
  m.c = constant_c(dtype);
  std::string tag = type_name(dtype);
  m.surface = make_lattice("NS(" + tag + ")", surface_labels, surface_gram, ambient_unimodular);

  if (dtype.kind == DeformKind::K3Surface) {
    m.div_lattice = m.surface;
    m.curve_lattice = m.surface;
    m.emb = make_embedding(m.div_lattice, m.curve_lattice,
                           IntMatrix::identity(m.surface->rank()));
  } else {
    bool hilb = dtype.kind == DeformKind::HilbK3;
    Int scale = hilb ? Int(2 * (dtype.n - 1)) : Int(2 * (dtype.n + 1));
    std::vector<std::string> div_labels = surface_labels;
    div_labels.push_back(hilb ? "delta" : "e");
    std::vector<std::string> cur_labels = std::move(surface_labels);
    cur_labels.push_back(hilb ? "deltav" : "ev");
    m.div_lattice = make_lattice("N1div(" + tag + ")", std::move(div_labels),
                                 detail::block_with_corner(surface_gram, Rat(-scale)), false);
    m.curve_lattice = make_lattice("N1cur(" + tag + ")", std::move(cur_labels),
                                   detail::block_with_corner(surface_gram, Rat(-1, scale)), false);
    IntMatrix e = IntMatrix::identity(m.div_lattice->rank());
    e.at(m.surface->rank(), m.surface->rank()) = scale;  // delta = scale * delta_vee
    m.emb = make_embedding(m.div_lattice, m.curve_lattice, std::move(e));
  }

  std::size_t dr = m.div_lattice->rank();
  if (g_coords.size() == m.surface->rank() && g_coords.size() != dr) g_coords.resize(dr, Int(0));
  if (g_coords.size() != dr)
    throw BadRank("build_model: g has " + std::to_string(g_coords.size()) +
                  " coordinates, N^1 has rank " + std::to_string(dr));
  m.g = make_class(m.div_lattice, g_coords);
  if (square(m.g) <= 0)
    throw NotPolarized("(g,g) = " + rat_str(square(m.g)) + " but must be positive");
  return m;
}

// Divisibility ideal (x, H^2) = d Z of an integral class x on N^1, valid when
// the surface block sits primitively in a unimodular ambient (the flag).
// In that case d = gcd(content of the surface part, exceptional coefficient
// times the exceptional scale); for a K3 surface it is just the content.
inline Int divisibility_ideal(const HKModel& m, const ClassVector& x) {
  if (!same_lattice(x.lattice, m.div_lattice))
    throw LatticeMismatch("divisibility_ideal wants a class on '" + m.div_lattice->name + "'");
  if (!m.surface->ambient_unimodular)
    throw FlagRequired("divisibility over '" + m.surface->name + "'");
  std::vector<Int> c = integer_coords(x);
  if (x.is_zero()) throw ZeroVector("divisibility of the zero class");
  if (!m.has_exceptional()) return gcd_all(c);
  Int exc = c.back();
  c.pop_back();
  return gcd(gcd_all(c), abs(exc) * m.exceptional_scale());
}

// Weaker ideal (x, N^1), computable without any ambient assumption.
inline Int divisibility_in_span(const HKModel& m, const ClassVector& x) {
  if (!same_lattice(x.lattice, m.div_lattice))
    throw LatticeMismatch("divisibility_in_span wants a class on '" + m.div_lattice->name + "'");
  if (x.is_zero()) throw ZeroVector("divisibility of the zero class");
  integer_coords(x);  // integrality gate
  Int d = 0;
  for (std::size_t i = 0; i < m.div_lattice->rank(); ++i) {
    std::vector<Rat> e(m.div_lattice->rank());
    e[i] = 1;
    d = gcd(d, to_int(pair(x, m.div_class(std::move(e)))));
  }
  return d;
}

}  // namespace hkcone
