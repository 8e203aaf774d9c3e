#pragma once

// Quadratic lattices with (possibly rational-valued) symmetric pairings,
// classes living on them, and finite-index embeddings between them.

#include "hkcone/errors.hpp"
#include "hkcone/exact_linalg.hpp"
#include "hkcone/matrix.hpp"
#include "hkcone/numeric.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hkcone {

struct QuadLattice {
  std::string name;
  std::vector<std::string> basis_labels;
  RatMatrix gram;  // symmetric, rank x rank
  // Declares that this lattice is (known to be) primitively embedded in a
  // unimodular ambient; divisibility ideals are only computable when set.
  bool ambient_unimodular = false;

  std::size_t rank() const { return basis_labels.size(); }
};

using LatticePtr = std::shared_ptr<const QuadLattice>;

inline LatticePtr make_lattice(std::string name, std::vector<std::string> labels, RatMatrix gram,
                               bool ambient_unimodular = false) {
  if (gram.rows() != gram.cols() || gram.rows() != labels.size())
    throw BadRank("lattice '" + name + "': " + std::to_string(labels.size()) + " labels vs " +
                  std::to_string(gram.rows()) + "x" + std::to_string(gram.cols()) + " Gram");
  if (!is_symmetric(gram)) throw Error("lattice '" + name + "': Gram matrix not symmetric");
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty() || !seen.insert(l).second)
      throw Error("lattice '" + name + "': empty or duplicate basis label '" + l + "'");
  }
  auto lat = std::make_shared<QuadLattice>();
  lat->name = std::move(name);
  lat->basis_labels = std::move(labels);
  lat->gram = std::move(gram);
  lat->ambient_unimodular = ambient_unimodular;
  return lat;
}

// Structural identity: same object, or same name/labels/Gram. Distinct model
// instances over equal data are deliberately compatible.
inline bool same_lattice(const LatticePtr& a, const LatticePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->name == b->name && a->basis_labels == b->basis_labels && a->gram == b->gram;
}

struct ClassVector {
  LatticePtr lattice;
  std::vector<Rat> coords;

  bool is_integral() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rat& c) { return is_integer(c); });
  }
  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rat& c) { return c == 0; });
  }
};

inline ClassVector make_class(LatticePtr lattice, std::vector<Rat> coords) {
  if (!lattice) throw Error("make_class: null lattice");
  if (coords.size() != lattice->rank())
    throw BadRank("class on '" + lattice->name + "': " + std::to_string(coords.size()) +
                  " coordinates vs rank " + std::to_string(lattice->rank()));
  return ClassVector{std::move(lattice), std::move(coords)};
}

inline ClassVector make_class(LatticePtr lattice, const std::vector<Int>& coords) {
  std::vector<Rat> c(coords.begin(), coords.end());
  return make_class(std::move(lattice), std::move(c));
}

inline Rat pair(const ClassVector& x, const ClassVector& y) {
  if (!same_lattice(x.lattice, y.lattice))
    throw LatticeMismatch("pairing '" + x.lattice->name + "' against '" + y.lattice->name + "'");
  const RatMatrix& g = x.lattice->gram;
  Rat s = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (x.coords[i] == 0) continue;
    for (std::size_t j = 0; j < g.cols(); ++j) s += x.coords[i] * g.at(i, j) * y.coords[j];
  }
  return s;
}

inline Rat square(const ClassVector& x) { return pair(x, x); }

inline std::vector<Int> integer_coords(const ClassVector& x) {
  if (!x.is_integral())
    throw NonIntegralClass("class on '" + x.lattice->name + "' has fractional coordinates");
  std::vector<Int> c(x.coords.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = num(x.coords[i]);
  return c;
}

inline Int content(const ClassVector& x) {
  std::vector<Int> c = integer_coords(x);
  Int g = gcd_all(c);
  if (g == 0) throw ZeroVector("content of the zero class");
  return g;
}

inline ClassVector primitive_part(const ClassVector& x) {
  Int c = content(x);
  std::vector<Rat> r(x.coords);
  for (Rat& v : r) v /= Rat(c);
  return make_class(x.lattice, std::move(r));
}

inline ClassVector scale(const ClassVector& x, const Rat& c) {
  std::vector<Rat> r(x.coords);
  for (Rat& v : r) v *= c;
  return make_class(x.lattice, std::move(r));
}

inline ClassVector add(const ClassVector& x, const ClassVector& y) {
  if (!same_lattice(x.lattice, y.lattice))
    throw LatticeMismatch("adding '" + x.lattice->name + "' and '" + y.lattice->name + "'");
  std::vector<Rat> r(x.coords);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += y.coords[i];
  return make_class(x.lattice, std::move(r));
}

// Injective map of source into target; column j holds the target coordinates
// of the j-th source basis vector.
struct LatticeEmbedding {
  LatticePtr source;
  LatticePtr target;
  IntMatrix matrix;  // target.rank x source.rank
};

inline LatticeEmbedding make_embedding(LatticePtr source, LatticePtr target, IntMatrix matrix) {
  if (!source || !target) throw Error("make_embedding: null lattice");
  if (matrix.rows() != target->rank() || matrix.cols() != source->rank())
    throw BadRank("embedding matrix is " + std::to_string(matrix.rows()) + "x" +
                  std::to_string(matrix.cols()) + ", lattices have ranks " +
                  std::to_string(target->rank()) + ", " + std::to_string(source->rank()));
  // Injectivity: the columns must be independent, i.e. trivial kernel.
  if (!kernel_basis(matrix).empty())
    throw Error("make_embedding: matrix does not have full column rank");
  return LatticeEmbedding{std::move(source), std::move(target), std::move(matrix)};
}

inline ClassVector apply(const LatticeEmbedding& emb, const ClassVector& x) {
  if (!same_lattice(x.lattice, emb.source))
    throw LatticeMismatch("embedding expects '" + emb.source->name + "', got '" +
                          x.lattice->name + "'");
  std::vector<Rat> r(emb.target->rank());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < emb.source->rank(); ++j)
      r[i] += Rat(emb.matrix.at(i, j)) * x.coords[j];
  return make_class(emb.target, std::move(r));
}

// True when the embedding preserves the pairing: M^T G_target M == G_source.
inline bool form_compatible(const LatticeEmbedding& emb) {
  RatMatrix m = to_rational(emb.matrix);
  return m.transpose() * emb.target->gram * m == emb.source->gram;
}

struct Saturation {
  Int t;            // minimal positive integer with t*x in the image
  ClassVector rho;  // the source class mapping to t*x
};

// Saturate an integral target class into the embedded copy of source: find
// the least t >= 1 with t*x = emb(rho) for an integral rho on source.
inline Saturation saturate_to_sublattice(const ClassVector& x, const LatticeEmbedding& emb) {
  if (!same_lattice(x.lattice, emb.target))
    throw LatticeMismatch("saturating a class on '" + x.lattice->name + "' into '" +
                          emb.target->name + "'");
  if (x.is_zero()) throw ZeroVector("saturation of the zero class");
  if (!x.is_integral())
    throw NonIntegralClass("saturation expects integral coordinates on '" + x.lattice->name + "'");
  auto sol = solve_linear(to_rational(emb.matrix), x.coords);
  if (!sol) throw NotInRationalSpan("class on '" + x.lattice->name + "' misses the sublattice");
  Int t = 1;
  for (const Rat& y : *sol) t = lcm(t, den(y));
  std::vector<Rat> rho(sol->size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = (*sol)[i] * Rat(t);
  return Saturation{t, make_class(emb.source, std::move(rho))};
}

}  // namespace hkcone
