#pragma once

#include <stdexcept>
#include <string>

namespace hkcone {

// Base class for every domain error thrown by this library. Callers that
// want blanket handling catch this; tests pin the concrete types below.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two classes living on different lattices were combined.
struct LatticeMismatch : Error {
  explicit LatticeMismatch(const std::string& what) : Error("lattice mismatch: " + what) {}
};

// The zero class has no content, no saturation and no divisibility.
struct ZeroVector : Error {
  explicit ZeroVector(const std::string& what) : Error("zero vector: " + what) {}
};

// An operation required integral coordinates.
struct NonIntegralClass : Error {
  explicit NonIntegralClass(const std::string& what) : Error("non-integral class: " + what) {}
};

// No rational multiple of the class lies in the image of the embedding.
struct NotInRationalSpan : Error {
  explicit NotInRationalSpan(const std::string& what) : Error("not in rational span: " + what) {}
};

// The requested divisibility computation needs the ambient-unimodularity flag.
struct FlagRequired : Error {
  explicit FlagRequired(const std::string& what) : Error("ambient_unimodular required: " + what) {}
};

struct NotPositiveDefinite : Error {
  explicit NotPositiveDefinite(const std::string& what) : Error("not positive definite: " + what) {}
};

// An even lattice was required but a diagonal Gram entry is odd.
struct NotEven : Error {
  explicit NotEven(const std::string& what) : Error("not an even lattice: " + what) {}
};

// The model's distinguished class g must satisfy (g,g) > 0.
struct NotPolarized : Error {
  explicit NotPolarized(const std::string& what) : Error("not polarized: " + what) {}
};

struct BadRank : Error {
  explicit BadRank(const std::string& what) : Error("rank mismatch: " + what) {}
};

struct NotIsotropic : Error {
  explicit NotIsotropic(const std::string& what) : Error("not isotropic: " + what) {}
};

struct NotPrimitive : Error {
  explicit NotPrimitive(const std::string& what) : Error("not primitive: " + what) {}
};

// Operation only defined for a specific deformation type.
struct WrongDeformationType : Error {
  explicit WrongDeformationType(const std::string& what) : Error("wrong deformation type: " + what) {}
};

// Ray classification needs a nonzero degree against the model's g.
struct ZeroDegree : Error {
  explicit ZeroDegree(const std::string& what) : Error("zero degree: " + what) {}
};

// Degree enumeration requires the perpendicular form to be definite.
struct IndefinitePerp : Error {
  explicit IndefinitePerp(const std::string& what) : Error("indefinite perpendicular form: " + what) {}
};

// Malformed model file or class literal.
struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

}  // namespace hkcone
