#pragma once

// Exact scalar types. Everything in this library is integer or rational
// arithmetic on arbitrary-precision values; no floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace hkcone {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rat& q) { return den(q) == 1; }

inline Int to_int(const Rat& q) {
  if (!is_integer(q))
    throw std::domain_error("to_int: " + q.str() + " is not an integer");
  return num(q);
}

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// floor(a/b), any sign of b (cpp_int division truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("floor_div: division by zero");
  Int q = a / b;
  Int r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int floor_rat(const Rat& q) { return floor_div(num(q), den(q)); }
inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

// floor(sqrt(n)) for n >= 0.
inline Int isqrt_floor(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt_floor: negative argument");
  return boost::multiprecision::sqrt(n);
}

// gcd of a coefficient vector; 0 when all entries vanish.
inline Int gcd_all(const std::vector<Int>& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  return g;
}

// Canonical fraction rendering: "p" when integral, "p/q" otherwise.
inline std::string rat_str(const Rat& q) {
  if (is_integer(q)) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

// Accepts "p" or "p/q" with optional leading '-'.
inline Rat parse_rat(const std::string& s) {
  auto bad = [&] { throw std::invalid_argument("parse_rat: cannot parse '" + s + "'"); };
  std::string t = s;
  if (t.empty()) bad();
  std::string::size_type slash = t.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(t));
    Int p(t.substr(0, slash)), q(t.substr(slash + 1));
    if (q == 0) bad();
    return Rat(p, q);
  } catch (const std::runtime_error&) {
    bad();
  }
  return Rat();  // unreachable
}

}  // namespace hkcone
