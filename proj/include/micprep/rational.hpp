// Exact integer/rational scalar types and small number-theory helpers used
// throughout the library. All arithmetic is arbitrary precision; nothing in
// here rounds.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace micprep {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Natural numbers as handled by the natset/semigroup modules.
using nat = std::uint64_t;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline int sgn(const Int& x) { return x.sign(); }
inline int sgn(const Rat& q) { return rat_num(q).sign(); }

inline bool is_integer(const Rat& q) { return rat_den(q) == 1; }

/// Largest integer <= q.
inline Int rat_floor(const Rat& q) {
  Int n = rat_num(q), d = rat_den(q);
  Int quo = n / d;
  if (n < 0 && quo * d != n) --quo;
  return quo;
}

/// q - floor(q), always in [0, 1).
inline Rat rat_frac(const Rat& q) { return Rat(q - Rat(rat_floor(q))); }

/// Floor of sqrt(n) for n >= 0.
inline Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt of negative value");
  return boost::multiprecision::sqrt(n);
}

inline double to_double(const Rat& q) { return q.convert_to<double>(); }

/// Canonical text form: "p" when the denominator is 1, "p/q" otherwise.
inline std::string rat_to_string(const Rat& q) {
  Int n = rat_num(q), d = rat_den(q);
  std::string s = n.str();
  if (d != 1) s += "/" + d.str();
  return s;
}

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on anything else.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Rat(n, d);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

/// lcm of positive denominators of a rational vector (1 for an empty vector).
inline Int common_denominator(const std::vector<Rat>& v) {
  Int l = 1;
  for (const Rat& q : v) l = boost::multiprecision::lcm(l, rat_den(q));
  return l;
}

inline nat gcd_all(const std::vector<nat>& xs) {
  nat g = 0;
  for (nat x : xs) g = std::gcd(g, x);
  return g;
}

}  // namespace micprep
