// Exact arithmetic in the ring Q[sqrt(2)]. A scalar u + v*sqrt(2) with
// rational u, v supports ring operations and an exact sign, which is all the
// geometry in this library needs: feasibility of every cone block reduces to
// signs of Q[sqrt(2)] expressions.
#pragma once

#include "micprep/rational.hpp"

#include <cmath>
#include <compare>
#include <string>

namespace micprep {

struct Q2 {
  Rat u{};  // rational part
  Rat v{};  // coefficient of sqrt(2)

  Q2() = default;
  Q2(Rat rational_part, Rat sqrt2_part) : u(std::move(rational_part)), v(std::move(sqrt2_part)) {}
  explicit Q2(Rat rational_part) : u(std::move(rational_part)) {}
  explicit Q2(long long n) : u(n) {}

  bool is_rational() const { return v == 0; }

  /// Exact sign in {-1, 0, +1}. Decides u against -v*sqrt(2) by comparing
  /// u^2 with 2 v^2; equality of the squares forces u = v = 0 because
  /// sqrt(2) is irrational.
  int sign() const {
    int su = sgn(u), sv = sgn(v);
    if (sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    Rat uu = Rat(u * u), vv2 = Rat(2 * v * v);
    if (uu == vv2) return 0;  // unreachable for rational u, v not both zero
    return uu > vv2 ? su : sv;
  }

  friend Q2 operator+(const Q2& a, const Q2& b) { return {Rat(a.u + b.u), Rat(a.v + b.v)}; }
  friend Q2 operator-(const Q2& a, const Q2& b) { return {Rat(a.u - b.u), Rat(a.v - b.v)}; }
  friend Q2 operator-(const Q2& a) { return {Rat(-a.u), Rat(-a.v)}; }
  friend Q2 operator*(const Q2& a, const Q2& b) {
    // (u + v s)(u' + v' s) = uu' + 2vv' + (uv' + vu') s  with s = sqrt(2)
    return {Rat(a.u * b.u + 2 * a.v * b.v), Rat(a.u * b.v + a.v * b.u)};
  }
  Q2& operator+=(const Q2& o) { return *this = *this + o; }
  Q2& operator-=(const Q2& o) { return *this = *this - o; }
  Q2& operator*=(const Q2& o) { return *this = *this * o; }

  friend bool operator==(const Q2& a, const Q2& b) { return a.u == b.u && a.v == b.v; }
  friend std::strong_ordering operator<=>(const Q2& a, const Q2& b) {
    int s = Q2(a - b).sign();
    return s < 0 ? std::strong_ordering::less
         : s > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  double approx() const { return to_double(u) + to_double(v) * std::sqrt(2.0); }
};

inline Q2 q2_sqrt2() { return Q2{Rat(0), Rat(1)}; }

inline std::string q2_to_string(const Q2& x) {
  if (x.is_rational()) return rat_to_string(x.u);
  return rat_to_string(x.u) + " + " + rat_to_string(x.v) + "*sqrt2";
}

}  // namespace micprep
