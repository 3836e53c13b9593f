// Interval-valued convex families over rational index points: the
// convex-family and sampled-closedness checks, integer recession directions
// of rational polyhedra via Fourier-Motzkin, and the exact Beatty-gap set
// whose members avoid a fixed fractional window of sqrt(2)*x.
#pragma once

#include "micprep/q2.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace micprep::family {

using IndexPoint = std::vector<Rat>;

/// Finitely sampled family of intervals A_z = [lower(z), upper(z)] indexed by
/// rational points; an absent upper endpoint means +infinity. Slices are
/// never empty.
struct IntervalFamily {
  std::size_t dim = 1;
  std::vector<IndexPoint> domain;
  std::vector<Q2> lower;
  std::vector<std::optional<Q2>> upper;

  void validate() const {
    if (domain.size() != lower.size() || domain.size() != upper.size())
      throw std::invalid_argument("interval family: table sizes differ");
    for (const auto& z : domain)
      if (z.size() != dim) throw std::invalid_argument("interval family: index dimension mismatch");
    for (std::size_t i = 0; i < domain.size(); ++i)
      if (upper[i] && *upper[i] < lower[i])
        throw std::invalid_argument("interval family: empty slice");
  }

  std::optional<std::size_t> find(const IndexPoint& z) const {
    for (std::size_t i = 0; i < domain.size(); ++i)
      if (domain[i] == z) return i;
    return std::nullopt;
  }

  bool slice_contains(std::size_t i, const Q2& x) const {
    return !(x < lower[i]) && (!upper[i] || !(x > *upper[i]));
  }
};

struct ConvexViolation {
  std::size_t i = 0, j = 0;  // endpoint indices into the domain
  Rat lambda;
  bool lower_side = true;  // false: upper endpoint concavity failed
};

struct SkippedTriple {
  std::size_t i = 0, j = 0;
  Rat lambda;
  IndexPoint combined;  // not in the domain
};

struct ConvexCheckReport {
  std::optional<ConvexViolation> violation;
  std::vector<SkippedTriple> skipped;
  std::size_t checked = 0;

  bool ok() const { return !violation.has_value(); }
};

/// Verifies lambda A_zi + (1-lambda) A_zj ⊆ A_mid on every pair and grid
/// value whose combined index is in the domain: the lower endpoint must be
/// midpoint-convex and the upper midpoint-concave, with +infinity absorbing.
/// Exact; the first violation in index order is reported. Grid values 0 and 1
/// are trivially satisfied and skipped.
inline ConvexCheckReport check_convex_family(const IntervalFamily& fam,
                                             const std::vector<Rat>& lambda_grid) {
  fam.validate();
  for (const Rat& l : lambda_grid)
    if (l < 0 || l > 1) throw std::invalid_argument("lambda grid values must lie in [0,1]");

  ConvexCheckReport rep;
  for (std::size_t i = 0; i < fam.domain.size() && !rep.violation; ++i)
    for (std::size_t j = i + 1; j < fam.domain.size() && !rep.violation; ++j)
      for (const Rat& lambda : lambda_grid) {
        if (lambda == 0 || lambda == 1) continue;
        IndexPoint mid(fam.dim);
        for (std::size_t c = 0; c < fam.dim; ++c)
          mid[c] = Rat(lambda * fam.domain[i][c] + (1 - lambda) * fam.domain[j][c]);
        auto k = fam.find(mid);
        if (!k) {
          rep.skipped.push_back({i, j, lambda, std::move(mid)});
          continue;
        }
        ++rep.checked;
        Q2 lam{lambda}, one_minus{Rat(1 - lambda)};
        Q2 lo_comb = lam * fam.lower[i] + one_minus * fam.lower[j];
        if (fam.lower[*k] > lo_comb) {
          rep.violation = ConvexViolation{i, j, lambda, true};
          break;
        }
        const bool comb_unbounded = !fam.upper[i] || !fam.upper[j];
        if (comb_unbounded) {
          if (fam.upper[*k]) {
            rep.violation = ConvexViolation{i, j, lambda, false};
            break;
          }
        } else if (fam.upper[*k]) {
          Q2 up_comb = lam * *fam.upper[i] + one_minus * *fam.upper[j];
          if (*fam.upper[*k] < up_comb) {
            rep.violation = ConvexViolation{i, j, lambda, false};
            break;
          }
        }
      }
  return rep;
}

/// One convergent sample: finitely many (index, point) pairs plus their
/// limits, all indices inside the domain.
struct ClosednessSample {
  std::vector<IndexPoint> index_seq;
  std::vector<Q2> point_seq;
  IndexPoint limit_index;
  Q2 limit_point;
};

struct ClosednessReport {
  std::optional<std::size_t> violation;  // first offending sample
  std::size_t checked = 0;
  bool ok() const { return !violation.has_value(); }
};

/// Finite-sample necessary check of family closedness: every supplied limit
/// point must land inside the slice of its limit index. Sample points are
/// required to lie in their slices; anything else is an input error.
inline ClosednessReport check_closed_sampled(const IntervalFamily& fam,
                                             const std::vector<ClosednessSample>& samples) {
  fam.validate();
  ClosednessReport rep;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& sample = samples[s];
    if (sample.index_seq.size() != sample.point_seq.size())
      throw std::invalid_argument("closedness sample: sequence lengths differ");
    for (std::size_t m = 0; m < sample.index_seq.size(); ++m) {
      auto k = fam.find(sample.index_seq[m]);
      if (!k) throw std::invalid_argument("closedness sample: index not in domain");
      if (!fam.slice_contains(*k, sample.point_seq[m]))
        throw std::invalid_argument("closedness sample: point outside its slice");
    }
    auto k = fam.find(sample.limit_index);
    if (!k) throw std::invalid_argument("closedness sample: limit index not in domain");
    ++rep.checked;
    if (!fam.slice_contains(*k, sample.limit_point)) {
      rep.violation = s;
      return rep;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Rational polyhedra and integer recession directions.

/// Finite system A x <= b over Q^dim.
struct RationalPolyhedron {
  std::size_t dim = 0;
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;

  void validate() const {
    if (A.size() != b.size()) throw std::invalid_argument("polyhedron: |A| != |b|");
    for (const auto& row : A)
      if (row.size() != dim) throw std::invalid_argument("polyhedron: row width != dim");
  }
};

namespace detail {

// Fourier-Motzkin feasibility for A x <= b; returns a feasible point.
inline std::optional<std::vector<Rat>> fm_feasible(std::vector<std::vector<Rat>> A,
                                                   std::vector<Rat> b, std::size_t dim) {
  if (dim == 0) {
    for (std::size_t i = 0; i < A.size(); ++i)
      if (b[i] < 0) return std::nullopt;
    return std::vector<Rat>{};
  }
  // Eliminate the last variable.
  std::vector<std::vector<Rat>> keepA;
  std::vector<Rat> keepB;
  std::vector<std::pair<std::vector<Rat>, Rat>> lowers, uppers;  // bounds on x_last
  for (std::size_t i = 0; i < A.size(); ++i) {
    Rat c = A[i][dim - 1];
    std::vector<Rat> rest(A[i].begin(), A[i].end() - 1);
    if (c == 0) {
      keepA.push_back(std::move(rest));
      keepB.push_back(b[i]);
    } else if (c > 0) {  // x <= (b - rest.x')/c
      for (Rat& v : rest) v = Rat(v / c);
      uppers.emplace_back(std::move(rest), Rat(b[i] / c));
    } else {  // x >= (b - rest.x')/c with c < 0
      for (Rat& v : rest) v = Rat(v / c);
      lowers.emplace_back(std::move(rest), Rat(b[i] / c));
    }
  }
  for (const auto& lo : lowers)
    for (const auto& up : uppers) {
      // lower bound <= upper bound
      std::vector<Rat> row(dim - 1);
      for (std::size_t c = 0; c < dim - 1; ++c) row[c] = Rat(lo.first[c] - up.first[c]);
      keepA.push_back(std::move(row));
      keepB.push_back(Rat(up.second - lo.second));
    }
  auto rest = fm_feasible(std::move(keepA), std::move(keepB), dim - 1);
  if (!rest) return std::nullopt;

  // Back-substitute: pick any value between the tightest bounds.
  std::optional<Rat> lo_val, hi_val;
  for (const auto& lo : lowers) {
    Rat v = lo.second;
    for (std::size_t c = 0; c < dim - 1; ++c) v -= Rat(lo.first[c] * (*rest)[c]);
    if (!lo_val || v > *lo_val) lo_val = v;
  }
  for (const auto& up : uppers) {
    Rat v = up.second;
    for (std::size_t c = 0; c < dim - 1; ++c) v -= Rat(up.first[c] * (*rest)[c]);
    if (!hi_val || v < *hi_val) hi_val = v;
  }
  Rat x;
  if (lo_val && hi_val) x = Rat((*lo_val + *hi_val) / 2);
  else if (lo_val) x = *lo_val;
  else if (hi_val) x = *hi_val;
  rest->push_back(x);
  return rest;
}

}  // namespace detail

/// A nonzero integer vector r with A r <= 0 if the recession cone has one,
/// else nullopt. Tries each coordinate pinned to +1 then -1, in coordinate
/// order, so the result is deterministic; any rational ray is scaled to a
/// primitive integer vector.
inline std::optional<std::vector<Int>> integer_recession_direction(const RationalPolyhedron& p) {
  p.validate();
  for (std::size_t pin = 0; pin < p.dim; ++pin)
    for (int sign : {+1, -1}) {
      std::vector<std::vector<Rat>> A = p.A;
      std::vector<Rat> b(p.A.size(), Rat(0));
      std::vector<Rat> pin_row(p.dim, Rat(0));
      pin_row[pin] = 1;
      A.push_back(pin_row);
      b.push_back(Rat(sign));
      for (Rat& v : pin_row) v = Rat(-v);
      A.push_back(pin_row);
      b.push_back(Rat(-sign));
      auto sol = detail::fm_feasible(std::move(A), std::move(b), p.dim);
      if (!sol) continue;
      Int den = common_denominator(*sol);
      std::vector<Int> r(p.dim);
      Int g = 0;
      for (std::size_t c = 0; c < p.dim; ++c) {
        r[c] = Int(rat_num((*sol)[c]) * (den / rat_den((*sol)[c])));
        g = boost::multiprecision::gcd(g, r[c]);
      }
      if (g > 1)
        for (Int& v : r) v /= g;
      return r;
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// The Beatty-gap set.

/// S_eps = {x in N : frac(sqrt(2) x) not in (eps, 1 - sqrt(2) eps)}, the
/// projection of the sqrt(2)-strip K_eps onto its integer points. The
/// excluded window is nonempty exactly when 0 < eps < 1/(1+sqrt(2)), which
/// the constructor enforces.
struct BeattyGapSet {
  Rat epsilon;

  explicit BeattyGapSet(Rat eps) : epsilon(std::move(eps)) {
    if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
    Rat e1 = Rat(epsilon + 1);
    if (Rat(e1 * e1) >= 2)  // eps >= sqrt(2) - 1 = 1/(1+sqrt(2))
      throw std::invalid_argument("epsilon must be below 1/(1+sqrt(2))");
  }

  /// Exact membership: floor(sqrt(2) x) is isqrt(2 x^2) and the two window
  /// comparisons are Q[sqrt(2)] sign evaluations.
  bool contains(nat x) const {
    Int m = isqrt(Int(2) * Int(x) * Int(x));
    Q2 frac{Rat(-m), Rat(x)};  // sqrt(2) x - floor(sqrt(2) x)
    Q2 lo{epsilon};
    Q2 hi{Rat(1), Rat(-epsilon)};  // 1 - sqrt(2) eps
    return !(frac > lo && frac < hi);
  }
};

/// First k <= k_max with a*k + b outside the set, scanning exactly; nullopt
/// reports only the bound, never containment.
inline std::optional<nat> ap_escape_scan(const BeattyGapSet& s, nat a, nat b, nat k_max) {
  if (a == 0) throw std::invalid_argument("progression step must be >= 1");
  for (nat k = 0; k <= k_max; ++k)
    if (!s.contains(a * k + b)) return k;
  return std::nullopt;
}

}  // namespace micprep::family
