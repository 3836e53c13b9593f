// Strong-nonconvexity certificates: a finite family of set members whose
// pairwise midpoints all leave the set, verified in exact rational
// arithmetic, plus the greedy search that grows such families from candidate
// streams and the same-parity pigeonhole on integer vectors.
#pragma once

#include "micprep/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace micprep::midpoint {

using Point = std::vector<Rat>;

// ---------------------------------------------------------------------------
// Built-in set oracles, all decidable exactly on rational points.

/// m x n matrices (row-major flattening) of rank at most 1: every 2x2 minor
/// vanishes.
struct RankLeOne {
  std::size_t m = 2, n = 2;
};

/// r_in <= ||x|| <= r_out in the plane, decided on squared norms.
struct Annulus {
  Rat r_in, r_out;
};

/// Prime natural numbers (dimension 1).
struct Primes {};

/// Graph of the piecewise-linear interpolant of y = x^2 at the integers.
struct ParabolaPwl {};

/// {x in N>=1 x R : x1 * x2 >= 1}.
struct HyperbolaMixed {};

/// An explicit finite point set.
struct UserGrid {
  std::vector<Point> points;
};

using SetOracle = std::variant<RankLeOne, Annulus, Primes, ParabolaPwl, HyperbolaMixed, UserGrid>;

inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  if (n % 3 == 0) return false;
  for (Int d = 5; d * d <= n; d += 6) {
    if (n % d == 0) return false;
    if (n % (d + 2) == 0) return false;
  }
  return true;
}

inline std::size_t oracle_dim(const SetOracle& o) {
  return std::visit(
      [](const auto& v) -> std::size_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RankLeOne>) return v.m * v.n;
        else if constexpr (std::is_same_v<T, Annulus>) return 2;
        else if constexpr (std::is_same_v<T, Primes>) return 1;
        else if constexpr (std::is_same_v<T, ParabolaPwl>) return 2;
        else if constexpr (std::is_same_v<T, HyperbolaMixed>) return 2;
        else return v.points.empty() ? 0 : v.points.front().size();
      },
      o);
}

inline bool oracle_member(const SetOracle& o, const Point& p) {
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RankLeOne>) {
          auto at = [&](std::size_t i, std::size_t j) -> const Rat& { return p[i * v.n + j]; };
          for (std::size_t i = 0; i < v.m; ++i)
            for (std::size_t i2 = i + 1; i2 < v.m; ++i2)
              for (std::size_t j = 0; j < v.n; ++j)
                for (std::size_t j2 = j + 1; j2 < v.n; ++j2)
                  if (Rat(at(i, j) * at(i2, j2)) != Rat(at(i, j2) * at(i2, j))) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Annulus>) {
          Rat nrm2 = Rat(p[0] * p[0] + p[1] * p[1]);
          return nrm2 >= Rat(v.r_in * v.r_in) && nrm2 <= Rat(v.r_out * v.r_out);
        } else if constexpr (std::is_same_v<T, Primes>) {
          return is_integer(p[0]) && is_prime(rat_num(p[0]));
        } else if constexpr (std::is_same_v<T, ParabolaPwl>) {
          // On [k, k+1] the interpolant is k^2 + (2k+1)(x - k).
          Int k = rat_floor(p[0]);
          Rat expect = Rat(Rat(k * k) + Rat(2 * k + 1) * Rat(p[0] - Rat(k)));
          return p[1] == expect;
        } else if constexpr (std::is_same_v<T, HyperbolaMixed>) {
          return is_integer(p[0]) && p[0] >= 1 && Rat(p[0] * p[1]) >= 1;
        } else {
          return std::find(v.points.begin(), v.points.end(), p) != v.points.end();
        }
      },
      o);
}

// ---------------------------------------------------------------------------
// Certificates.

enum class CertStatus { Unverified, Verified, Refuted };

struct Refutation {
  enum class Kind { DuplicatePoint, PointNotInSet, MidpointInSet };
  Kind kind = Kind::PointNotInSet;
  std::size_t i = 0, j = 0;  // offending indices (i only, for PointNotInSet)
  Point midpoint;            // filled for MidpointInSet
};

struct MidpointCertificate {
  SetOracle oracle;
  std::vector<Point> points;
  CertStatus status = CertStatus::Unverified;
  std::optional<Refutation> refutation;
};

inline Point midpoint_of(const Point& a, const Point& b) {
  Point m(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) m[j] = Rat((a[j] + b[j]) / 2);
  return m;
}

/// Exact verification; the first offense in index order wins (points scanned
/// ascending, then pairs (i, j) with i < j lexicographically).
inline MidpointCertificate verify_certificate(MidpointCertificate c) {
  c.refutation.reset();
  const std::size_t dim = oracle_dim(c.oracle);
  for (const Point& p : c.points)
    if (p.size() != dim) throw std::invalid_argument("certificate point has wrong dimension");

  for (std::size_t i = 0; i < c.points.size(); ++i) {
    if (!oracle_member(c.oracle, c.points[i])) {
      c.status = CertStatus::Refuted;
      c.refutation = Refutation{Refutation::Kind::PointNotInSet, i, i, {}};
      return c;
    }
  }
  for (std::size_t i = 0; i < c.points.size(); ++i)
    for (std::size_t j = i + 1; j < c.points.size(); ++j) {
      if (c.points[i] == c.points[j]) {
        c.status = CertStatus::Refuted;
        c.refutation = Refutation{Refutation::Kind::DuplicatePoint, i, j, {}};
        return c;
      }
      Point mid = midpoint_of(c.points[i], c.points[j]);
      if (oracle_member(c.oracle, mid)) {
        c.status = CertStatus::Refuted;
        c.refutation = Refutation{Refutation::Kind::MidpointInSet, i, j, std::move(mid)};
        return c;
      }
    }
  c.status = CertStatus::Verified;
  return c;
}

// ---------------------------------------------------------------------------
// Candidate streams and greedy search.

/// Deterministic candidate source; returns nullopt when exhausted.
using CandidateStream = std::function<std::optional<Point>()>;

inline CandidateStream integer_stream(long long start, long long step) {
  auto cur = std::make_shared<long long>(start);
  return [cur, step]() -> std::optional<Point> {
    Point p{Rat(*cur)};
    *cur += step;
    return p;
  };
}

/// Odd primes ascending from `from` (default 3, skipping 2 keeps midpoints
/// integral so every rejection is forced by a composite witness).
inline CandidateStream primes_stream(long long from = 3) {
  auto cur = std::make_shared<Int>(from);
  return [cur]() -> std::optional<Point> {
    while (!is_prime(*cur)) ++*cur;
    Point p{Rat(*cur)};
    ++*cur;
    return p;
  };
}

/// (k, k^2) for even k in the order 0, 2, -2, 4, -4, ...; adjacent integers
/// are skipped because their chord lies on the interpolant.
inline CandidateStream even_parabola_stream() {
  auto k = std::make_shared<long long>(0);
  return [k]() -> std::optional<Point> {
    long long v = *k;
    *k = v > 0 ? -v : -v + 2;
    return Point{Rat(v), Rat(v * v)};
  };
}

/// Rational points on the circle of radius r via t -> r((1-t^2), 2t)/(1+t^2),
/// t = 0, 1, 2, ...; injective for t >= 0, and distinct points on the inner
/// circle of an annulus always have their midpoint strictly inside the hole.
inline CandidateStream circle_stream(Rat radius) {
  auto t = std::make_shared<long long>(0);
  return [t, radius]() -> std::optional<Point> {
    Rat tt(*t);
    ++*t;
    Rat denom = Rat(1 + tt * tt);
    return Point{Rat(radius * Rat(1 - tt * tt) / denom), Rat(radius * Rat(2 * tt) / denom)};
  };
}

/// Lattice points (x1, x2) with x1 >= 1, x2 >= 1 in diagonal order.
inline CandidateStream lattice_diag_stream() {
  auto state = std::make_shared<std::pair<long long, long long>>(2, 1);  // (diag sum, x1)
  return [state]() -> std::optional<Point> {
    auto& [sum, x1] = *state;
    Point p{Rat(x1), Rat(sum - x1)};
    if (x1 + 1 < sum) {
      ++x1;
    } else {
      ++sum;
      x1 = 1;
    }
    return p;
  };
}

inline CandidateStream grid_stream(std::vector<Point> pts) {
  auto i = std::make_shared<std::size_t>(0);
  auto data = std::make_shared<std::vector<Point>>(std::move(pts));
  return [i, data]() -> std::optional<Point> {
    if (*i >= data->size()) return std::nullopt;
    return (*data)[(*i)++];
  };
}

struct SearchResult {
  MidpointCertificate certificate;
  bool exhausted = false;            // budget or stream ran out before target
  std::uint64_t oracle_calls = 0;
};

/// Greedy growth: accept the next stream candidate that is a member and whose
/// midpoint with every accepted point is a non-member. Deterministic given
/// the stream. The budget counts oracle membership calls.
inline SearchResult search_certificate(const SetOracle& oracle, CandidateStream stream,
                                       std::size_t target, std::uint64_t budget) {
  if (target < 2) throw std::invalid_argument("certificate target must be >= 2");
  SearchResult res;
  res.certificate.oracle = oracle;
  auto& pts = res.certificate.points;

  while (pts.size() < target && res.oracle_calls < budget) {
    std::optional<Point> cand = stream();
    if (!cand) {
      res.exhausted = true;
      break;
    }
    ++res.oracle_calls;
    if (!oracle_member(oracle, *cand)) continue;
    bool ok = true;
    for (const Point& p : pts) {
      if (*cand == p) {
        ok = false;
        break;
      }
      ++res.oracle_calls;
      if (res.oracle_calls > budget) break;
      if (oracle_member(oracle, midpoint_of(p, *cand))) {
        ok = false;
        break;
      }
    }
    if (res.oracle_calls > budget) break;
    if (ok) pts.push_back(std::move(*cand));
  }
  if (pts.size() < target) res.exhausted = true;
  res.certificate = verify_certificate(std::move(res.certificate));
  return res;
}

// ---------------------------------------------------------------------------
// Parity pigeonhole.

/// First pair (by second index, then first occurrence) of componentwise
/// mod-2-congruent vectors; guaranteed to exist when the list is longer than
/// 2^d. The midpoint of such a pair is integral.
inline std::optional<std::pair<std::size_t, std::size_t>> same_parity_pair(
    const std::vector<std::vector<long long>>& vectors) {
  std::map<std::vector<int>, std::size_t> first_seen;
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    std::vector<int> mask(vectors[j].size());
    for (std::size_t c = 0; c < mask.size(); ++c)
      mask[c] = static_cast<int>(((vectors[j][c] % 2) + 2) % 2);
    auto [it, inserted] = first_seen.emplace(std::move(mask), j);
    if (!inserted) return std::make_pair(it->second, j);
  }
  return std::nullopt;
}

}  // namespace micprep::midpoint
