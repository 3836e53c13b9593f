// Exact algebra on subsets of N given as finite sets plus unions of
// arithmetic progressions, canonicalized into an eventually periodic form,
// and the decision procedures for representability over rational MILP/MICP
// data.
#pragma once

#include "micprep/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace micprep::natset {

/// The infinite set {offset + step*m : m in N}. Step is always >= 1;
/// singletons travel in finite parts, never as step-0 progressions.
struct ArithmeticProgression {
  nat offset = 0;
  nat step = 1;

  ArithmeticProgression() = default;
  ArithmeticProgression(nat offset_, nat step_) : offset(offset_), step(step_) {
    if (step == 0) throw std::invalid_argument("arithmetic progression step must be >= 1");
  }

  bool contains(nat n) const { return n >= offset && (n - offset) % step == 0; }

  friend bool operator==(const ArithmeticProgression&, const ArithmeticProgression&) = default;
};

/// Canonical form of an eventually periodic subset of N.
///
/// Membership: n < threshold iff n is listed in `exceptional`; n >= threshold
/// iff (n mod period) is listed in `residues`. Canonicality means the period
/// is the minimal period of the indicator on [threshold, inf) and the
/// threshold is minimal for that period, so two canonical values are
/// structurally equal exactly when they denote the same set.
struct EventuallyPeriodicSet {
  std::vector<nat> exceptional;  // strictly sorted, all < threshold
  nat threshold = 0;
  nat period = 1;
  std::vector<nat> residues;  // strictly sorted subset of {0, ..., period-1}

  bool contains(nat n) const {
    if (n < threshold) return std::binary_search(exceptional.begin(), exceptional.end(), n);
    return std::binary_search(residues.begin(), residues.end(), n % period);
  }

  bool is_finite() const { return residues.empty(); }

  /// The empty set: no exceptionals, threshold 0, period 1, no residues.
  bool is_empty() const { return exceptional.empty() && residues.empty(); }

  friend bool operator==(const EventuallyPeriodicSet&, const EventuallyPeriodicSet&) = default;
};

namespace detail {

// Minimal period of a finite 0/1 word via the KMP border array.
inline std::size_t minimal_word_period(const std::vector<char>& w) {
  const std::size_t n = w.size();
  if (n == 0) return 1;
  std::vector<std::size_t> border(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = border[i - 1];
    while (k > 0 && w[i] != w[k]) k = border[k - 1];
    if (w[i] == w[k]) ++k;
    border[i] = k;
  }
  return n - border[n - 1];
}

}  // namespace detail

/// Builds the canonical value from an indicator window. `window[n]` must give
/// exact membership for n in [0, window.size()), `valid_threshold` and
/// `valid_period` must be a (not necessarily minimal) threshold/period pair
/// for the denoted set, and the window must reach two full periods past the
/// threshold.
inline EventuallyPeriodicSet canonicalize_window(const std::vector<char>& window,
                                                 nat valid_threshold, nat valid_period) {
  if (valid_period == 0) throw std::invalid_argument("period must be >= 1");
  if (window.size() < valid_threshold + 2 * valid_period)
    throw std::invalid_argument("window too short to canonicalize");

  // Minimal period of the infinite tail. The 2p-slice has the tail's period p,
  // so by Fine and Wilf its minimal word period divides p and extends to the
  // whole tail.
  std::vector<char> slice(window.begin() + static_cast<std::ptrdiff_t>(valid_threshold),
                          window.begin() + static_cast<std::ptrdiff_t>(valid_threshold + 2 * valid_period));
  nat p = static_cast<nat>(detail::minimal_word_period(slice));
  if (valid_period % p != 0) p = valid_period;  // defensive; cannot happen

  std::vector<nat> residues;
  for (nat i = 0; i < p; ++i)
    if (window[valid_threshold + i]) residues.push_back((valid_threshold + i) % p);
  std::sort(residues.begin(), residues.end());

  auto tail_predicts = [&](nat n) {
    return std::binary_search(residues.begin(), residues.end(), n % p);
  };
  nat n0 = valid_threshold;
  while (n0 > 0 && static_cast<bool>(window[n0 - 1]) == tail_predicts(n0 - 1)) --n0;

  EventuallyPeriodicSet s;
  s.threshold = n0;
  s.period = p;
  s.residues = std::move(residues);
  for (nat n = 0; n < n0; ++n)
    if (window[n]) s.exceptional.push_back(n);
  return s;
}

/// Canonical set denoting finite ∪ ⋃ aps. Empty inputs give the empty set.
inline EventuallyPeriodicSet from_parts(const std::vector<ArithmeticProgression>& aps,
                                        const std::vector<nat>& finite) {
  nat lcm_steps = 1;
  nat max_offset = 0;
  for (const auto& ap : aps) {
    lcm_steps = std::lcm(lcm_steps, ap.step);
    max_offset = std::max(max_offset, ap.offset);
    if (lcm_steps > (nat(1) << 24)) throw std::invalid_argument("progression steps too large");
  }
  nat t0 = max_offset;
  for (nat f : finite) t0 = std::max(t0, f + 1);

  const nat window_len = t0 + 2 * lcm_steps + 1;
  std::vector<char> window(window_len, 0);
  for (nat f : finite)
    window[f] = 1;
  for (const auto& ap : aps)
    for (nat n = ap.offset; n < window_len; n += ap.step) window[n] = 1;

  return canonicalize_window(window, t0, lcm_steps);
}

/// Splits a canonical set into a finite part plus progressions that all share
/// the set's period as step; offsets are the minimal tail members of each
/// residue class. from_parts of the result is the identity.
inline std::pair<std::vector<nat>, std::vector<ArithmeticProgression>> common_step_form(
    const EventuallyPeriodicSet& s) {
  std::vector<ArithmeticProgression> aps;
  for (nat r : s.residues) {
    nat off = s.threshold + (r + s.period - s.threshold % s.period) % s.period;
    aps.emplace_back(off, s.period);
  }
  return {s.exceptional, aps};
}

struct MilpRepVerdict {
  enum class Kind { FiniteSet, RepresentableWithStep, NotRepresentable };
  Kind kind = Kind::FiniteSet;
  nat step = 0;  // meaningful only for RepresentableWithStep

  static MilpRepVerdict finite() { return {Kind::FiniteSet, 0}; }
  static MilpRepVerdict representable(nat a) { return {Kind::RepresentableWithStep, a}; }
  static MilpRepVerdict not_representable() { return {Kind::NotRepresentable, 0}; }
  friend bool operator==(const MilpRepVerdict&, const MilpRepVerdict&) = default;
};

/// True iff every member m of s with m + a inside the periodicity-sufficient
/// window also has m + a in s; by eventual periodicity this decides
/// s + a ⊆ s exactly.
inline bool closed_under_step(const EventuallyPeriodicSet& s, nat a) {
  const nat window = s.threshold + 2 * s.period + 2 * a;
  for (nat m = 0; m <= window; ++m)
    if (s.contains(m) && !s.contains(m + a)) return false;
  return true;
}

/// Decides rational-MILP representability of a canonical set: a finite set,
/// or an infinite set closed under a minimal positive step (then it is a
/// finite union of progressions with that common step), or neither.
/// Candidate steps range over 1..threshold+period, which suffices: any
/// closure step yields one in that range via the residue rotation it induces.
inline MilpRepVerdict decide_rational_milp(const EventuallyPeriodicSet& s) {
  if (s.is_finite()) return MilpRepVerdict::finite();
  const nat bound = s.threshold + s.period;
  for (nat a = 1; a <= bound; ++a)
    if (closed_under_step(s, a)) return MilpRepVerdict::representable(a);
  return MilpRepVerdict::not_representable();
}

/// Witness decomposition A0 ∪ ⋃ A_i for a canonical set, with every A_i an
/// infinite progression of step `period`. Progressions are extended downward
/// while their whole tail stays inside the set, so members of the finite part
/// get absorbed whenever possible.
struct NatUnionDecomposition {
  std::vector<nat> a0;
  std::vector<ArithmeticProgression> progressions;
};

inline NatUnionDecomposition decide_rational_micp(const EventuallyPeriodicSet& s) {
  NatUnionDecomposition out;
  for (nat r : s.residues) {
    nat off = s.threshold + (r + s.period - s.threshold % s.period) % s.period;
    while (off >= s.period && s.contains(off - s.period)) off -= s.period;
    out.progressions.emplace_back(off, s.period);
  }
  for (nat e : s.exceptional) {
    bool covered = std::any_of(out.progressions.begin(), out.progressions.end(),
                               [&](const ArithmeticProgression& ap) { return ap.contains(e); });
    if (!covered) out.a0.push_back(e);
  }
  return out;
}

/// Necessary-condition scanner: the minimal (period, threshold) consistent
/// with an oracle on [0, windowN], requiring two full periods of evidence.
/// A nullopt result is heuristic only and never proves nonrepresentability.
inline std::optional<EventuallyPeriodicSet> oracle_periodicity_scan(
    const std::function<bool(nat)>& oracle, nat window_n, nat max_period) {
  std::vector<char> window(window_n + 1);
  for (nat n = 0; n <= window_n; ++n) window[n] = oracle(n) ? 1 : 0;

  for (nat p = 1; p <= max_period; ++p) {
    if (2 * p > window_n + 1) break;
    nat n0 = 0;
    for (nat n = window_n + 1 - p; n-- > 0;) {
      if (window[n] != window[n + p]) {
        n0 = n + 1;
        break;
      }
    }
    if (n0 + 2 * p > window_n + 1) continue;  // not enough periodic evidence

    EventuallyPeriodicSet s;
    s.threshold = n0;
    s.period = p;
    for (nat i = 0; i < p; ++i)
      if (window[n0 + i]) s.residues.push_back((n0 + i) % p);
    std::sort(s.residues.begin(), s.residues.end());
    for (nat n = 0; n < n0; ++n)
      if (window[n]) s.exceptional.push_back(n);
    // p is minimal by the ascending scan and n0 minimal by construction, so
    // the value is canonical for its denotation.
    return s;
  }
  return std::nullopt;
}

}  // namespace micprep::natset
