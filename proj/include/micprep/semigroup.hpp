// Numerical-semigroup (integral cone over N) computations: membership by
// dynamic programming, gap/conductor structure of the gcd-reduced semigroup,
// and the conversions between {bases} + intcone(generators) descriptions and
// canonical eventually periodic sets.
#pragma once

#include "micprep/natset.hpp"
#include "micprep/rational.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace micprep::semigroup {

using natset::EventuallyPeriodicSet;

/// Sorted, duplicate-free generator list; generators are >= 1. May be empty,
/// in which case the cone is {0}.
struct SemigroupGenerators {
  std::vector<nat> gens;

  SemigroupGenerators() = default;
  explicit SemigroupGenerators(std::vector<nat> g) : gens(std::move(g)) {
    for (nat x : gens)
      if (x == 0) throw std::invalid_argument("semigroup generators must be >= 1");
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  }

  bool empty() const { return gens.empty(); }
  nat gcd() const { return gcd_all(gens); }
  friend bool operator==(const SemigroupGenerators&, const SemigroupGenerators&) = default;
};

/// Reachability table for [0, upto]: table[n] iff n is a nonnegative integer
/// combination of the generators.
inline std::vector<char> intcone_table(const SemigroupGenerators& gens, nat upto) {
  std::vector<char> reach(upto + 1, 0);
  reach[0] = 1;
  for (nat n = 1; n <= upto; ++n)
    for (nat g : gens.gens) {
      if (g > n) break;
      if (reach[n - g]) {
        reach[n] = 1;
        break;
      }
    }
  return reach;
}

inline bool intcone_member(const SemigroupGenerators& gens, nat n) {
  return static_cast<bool>(intcone_table(gens, n)[n]);
}

/// Gap structure of the gcd-reduced semigroup: g is the gcd of the original
/// generators, gaps and conductor describe intcone(gens / g).
struct GapData {
  nat g = 1;
  std::vector<nat> gaps;
  nat conductor = 0;

  friend bool operator==(const GapData&, const GapData&) = default;
};

inline GapData gaps_and_conductor(const SemigroupGenerators& gens) {
  if (gens.empty()) throw std::invalid_argument("gaps_and_conductor needs a nonempty generator set");
  GapData out;
  out.g = gens.gcd();
  std::vector<nat> reduced;
  for (nat x : gens.gens) reduced.push_back(x / out.g);
  SemigroupGenerators red(std::move(reduced));

  const nat lo = red.gens.front(), hi = red.gens.back();
  // Classical window; grown until the table ends with `lo` consecutive
  // members, which certifies that everything beyond is reachable.
  nat bound = (lo - 1) * (hi - 1) + hi + 1;
  for (;;) {
    std::vector<char> reach = intcone_table(red, bound);
    bool run_ok = true;
    for (nat n = bound + 1 - lo; n <= bound; ++n) run_ok = run_ok && reach[n];
    if (run_ok) {
      nat last_gap_plus_1 = 0;
      for (nat n = 0; n <= bound; ++n)
        if (!reach[n]) last_gap_plus_1 = n + 1;
      out.conductor = last_gap_plus_1;
      for (nat n = 0; n < out.conductor; ++n)
        if (!reach[n]) out.gaps.push_back(n);
      return out;
    }
    bound *= 2;
  }
}

/// {bases} + intcone(gens) description of a subset of N. Empty bases denote
/// the empty set.
struct MilpNatRep {
  std::vector<nat> bases;
  SemigroupGenerators gens;

  MilpNatRep() = default;
  MilpNatRep(std::vector<nat> b, SemigroupGenerators g) : bases(std::move(b)), gens(std::move(g)) {
    std::sort(bases.begin(), bases.end());
    bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  }
  friend bool operator==(const MilpNatRep&, const MilpNatRep&) = default;
};

/// Exact membership window for {bases} + intcone(gens) on [0, upto].
inline std::vector<char> milp_nat_table(const MilpNatRep& rep, nat upto) {
  std::vector<char> member(upto + 1, 0);
  for (nat b : rep.bases)
    if (b <= upto) member[b] = 1;
  for (nat n = 0; n <= upto; ++n) {
    if (member[n]) continue;
    for (nat g : rep.gens.gens) {
      if (g > n) break;
      if (member[n - g]) {
        member[n] = 1;
        break;
      }
    }
  }
  return member;
}

/// Canonical eventually periodic set denoted by the representation. The set
/// becomes periodic with period gcd(gens) once every shifted reduced
/// semigroup has passed its conductor.
inline EventuallyPeriodicSet milp_nat_to_eps(const MilpNatRep& rep) {
  if (rep.bases.empty()) return EventuallyPeriodicSet{};
  if (rep.gens.empty()) return natset::from_parts({}, rep.bases);

  const nat g = rep.gens.gcd();
  const nat conductor = gaps_and_conductor(rep.gens).conductor;
  const nat t0 = rep.bases.back() + g * conductor;
  const nat window_len = t0 + 2 * g + 1;
  std::vector<char> window = milp_nat_table(rep, window_len - 1);
  return natset::canonicalize_window(window, t0, g);
}

/// Inverse direction: nullopt when the set is not rational-MILP representable;
/// otherwise bases are the minimal members of each represented residue class
/// of the closure step, and the generator list is that single step (empty for
/// finite sets). Round-trips through milp_nat_to_eps.
inline std::optional<MilpNatRep> eps_to_milp_nat(const EventuallyPeriodicSet& s) {
  natset::MilpRepVerdict verdict = natset::decide_rational_milp(s);
  using Kind = natset::MilpRepVerdict::Kind;
  if (verdict.kind == Kind::NotRepresentable) return std::nullopt;
  if (verdict.kind == Kind::FiniteSet) return MilpNatRep{s.exceptional, SemigroupGenerators{}};

  const nat a = verdict.step;
  const nat scan_to = s.threshold + std::lcm(a, s.period) + a;
  std::vector<char> seen(a, 0);
  std::vector<nat> bases;
  for (nat n = 0; n <= scan_to; ++n) {
    if (!s.contains(n)) continue;
    if (!seen[n % a]) {
      seen[n % a] = 1;
      bases.push_back(n);
    }
  }
  return MilpNatRep{std::move(bases), SemigroupGenerators{{a}}};
}

}  // namespace micprep::semigroup
