// Constructive side of the conic module: closed conic hulls, the explicit
// mixed-integer formulation for a bounded union of convex pieces, the
// natural-number union formulation, exact point decomposition along integer
// rays, and the window checker that falsifies candidate
// "pieces + intcone(rays)" descriptions against a membership oracle.
#pragma once

#include "micprep/conic.hpp"
#include "micprep/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace micprep::conic {

/// Homogenization {(u, z) : A u - b z in K, z >= 0} of t = {u : A u - b in K}.
/// The z = 1 slice is t and the z = 0 slice is t's recession cone, so for
/// nonempty closed convex t this is the closed conic hull. The witness
/// certifies nonemptiness and is checked exactly.
inline LinConicSet conic_hull(const LinConicSet& t, std::span<const Q2> witness) {
  t.validate();
  if (!eval_point(t, witness).feasible)
    throw witness_infeasible("conic_hull: stored witness fails exact evaluation");

  LinConicSet hull;
  hull.nvars = t.nvars + 1;
  for (const AffineRow& row : t.rows) {
    AffineRow h;
    h.coeffs = row.coeffs;
    h.coeffs.push_back(-row.constant);  // offset now scales with z
    h.constant = Q2{};
    hull.rows.push_back(std::move(h));
  }
  hull.blocks = t.blocks;

  AffineRow zrow;
  zrow.coeffs.assign(hull.nvars, Q2{});
  zrow.coeffs.back() = Q2{Rat(1)};
  hull.rows.push_back(std::move(zrow));
  hull.blocks.push_back({ConeTag::Nonneg, t.rows.size(), 1});
  return hull;
}

/// Union-of-pieces input: every piece lives over the same (x, y) variables
/// and carries a feasible point certifying nonemptiness.
struct BoundedUnionSpec {
  struct Piece {
    LinConicSet set;
    std::vector<Q2> witness;
  };
  std::size_t nx = 0, ny = 0;
  std::vector<Piece> pieces;

  void validate() const {
    if (pieces.empty()) throw std::invalid_argument("union needs at least one piece");
    for (const auto& p : pieces) {
      p.set.validate();
      if (p.set.nvars != nx + ny) throw dimension_mismatch("piece width != nx+ny");
      if (p.witness.size() != nx + ny) throw dimension_mismatch("witness width != nx+ny");
      if (!eval_point(p.set, p.witness).feasible)
        throw witness_infeasible("piece witness fails exact evaluation");
    }
  }
};

/// Variable layout of build_bounded_union:
///   [ x (nx) | x_1 y_1 ... x_k y_k ((nx+ny) k) | t (1) | z (k) ].
struct BoundedUnionLayout {
  std::size_t nx = 0, ny = 0, k = 0;
  std::size_t x(std::size_t j) const { return j; }
  std::size_t xi(std::size_t i, std::size_t j) const { return nx + i * (nx + ny) + j; }
  std::size_t yi(std::size_t i, std::size_t j) const { return nx + i * (nx + ny) + nx + j; }
  std::size_t t() const { return nx + k * (nx + ny); }
  std::size_t z(std::size_t i) const { return t() + 1 + i; }
  std::size_t total() const { return t() + 1 + k; }
};

inline BoundedUnionLayout bounded_union_layout(const BoundedUnionSpec& spec) {
  return {spec.nx, spec.ny, spec.pieces.size()};
}

/// The disjunctive formulation for a finite union of nonempty closed convex
/// pieces: x = sum x_i, each (x_i, y_i, z_i) in the conic hull of its piece,
/// sum z_i = 1 with binary z, and the rotated-cone coupling
/// ||x_i||^2 <= z_i t with t >= 0, which pins x_i = 0 on unselected pieces
/// without any boundedness assumption.
inline MicpFormulation build_bounded_union(const BoundedUnionSpec& spec) {
  spec.validate();
  const BoundedUnionLayout L = bounded_union_layout(spec);
  const std::size_t n = L.total();
  const Q2 one{Rat(1)}, minus_one{Rat(-1)};

  MicpFormulation f;
  f.nx = spec.nx;
  f.nz = L.k;
  f.ny = n - f.nx - f.nz;
  LinConicSet& b = f.body;
  b.nvars = n;

  auto blank = [&] {
    AffineRow r;
    r.coeffs.assign(n, Q2{});
    return r;
  };
  auto push_block = [&](ConeTag tag, std::size_t count) {
    b.blocks.push_back({tag, b.rows.size() - count, count});
  };

  // x_j - sum_i x_{i,j} = 0
  for (std::size_t j = 0; j < spec.nx; ++j) {
    AffineRow r = blank();
    r.coeffs[L.x(j)] = one;
    for (std::size_t i = 0; i < L.k; ++i) r.coeffs[L.xi(i, j)] = minus_one;
    b.rows.push_back(std::move(r));
  }
  push_block(ConeTag::Zero, spec.nx);

  // hull of each piece over (x_i, y_i, z_i), block structure preserved
  for (std::size_t i = 0; i < L.k; ++i) {
    const LinConicSet& piece = spec.pieces[i].set;
    const std::size_t base = b.rows.size();
    for (const AffineRow& row : piece.rows) {
      AffineRow r = blank();
      for (std::size_t j = 0; j < spec.nx + spec.ny; ++j) r.coeffs[L.xi(i, 0) + j] = row.coeffs[j];
      r.coeffs[L.z(i)] = -row.constant;
      b.rows.push_back(std::move(r));
    }
    for (const ConeBlock& blk : piece.blocks)
      b.blocks.push_back({blk.tag, base + blk.first, blk.count});
  }

  // sum z_i = 1
  {
    AffineRow r = blank();
    for (std::size_t i = 0; i < L.k; ++i) r.coeffs[L.z(i)] = one;
    r.constant = one;
    b.rows.push_back(std::move(r));
    push_block(ConeTag::Zero, 1);
  }

  // 0 <= z_i <= 1 and t >= 0
  for (std::size_t i = 0; i < L.k; ++i) {
    AffineRow r = blank();
    r.coeffs[L.z(i)] = one;
    b.rows.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < L.k; ++i) {
    AffineRow r = blank();
    r.coeffs[L.z(i)] = minus_one;
    r.constant = minus_one;  // value = 1 - z_i
    b.rows.push_back(std::move(r));
  }
  {
    AffineRow r = blank();
    r.coeffs[L.t()] = one;
    b.rows.push_back(std::move(r));
    push_block(ConeTag::Nonneg, 2 * L.k + 1);
  }

  // ||x_i||^2 <= z_i t
  for (std::size_t i = 0; i < L.k; ++i) {
    AffineRow rs = blank();
    rs.coeffs[L.z(i)] = one;
    b.rows.push_back(std::move(rs));
    AffineRow rt = blank();
    rt.coeffs[L.t()] = one;
    b.rows.push_back(std::move(rt));
    for (std::size_t j = 0; j < spec.nx; ++j) {
      AffineRow rw = blank();
      rw.coeffs[L.xi(i, j)] = one;
      b.rows.push_back(std::move(rw));
    }
    push_block(ConeTag::RotatedLorentz, 2 + spec.nx);
  }

  f.validate();
  return f;
}

/// Feasible point of the union formulation for a member (x, y) of piece i:
/// the selected copy carries the point, every other copy is zero, and
/// t = ||x||^2.
inline std::vector<Q2> witness_bounded_union(const BoundedUnionSpec& spec, std::size_t piece,
                                             std::span<const Q2> xy) {
  if (piece >= spec.pieces.size()) throw std::invalid_argument("piece index out of range");
  if (xy.size() != spec.nx + spec.ny) throw dimension_mismatch("point width != nx+ny");
  if (!eval_point(spec.pieces[piece].set, xy).feasible)
    throw witness_infeasible("point is not in the selected piece");

  const BoundedUnionLayout L = bounded_union_layout(spec);
  std::vector<Q2> pt(L.total(), Q2{});
  Q2 nrm2{};
  for (std::size_t j = 0; j < spec.nx; ++j) {
    pt[L.x(j)] = xy[j];
    pt[L.xi(piece, j)] = xy[j];
    nrm2 += xy[j] * xy[j];
  }
  for (std::size_t j = 0; j < spec.ny; ++j) pt[L.yi(piece, j)] = xy[spec.nx + j];
  pt[L.t()] = nrm2;
  pt[L.z(piece)] = Q2{Rat(1)};
  return pt;
}

/// Variable layout of build_nat_union_formulation:
///   [ x | x1 x2 beta(n) alpha(m) t | q nu(n) lambda(m) eta ].
struct NatUnionLayout {
  std::size_t n = 0, m = 0;  // |bases|, |a0|
  std::size_t x() const { return 0; }
  std::size_t x1() const { return 1; }
  std::size_t x2() const { return 2; }
  std::size_t beta(std::size_t i) const { return 3 + i; }
  std::size_t alpha(std::size_t i) const { return 3 + n + i; }
  std::size_t t() const { return 3 + n + m; }
  std::size_t q() const { return 4 + n + m; }
  std::size_t nu(std::size_t i) const { return 5 + n + m + i; }
  std::size_t lambda(std::size_t i) const { return 5 + 2 * n + m + i; }
  std::size_t eta() const { return 5 + 2 * n + 2 * m; }
  std::size_t total() const { return 6 + 2 * n + 2 * m; }
};

/// The explicit formulation of A0 ∪ ({bases} + step N): selector eta picks
/// the progression branch (exactly one nu_i on, q free with q^2 <= eta t) or
/// the finite branch (exactly one lambda_i on, q forced to 0).
inline MicpFormulation build_nat_union_formulation(const std::vector<nat>& a0,
                                                   const std::vector<nat>& bases, nat step) {
  if (step == 0) throw std::invalid_argument("step must be >= 1");
  if (a0.empty() && bases.empty()) throw std::invalid_argument("empty union");
  NatUnionLayout L{bases.size(), a0.size()};
  const std::size_t n = L.total();
  const Q2 one{Rat(1)}, minus_one{Rat(-1)};

  MicpFormulation f;
  f.nx = 1;
  f.nz = L.n + L.m + 2;
  f.ny = n - f.nx - f.nz;
  LinConicSet& b = f.body;
  b.nvars = n;
  auto blank = [&] {
    AffineRow r;
    r.coeffs.assign(n, Q2{});
    return r;
  };

  // x - x1 - x2 = 0
  {
    AffineRow r = blank();
    r.coeffs[L.x()] = one;
    r.coeffs[L.x1()] = minus_one;
    r.coeffs[L.x2()] = minus_one;
    b.rows.push_back(std::move(r));
  }
  // x1 - sum beta_i - step q = 0
  {
    AffineRow r = blank();
    r.coeffs[L.x1()] = one;
    for (std::size_t i = 0; i < L.n; ++i) r.coeffs[L.beta(i)] = minus_one;
    r.coeffs[L.q()] = Q2{Rat(-static_cast<long long>(step))};
    b.rows.push_back(std::move(r));
  }
  // x2 - sum alpha_i = 0
  {
    AffineRow r = blank();
    r.coeffs[L.x2()] = one;
    for (std::size_t i = 0; i < L.m; ++i) r.coeffs[L.alpha(i)] = minus_one;
    b.rows.push_back(std::move(r));
  }
  // beta_i - b_i nu_i = 0 ; alpha_i - a_i lambda_i = 0
  for (std::size_t i = 0; i < L.n; ++i) {
    AffineRow r = blank();
    r.coeffs[L.beta(i)] = one;
    r.coeffs[L.nu(i)] = Q2{Rat(-static_cast<long long>(bases[i]))};
    b.rows.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < L.m; ++i) {
    AffineRow r = blank();
    r.coeffs[L.alpha(i)] = one;
    r.coeffs[L.lambda(i)] = Q2{Rat(-static_cast<long long>(a0[i]))};
    b.rows.push_back(std::move(r));
  }
  // sum nu_i - eta = 0 ; sum lambda_i + eta - 1 = 0
  {
    AffineRow r = blank();
    for (std::size_t i = 0; i < L.n; ++i) r.coeffs[L.nu(i)] = one;
    r.coeffs[L.eta()] = minus_one;
    b.rows.push_back(std::move(r));
  }
  {
    AffineRow r = blank();
    for (std::size_t i = 0; i < L.m; ++i) r.coeffs[L.lambda(i)] = one;
    r.coeffs[L.eta()] = one;
    r.constant = one;
    b.rows.push_back(std::move(r));
  }
  b.blocks.push_back({ConeTag::Zero, 0, b.rows.size()});

  // bounds: binaries in [0,1], q >= 0, t >= 0
  const std::size_t bounds_first = b.rows.size();
  auto lower = [&](std::size_t var) {
    AffineRow r = blank();
    r.coeffs[var] = one;
    b.rows.push_back(std::move(r));
  };
  auto upper1 = [&](std::size_t var) {
    AffineRow r = blank();
    r.coeffs[var] = minus_one;
    r.constant = minus_one;
    b.rows.push_back(std::move(r));
  };
  for (std::size_t i = 0; i < L.n; ++i) {
    lower(L.nu(i));
    upper1(L.nu(i));
  }
  for (std::size_t i = 0; i < L.m; ++i) {
    lower(L.lambda(i));
    upper1(L.lambda(i));
  }
  lower(L.eta());
  upper1(L.eta());
  lower(L.q());
  lower(L.t());
  b.blocks.push_back({ConeTag::Nonneg, bounds_first, b.rows.size() - bounds_first});

  // q^2 <= eta t
  const std::size_t cone_first = b.rows.size();
  lower(L.eta());
  lower(L.t());
  lower(L.q());
  b.blocks.push_back({ConeTag::RotatedLorentz, cone_first, 3});

  f.validate();
  return f;
}

/// Feasible point for a member x of A0 ∪ ({bases} + step N); the progression
/// branch is preferred only when x is not in A0, matching the selector
/// semantics. nullopt when x is in neither part.
inline std::optional<std::vector<Q2>> nat_union_witness(const std::vector<nat>& a0,
                                                        const std::vector<nat>& bases, nat step,
                                                        nat x) {
  NatUnionLayout L{bases.size(), a0.size()};
  std::vector<Q2> pt(L.total(), Q2{});
  auto set = [&](std::size_t var, nat value) { pt[var] = Q2{Rat(value)}; };
  set(L.x(), x);

  for (std::size_t i = 0; i < a0.size(); ++i) {
    if (a0[i] == x) {
      set(L.lambda(i), 1);
      set(L.alpha(i), x);
      set(L.x2(), x);
      return pt;
    }
  }
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (bases[i] <= x && (x - bases[i]) % step == 0) {
      nat q = (x - bases[i]) / step;
      set(L.nu(i), 1);
      set(L.eta(), 1);
      set(L.beta(i), bases[i]);
      set(L.q(), q);
      pt[L.t()] = Q2{Rat(q) * Rat(q)};
      set(L.x1(), x);
      return pt;
    }
  }
  return std::nullopt;
}

/// Every x value whose forced point is feasible for some integer assignment
/// with q <= qmax, verified through eval_point. Used to compare the
/// formulation's integer-feasible projections against the denoted set.
inline std::vector<nat> enumerate_nat_union(const MicpFormulation& f, const std::vector<nat>& a0,
                                            const std::vector<nat>& bases, nat step, nat qmax) {
  NatUnionLayout L{bases.size(), a0.size()};
  std::set<nat> xs;
  // eta = 0 branch: q = 0, one lambda on.
  for (std::size_t i = 0; i < a0.size(); ++i) {
    std::vector<Q2> pt(L.total(), Q2{});
    pt[L.lambda(i)] = Q2{Rat(1)};
    pt[L.alpha(i)] = Q2{Rat(a0[i])};
    pt[L.x2()] = Q2{Rat(a0[i])};
    pt[L.x()] = Q2{Rat(a0[i])};
    if (eval_point(f, pt).feasible) xs.insert(a0[i]);
  }
  // eta = 1 branch: one nu on, q in 0..qmax.
  for (std::size_t i = 0; i < bases.size(); ++i) {
    for (nat q = 0; q <= qmax; ++q) {
      nat x = bases[i] + step * q;
      std::vector<Q2> pt(L.total(), Q2{});
      pt[L.eta()] = Q2{Rat(1)};
      pt[L.nu(i)] = Q2{Rat(1)};
      pt[L.beta(i)] = Q2{Rat(bases[i])};
      pt[L.q()] = Q2{Rat(q)};
      pt[L.t()] = Q2{Rat(q) * Rat(q)};
      pt[L.x1()] = Q2{Rat(x)};
      pt[L.x()] = Q2{Rat(x)};
      if (eval_point(f, pt).feasible) xs.insert(x);
    }
  }
  return {xs.begin(), xs.end()};
}

struct multiplier_invalid : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Exact split of a conic-combination point into its fractional "hat" part
/// and the integer ray multiples: point = hat + sum floor(gamma_j) r_j with
/// every fractional multiplier in [0, 1).
struct PointDecomposition {
  std::vector<Rat> point;           // sum lambda_i v_i + sum gamma_j r_j
  std::vector<Rat> hat_point;       // sum lambda_i v_i + sum frac(gamma_j) r_j
  std::vector<Rat> lambdas;
  std::vector<Rat> fractional;      // gamma_j - floor(gamma_j)
  std::vector<Int> integer_parts;   // floor(gamma_j), in N
};

inline PointDecomposition decompose_point(const std::vector<std::vector<Rat>>& vertices,
                                          const std::vector<std::vector<Int>>& rays,
                                          const std::vector<Rat>& lambdas,
                                          const std::vector<Rat>& gammas) {
  if (vertices.size() != lambdas.size()) throw dimension_mismatch("one lambda per vertex");
  if (rays.size() != gammas.size()) throw dimension_mismatch("one gamma per ray");
  if (vertices.empty()) throw std::invalid_argument("need at least one vertex");
  const std::size_t d = vertices.front().size();
  for (const auto& v : vertices)
    if (v.size() != d) throw dimension_mismatch("vertex dimension mismatch");
  for (const auto& r : rays)
    if (r.size() != d) throw dimension_mismatch("ray dimension mismatch");

  Rat sum{};
  for (const Rat& l : lambdas) {
    if (l < 0) throw multiplier_invalid("lambda must be nonnegative");
    sum += l;
  }
  if (sum != 1) throw multiplier_invalid("lambdas must sum to 1");
  for (const Rat& g : gammas)
    if (g < 0) throw multiplier_invalid("gamma must be nonnegative");

  PointDecomposition out;
  out.lambdas = lambdas;
  out.point.assign(d, Rat(0));
  out.hat_point.assign(d, Rat(0));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Rat term = Rat(lambdas[i] * vertices[i][j]);
      out.point[j] += term;
      out.hat_point[j] += term;
    }
  for (std::size_t k = 0; k < rays.size(); ++k) {
    Int whole = rat_floor(gammas[k]);
    Rat frac = Rat(gammas[k] - Rat(whole));
    out.integer_parts.push_back(whole);
    out.fractional.push_back(frac);
    for (std::size_t j = 0; j < d; ++j) {
      out.point[j] += Rat(gammas[k] * Rat(rays[k][j]));
      out.hat_point[j] += Rat(frac * Rat(rays[k][j]));
    }
  }
  return out;
}

/// Result of comparing ⋃ pieces + intcone(rays) against an oracle on a box.
/// `extra` are enumerated points the oracle rejects; `missing` are sampled
/// window grid points (lattice scaled by 1/grid_denominator) the oracle
/// accepts that the enumeration never reaches. When the multiplier bound was
/// hit, a clean `missing` finding is still sound for falsification only if
/// the rays cannot cancel; `bound_hit` records that the cap was active.
struct MatchReport {
  bool equal = false;
  std::vector<std::vector<Rat>> extra;
  std::vector<std::vector<Rat>> missing;
  bool bound_hit = false;
  std::uint64_t enumerated = 0;
};

struct WindowBox {
  std::vector<Int> lo, hi;  // inclusive, componentwise
};

inline MatchReport milprep_window_check(
    const std::function<bool(const std::vector<Rat>&)>& oracle,
    const std::vector<std::vector<std::vector<Rat>>>& pieces,
    const std::vector<std::vector<Int>>& rays, const WindowBox& window,
    nat grid_denominator = 1, std::uint64_t max_multiplier = 64, std::size_t report_cap = 16) {
  if (window.lo.size() != window.hi.size()) throw dimension_mismatch("window lo/hi widths differ");
  const std::size_t d = window.lo.size();
  for (const auto& r : rays) {
    if (r.size() != d) throw dimension_mismatch("ray dimension != window dimension");
    bool zero = std::all_of(r.begin(), r.end(), [](const Int& c) { return c == 0; });
    if (zero) throw std::invalid_argument("zero ray");
  }

  auto in_window = [&](const std::vector<Rat>& p) {
    for (std::size_t j = 0; j < d; ++j)
      if (p[j] < Rat(window.lo[j]) || p[j] > Rat(window.hi[j])) return false;
    return true;
  };

  MatchReport rep;

  // Per-ray multiplier bounds. A componentwise-nonnegative ray can never help
  // again once one of its strictly increasing coordinates has passed the
  // window top, which gives an exact bound; rays with a negative component
  // can cancel against others, so only the global cap applies and coverage
  // claims become best-effort (bound_hit).
  std::vector<Rat> piece_min(d), piece_max(d);
  bool have_points = false;
  for (const auto& piece : pieces)
    for (const auto& pt : piece) {
      if (pt.size() != d) throw dimension_mismatch("piece point dimension != window dimension");
      for (std::size_t j = 0; j < d; ++j) {
        if (!have_points || pt[j] < piece_min[j]) piece_min[j] = pt[j];
        if (!have_points || pt[j] > piece_max[j]) piece_max[j] = pt[j];
      }
      have_points = true;
    }
  std::vector<std::uint64_t> ray_bound(rays.size(), max_multiplier);
  bool any_negative = false;
  for (const auto& r : rays)
    any_negative = any_negative ||
                   std::any_of(r.begin(), r.end(), [](const Int& c) { return c < 0; });
  if (any_negative) {
    rep.bound_hit = !rays.empty();
  } else if (have_points) {
    for (std::size_t k = 0; k < rays.size(); ++k) {
      Int best = -1;
      for (std::size_t j = 0; j < d; ++j) {
        if (rays[k][j] <= 0) continue;
        Rat room = Rat(Rat(window.hi[j]) - piece_min[j]);
        Int steps = room < 0 ? Int(0) : rat_floor(Rat(room / Rat(rays[k][j])));
        if (best < 0 || steps < best) best = steps;
      }
      if (best >= 0 && best <= Int(max_multiplier)) {
        ray_bound[k] = best.convert_to<std::uint64_t>();
      } else {
        rep.bound_hit = true;
      }
    }
  }

  // Bounded multiplier enumeration: start from every piece point and walk the
  // ray lattice depth-first.
  std::set<std::vector<Rat>> reached;
  struct State {
    std::vector<Rat> p;
    std::size_t ray = 0;
  };
  std::vector<State> stack;
  for (const auto& piece : pieces)
    for (const auto& pt : piece) stack.push_back({pt, 0});
  while (!stack.empty()) {
    State st = std::move(stack.back());
    stack.pop_back();
    if (st.ray == rays.size()) {
      reached.insert(std::move(st.p));
      continue;
    }
    std::vector<Rat> cur = st.p;
    for (std::uint64_t mult = 0;; ++mult) {
      stack.push_back({cur, st.ray + 1});
      if (mult >= ray_bound[st.ray]) break;
      for (std::size_t j = 0; j < d; ++j) cur[j] += Rat(rays[st.ray][j]);
    }
  }
  rep.enumerated = reached.size();

  for (const auto& p : reached) {
    if (!in_window(p)) continue;
    if (!oracle(p) && rep.extra.size() < report_cap) rep.extra.push_back(p);
  }

  // Grid sweep of the window for uncovered oracle members.
  if (grid_denominator == 0) throw std::invalid_argument("grid denominator must be >= 1");
  const Int den(grid_denominator);
  std::vector<Int> cursor(d), top(d);
  for (std::size_t j = 0; j < d; ++j) {
    cursor[j] = Int(window.lo[j] * den);
    top[j] = Int(window.hi[j] * den);
  }
  std::vector<Int> at = cursor;
  for (;;) {
    std::vector<Rat> p(d);
    for (std::size_t j = 0; j < d; ++j) p[j] = Rat(at[j], den);
    if (oracle(p) && !reached.count(p) && rep.missing.size() < report_cap) rep.missing.push_back(p);
    std::size_t j = 0;
    while (j < d && at[j] == top[j]) {
      at[j] = cursor[j];
      ++j;
    }
    if (j == d) break;
    ++at[j];
  }

  rep.equal = rep.extra.empty() && rep.missing.empty();
  return rep;
}

}  // namespace micprep::conic
