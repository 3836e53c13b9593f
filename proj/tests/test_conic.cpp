#include "micprep/conic.hpp"
#include "micprep/conic_build.hpp"
#include "micprep/conic_text.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace micprep;
using namespace micprep::conic;

namespace {

Q2 q(long long n, long long d = 1) { return Q2{Rat(n, d)}; }

AffineRow row(std::size_t nvars, std::initializer_list<std::pair<std::size_t, Q2>> coeffs,
              Q2 constant = {}) {
  AffineRow r;
  r.coeffs.assign(nvars, Q2{});
  for (const auto& [j, c] : coeffs) r.coeffs[j] = c;
  r.constant = constant;
  return r;
}

// {u : lo <= u <= hi} in R^1 as two Nonneg rows.
LinConicSet interval_set(const Rat& lo, const Rat& hi) {
  LinConicSet s;
  s.nvars = 1;
  s.rows.push_back(row(1, {{0, q(1)}}, Q2{lo}));
  s.rows.push_back(row(1, {{0, q(-1)}}, Q2{-hi}));
  s.blocks.push_back({ConeTag::Nonneg, 0, 2});
  return s;
}

// Unit disk centered at (cx, cy): Lorentz rows (1, x - cx, y - cy).
LinConicSet unit_disk(const Rat& cx, const Rat& cy) {
  LinConicSet s;
  s.nvars = 2;
  s.rows.push_back(row(2, {}, q(-1)));
  s.rows.push_back(row(2, {{0, q(1)}}, Q2{cx}));
  s.rows.push_back(row(2, {{1, q(1)}}, Q2{cy}));
  s.blocks.push_back({ConeTag::Lorentz, 0, 3});
  return s;
}

// The sqrt(2)-strip of Example-style data: two Lorentz blocks plus x >= 0.
LinConicSet k_eps_set(const Rat& eps) {
  LinConicSet s;
  s.nvars = 2;
  s.rows.push_back(row(2, {{1, q(1)}}, Q2{-eps}));       // x2 + eps
  s.rows.push_back(row(2, {{0, q(1)}}));                 // x1
  s.rows.push_back(row(2, {{0, q(1)}}));                 // x1
  s.rows.push_back(row(2, {{0, q(2)}}, Q2{Rat(-2 * eps)}));  // 2 x1 + 2 eps
  s.rows.push_back(row(2, {{1, q(1)}}));                 // x2
  s.rows.push_back(row(2, {{1, q(1)}}));                 // x2
  s.rows.push_back(row(2, {{0, q(1)}}));
  s.rows.push_back(row(2, {{1, q(1)}}));
  s.blocks.push_back({ConeTag::Lorentz, 0, 3});
  s.blocks.push_back({ConeTag::Lorentz, 3, 3});
  s.blocks.push_back({ConeTag::Nonneg, 6, 2});
  return s;
}

std::vector<Q2> pt(std::initializer_list<Rat> vals) {
  std::vector<Q2> p;
  for (const Rat& v : vals) p.emplace_back(v);
  return p;
}

}  // namespace

TEST_CASE("exact evaluation of cone blocks") {
  SECTION("3-4-5 Lorentz point") {
    LinConicSet s;
    s.nvars = 3;
    s.rows.push_back(row(3, {{0, q(1)}}));
    s.rows.push_back(row(3, {{1, q(1)}}));
    s.rows.push_back(row(3, {{2, q(1)}}));
    s.blocks.push_back({ConeTag::Lorentz, 0, 3});
    FeasReport rep = eval_point(s, pt({Rat(5), Rat(3), Rat(4)}));
    CHECK(rep.feasible);
    CHECK(rep.exact);
    CHECK(rep.max_residual == 0.0);
    CHECK_FALSE(eval_point(s, pt({Rat(5), Rat(3), Rat(41, 10)})).feasible);
  }
  SECTION("rotated Lorentz float point with residual") {
    LinConicSet s;
    s.nvars = 3;
    for (std::size_t j = 0; j < 3; ++j) s.rows.push_back(row(3, {{j, q(1)}}));
    s.blocks.push_back({ConeTag::RotatedLorentz, 0, 3});
    std::vector<double> p{1.0, 1.0, 1.1};
    FeasReport rep = eval_point(s, std::span<const double>(p));
    CHECK_FALSE(rep.feasible);
    CHECK_FALSE(rep.exact);
    CHECK_THAT(rep.max_residual, Catch::Matchers::WithinAbs(0.21, 1e-12));
  }
  SECTION("dimension mismatch") {
    LinConicSet s = interval_set(Rat(0), Rat(1));
    CHECK_THROWS_AS(eval_point(s, pt({Rat(0), Rat(0)})), dimension_mismatch);
  }
}

TEST_CASE("exact evaluation of the sqrt(2)-strip at integer points") {
  LinConicSet keps = k_eps_set(Rat(2, 5));
  // (1,1): sqrt(2) - 2/5 > 1, so the first Lorentz block fails; exactly the
  // fractional-part window argument in reverse.
  CHECK_FALSE(eval_point(keps, pt({Rat(1), Rat(1)})).feasible);
  CHECK(eval_point(keps, pt({Rat(0), Rat(0)})).feasible);
  CHECK(eval_point(keps, pt({Rat(5), Rat(7)})).feasible);
  CHECK_FALSE(eval_point(keps, pt({Rat(5), Rat(8)})).feasible);
  // A Q[sqrt2] point right on the lower boundary: x2 = sqrt(2) x1 - eps.
  std::vector<Q2> boundary{Q2{Rat(1)}, Q2{Rat(-2, 5), Rat(1)}};
  CHECK(eval_point(keps, boundary).feasible);
}

TEST_CASE("conic hull slices") {
  SECTION("interval [1,2]") {
    LinConicSet t = interval_set(Rat(1), Rat(2));
    LinConicSet hull = conic_hull(t, pt({Rat(3, 2)}));
    CHECK(hull.nvars == 2);
    CHECK(eval_point(hull, pt({Rat(3, 2), Rat(1)})).feasible);
    CHECK(eval_point(hull, pt({Rat(1), Rat(1)})).feasible);
    CHECK_FALSE(eval_point(hull, pt({Rat(5, 2), Rat(1)})).feasible);
    CHECK(eval_point(hull, pt({Rat(3), Rat(3, 2)})).feasible);  // 2 in [1.5, 3]
    // z = 0 slice is the recession cone {0} of a bounded set.
    CHECK(eval_point(hull, pt({Rat(0), Rat(0)})).feasible);
    CHECK_FALSE(eval_point(hull, pt({Rat(1, 2), Rat(0)})).feasible);
    CHECK_FALSE(eval_point(hull, pt({Rat(1), Rat(-1)})).feasible);  // z >= 0
  }
  SECTION("unit disk at (3,0)") {
    LinConicSet hull = conic_hull(unit_disk(Rat(3), Rat(0)), pt({Rat(3), Rat(0)}));
    CHECK(eval_point(hull, pt({Rat(3), Rat(0), Rat(1)})).feasible);
    CHECK_FALSE(eval_point(hull, pt({Rat(1), Rat(0), Rat(0)})).feasible);
    CHECK(eval_point(hull, pt({Rat(0), Rat(0), Rat(0)})).feasible);
  }
  SECTION("half line {x >= 1} recedes to {x >= 0}") {
    LinConicSet t;
    t.nvars = 1;
    t.rows.push_back(row(1, {{0, q(1)}}, q(1)));
    t.blocks.push_back({ConeTag::Nonneg, 0, 1});
    LinConicSet hull = conic_hull(t, pt({Rat(2)}));
    CHECK(eval_point(hull, pt({Rat(7), Rat(0)})).feasible);
    CHECK_FALSE(eval_point(hull, pt({Rat(-1), Rat(0)})).feasible);
  }
  SECTION("infeasible witness is rejected") {
    CHECK_THROWS_AS(conic_hull(interval_set(Rat(1), Rat(2)), pt({Rat(3)})), witness_infeasible);
  }
}

TEST_CASE("bounded union formulation") {
  SECTION("single interval piece") {
    BoundedUnionSpec spec;
    spec.nx = 1;
    spec.ny = 0;
    spec.pieces.push_back({interval_set(Rat(0), Rat(1)), pt({Rat(1, 2)})});
    MicpFormulation f = build_bounded_union(spec);
    CHECK(f.nx == 1);
    CHECK(f.nz == 1);
    for (const Rat& x : {Rat(0), Rat(1, 3), Rat(1)}) {
      auto w = witness_bounded_union(spec, 0, pt({x}));
      CHECK(eval_point(f, w).feasible);
    }
    CHECK_THROWS_AS(witness_bounded_union(spec, 0, pt({Rat(2)})), witness_infeasible);
  }
  SECTION("two distant disks") {
    BoundedUnionSpec spec;
    spec.nx = 2;
    spec.ny = 0;
    spec.pieces.push_back({unit_disk(Rat(0), Rat(0)), pt({Rat(0), Rat(0)})});
    spec.pieces.push_back({unit_disk(Rat(10), Rat(0)), pt({Rat(10), Rat(0)})});
    MicpFormulation f = build_bounded_union(spec);
    BoundedUnionLayout L = bounded_union_layout(spec);

    auto w = witness_bounded_union(spec, 1, pt({Rat(10), Rat(0)}));
    CHECK(w[L.z(1)] == q(1));
    CHECK(w[L.t()] == q(100));
    CHECK(eval_point(f, w).feasible);

    // x = (5,0): under either selector the coupling forces the other copy to
    // zero and the selected copy to x itself, which misses its disk by 4.
    for (std::size_t sel : {std::size_t{0}, std::size_t{1}}) {
      std::vector<Q2> p(L.total(), Q2{});
      p[L.x(0)] = q(5);
      p[L.xi(sel, 0)] = q(5);
      p[L.z(sel)] = q(1);
      p[L.t()] = q(25);
      FeasReport rep = eval_point(f, p);
      CHECK_FALSE(rep.feasible);
      double worst = 0;
      for (const auto& blk : rep.blocks)
        if (blk.tag == ConeTag::Lorentz) worst = std::max(worst, blk.residual);
      CHECK(worst >= 4.0);  // analytic distance from (5,0) to either disk
    }
  }
}

TEST_CASE("natural-number union formulation") {
  const std::vector<nat> a0{7}, bases{1, 4};
  const nat step = 3;
  MicpFormulation f = build_nat_union_formulation(a0, bases, step);
  NatUnionLayout L{bases.size(), a0.size()};

  SECTION("progression branch witness for x = 10") {
    auto w = nat_union_witness(a0, bases, step, 10);
    REQUIRE(w.has_value());
    CHECK((*w)[L.eta()] == q(1));
    CHECK((*w)[L.nu(0)] == q(1));
    CHECK((*w)[L.q()] == q(3));
    CHECK(eval_point(f, *w).feasible);
  }
  SECTION("finite branch witness for x = 7") {
    auto w = nat_union_witness(a0, bases, step, 7);
    REQUIRE(w.has_value());
    CHECK((*w)[L.eta()] == q(0));
    CHECK((*w)[L.lambda(0)] == q(1));
    CHECK((*w)[L.q()] == q(0));
    CHECK((*w)[L.t()] == q(0));
    CHECK(eval_point(f, *w).feasible);
  }
  SECTION("x = 6 has no witness") {
    CHECK_FALSE(nat_union_witness(a0, bases, step, 6).has_value());
    auto xs = enumerate_nat_union(f, a0, bases, step, 10);
    CHECK(std::find(xs.begin(), xs.end(), 6) == xs.end());
  }
  SECTION("enumeration reproduces the denoted set") {
    auto xs = enumerate_nat_union(f, a0, bases, step, 12);
    std::vector<nat> expect;
    for (nat x = 0; x <= 4 + 12 * step; ++x) {
      bool in = x == 7;
      for (nat b : bases) in = in || (x >= b && (x - b) % step == 0 && (x - b) / step <= 12);
      if (in) expect.push_back(x);
    }
    CHECK(xs == expect);
  }
}

TEST_CASE("point decomposition along integer rays") {
  SECTION("single ray, gamma 2.5") {
    auto d = decompose_point({{Rat(0), Rat(0)}}, {{Int(1), Int(0)}}, {Rat(1)}, {Rat(5, 2)});
    CHECK(d.integer_parts == std::vector<Int>{2});
    CHECK(d.fractional == std::vector<Rat>{Rat(1, 2)});
    for (std::size_t j = 0; j < 2; ++j) {
      Rat recon = d.hat_point[j];
      recon += Rat(d.integer_parts[0]) * Rat(Int(j == 0 ? 1 : 0));
      CHECK(recon == d.point[j]);
    }
  }
  SECTION("gamma (0.9, 3.0)") {
    auto d = decompose_point({{Rat(1)}}, {{Int(2)}, {Int(5)}}, {Rat(1)}, {Rat(9, 10), Rat(3)});
    CHECK(d.integer_parts == std::vector<Int>{Int(0), Int(3)});
    CHECK(d.fractional == std::vector<Rat>{Rat(9, 10), Rat(0)});
  }
  SECTION("invalid multipliers") {
    CHECK_THROWS_AS(decompose_point({{Rat(0)}}, {}, {Rat(1, 2)}, {}), multiplier_invalid);
    CHECK_THROWS_AS(decompose_point({{Rat(0)}}, {{Int(1)}}, {Rat(1)}, {Rat(-1)}),
                    multiplier_invalid);
  }
  SECTION("random rational reconstruction is exact") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long long> num(0, 40), den(1, 12), rc(-4, 4);
    for (int iter = 0; iter < 100; ++iter) {
      std::size_t nv = 1 + rng() % 3, nr = 1 + rng() % 5;
      std::vector<std::vector<Rat>> verts(nv, std::vector<Rat>(3));
      std::vector<std::vector<Int>> rays(nr, std::vector<Int>(3));
      for (auto& v : verts)
        for (auto& c : v) c = Rat(rc(rng), den(rng));
      for (auto& r : rays)
        for (auto& c : r) c = rc(rng);
      std::vector<Rat> lambdas(nv), gammas(nr);
      Rat rest(1);
      for (std::size_t i = 0; i + 1 < nv; ++i) {
        lambdas[i] = Rat(rest / Rat(2 + (long long)(rng() % 3)));
        rest -= lambdas[i];
      }
      lambdas[nv - 1] = rest;
      for (auto& g : gammas) g = Rat(num(rng), den(rng));
      auto d = decompose_point(verts, rays, lambdas, gammas);
      for (std::size_t j = 0; j < 3; ++j) {
        Rat recon = d.hat_point[j];
        for (std::size_t k = 0; k < nr; ++k) recon += Rat(Rat(d.integer_parts[k]) * Rat(rays[k][j]));
        REQUIRE(recon == d.point[j]);
      }
      for (std::size_t k = 0; k < nr; ++k) {
        REQUIRE(d.fractional[k] >= 0);
        REQUIRE(d.fractional[k] < 1);
        REQUIRE(d.integer_parts[k] >= 0);
      }
    }
  }
}

TEST_CASE("milprep window check") {
  SECTION("even numbers match {0} + intcone(2)") {
    auto oracle = [](const std::vector<Rat>& p) {
      return is_integer(p[0]) && p[0] >= 0 && rat_num(p[0]) % 2 == 0;
    };
    MatchReport rep = milprep_window_check(oracle, {{{Rat(0)}}}, {{Int(2)}},
                                           {{Int(0)}, {Int(100)}});
    CHECK(rep.equal);
    CHECK_FALSE(rep.bound_hit);
  }
  SECTION("{0,4} ∪ even >= 6 matches {0} + intcone(4,6)") {
    auto oracle = [](const std::vector<Rat>& p) {
      if (!is_integer(p[0]) || p[0] < 0) return false;
      Int n = rat_num(p[0]);
      return n == 0 || n == 4 || (n >= 6 && n % 2 == 0);
    };
    MatchReport rep = milprep_window_check(oracle, {{{Rat(0)}}}, {{Int(4)}, {Int(6)}},
                                           {{Int(0)}, {Int(60)}});
    CHECK(rep.equal);
  }
  SECTION("hyperbola candidates are refuted") {
    auto oracle = [](const std::vector<Rat>& p) {
      return is_integer(p[0]) && p[0] >= 1 && Rat(p[0] * p[1]) >= 1;
    };
    // Pieces covering columns 1..3 down to their column minima 1/z.
    std::vector<std::vector<Rat>> piece;
    for (long long z = 1; z <= 3; ++z)
      for (long long y = 1; y <= 4; ++y) piece.push_back({Rat(z), Rat(y)});
    for (long long z = 2; z <= 3; ++z) piece.push_back({Rat(z), Rat(1, z)});

    // A ray with negative second component escapes below the axis.
    WindowBox window{{Int(0), Int(-10)}, {Int(8), Int(8)}};
    MatchReport neg = milprep_window_check(oracle, {piece}, {{Int(1), Int(-1)}}, window);
    CHECK_FALSE(neg.equal);
    REQUIRE_FALSE(neg.extra.empty());
    bool below_axis = false;
    for (const auto& p : neg.extra) below_axis = below_axis || p[1] < 0;
    CHECK(below_axis);

    // Nonnegative-second-component rays cannot reach the low end 1/z of
    // columns beyond the pieces; the fine grid exposes the hole at (5, 1/5).
    WindowBox small{{Int(0), Int(0)}, {Int(5), Int(2)}};
    MatchReport pos = milprep_window_check(oracle, {piece}, {{Int(1), Int(0)}, {Int(0), Int(1)}},
                                           small, /*grid_denominator=*/30);
    CHECK_FALSE(pos.equal);
    CHECK(pos.extra.empty());
    REQUIRE_FALSE(pos.missing.empty());
    bool low_hole = false;
    for (const auto& p : pos.missing) low_hole = low_hole || (p[0] > 3 && p[1] < 1);
    CHECK(low_hole);
  }
}

TEST_CASE("conic text emission") {
  MicpFormulation f = build_nat_union_formulation({7}, {1, 4}, 3);
  std::string text = emit_conic_text(f);
  CHECK(text.find("kind formulation") != std::string::npos);
  CHECK(text.find("block rlorentz") != std::string::npos);

  SECTION("re-emission is byte identical") {
    auto parsed = parse_conic_text(text);
    REQUIRE(std::holds_alternative<MicpFormulation>(parsed));
    CHECK(emit_conic_text(std::get<MicpFormulation>(parsed)) == text);
  }
  SECTION("two-interval union has one rotated block per piece") {
    BoundedUnionSpec spec;
    spec.nx = 1;
    spec.ny = 0;
    spec.pieces.push_back({interval_set(Rat(0), Rat(1)), pt({Rat(0)})});
    spec.pieces.push_back({interval_set(Rat(3), Rat(4)), pt({Rat(3)})});
    std::string utext = emit_conic_text(build_bounded_union(spec));
    std::size_t count = 0;
    for (std::size_t at = utext.find("block rlorentz"); at != std::string::npos;
         at = utext.find("block rlorentz", at + 1))
      ++count;
    CHECK(count == 2);
    auto parsed = parse_conic_text(utext);
    CHECK(emit_conic_text(std::get<MicpFormulation>(parsed)) == utext);
  }
  SECTION("irrational data is rejected") {
    LinConicSet s;
    s.nvars = 1;
    s.rows.push_back(row(1, {{0, Q2{Rat(0), Rat(1)}}}));
    s.blocks.push_back({ConeTag::Nonneg, 0, 1});
    CHECK_THROWS_AS(emit_conic_text(s), irrational_data);
    CHECK(eval_point(s, pt({Rat(1)})).feasible);  // but exact eval still works
  }
}

TEST_CASE("missing hyperbola column via proj of union members") {
  // Sampled members of each piece of a two-disk union evaluate feasibly.
  BoundedUnionSpec spec;
  spec.nx = 2;
  spec.ny = 0;
  spec.pieces.push_back({unit_disk(Rat(0), Rat(0)), pt({Rat(0), Rat(0)})});
  spec.pieces.push_back({unit_disk(Rat(10), Rat(0)), pt({Rat(10), Rat(0)})});
  MicpFormulation f = build_bounded_union(spec);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long long> tpick(0, 12);
  for (int iter = 0; iter < 50; ++iter) {
    // Rational points inside the disk via the circle parametrization scaled
    // by 1/2.
    long long t = tpick(rng);
    Rat denom(1 + t * t);
    Rat px = Rat(Rat(1 - t * t) / denom / 2), py = Rat(Rat(2 * t) / denom / 2);
    std::size_t piece = iter % 2;
    Rat cx = piece == 0 ? Rat(0) : Rat(10);
    auto w = witness_bounded_union(spec, piece, pt({Rat(px + cx), py}));
    REQUIRE(eval_point(f, w).feasible);
  }
}
