#include "micprep/midpoint.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace micprep;
using namespace micprep::midpoint;

namespace {

Point rank1_point(long long k) {
  // [[1, k], [k, k^2]] row-major; rank 1 by construction.
  return {Rat(1), Rat(k), Rat(k), Rat(k * k)};
}

}  // namespace

TEST_CASE("primality by trial division") {
  CHECK(is_prime(Int(2)));
  CHECK(is_prime(Int(3)));
  CHECK_FALSE(is_prime(Int(1)));
  CHECK_FALSE(is_prime(Int(0)));
  CHECK(is_prime(Int(97)));
  CHECK_FALSE(is_prime(Int(91)));  // 7 * 13
  CHECK(is_prime(Int(104729)));
  CHECK_FALSE(is_prime(Int(104730)));
}

TEST_CASE("oracle membership") {
  SECTION("rank at most one") {
    SetOracle o = RankLeOne{2, 2};
    CHECK(oracle_member(o, rank1_point(5)));
    CHECK(oracle_member(o, {Rat(0), Rat(0), Rat(0), Rat(0)}));
    CHECK_FALSE(oracle_member(o, {Rat(1), Rat(0), Rat(0), Rat(1)}));
  }
  SECTION("annulus on squared norms") {
    SetOracle o = Annulus{Rat(3, 2), Rat(2)};
    CHECK(oracle_member(o, {Rat(3, 2), Rat(0)}));
    CHECK(oracle_member(o, {Rat(2), Rat(0)}));
    CHECK_FALSE(oracle_member(o, {Rat(1), Rat(0)}));
    CHECK_FALSE(oracle_member(o, {Rat(2), Rat(1)}));
  }
  SECTION("piecewise-linear parabola graph") {
    SetOracle o = ParabolaPwl{};
    CHECK(oracle_member(o, {Rat(3), Rat(9)}));
    CHECK(oracle_member(o, {Rat(-2), Rat(4)}));
    CHECK(oracle_member(o, {Rat(5, 2), Rat(13, 2)}));   // midpoint of (2,4),(3,9)
    CHECK_FALSE(oracle_member(o, {Rat(5, 2), Rat(25, 4)}));  // true parabola point
    CHECK(oracle_member(o, {Rat(-3, 2), Rat(5, 2)}));   // on segment [-2,-1]
  }
  SECTION("mixed hyperbola") {
    SetOracle o = HyperbolaMixed{};
    CHECK(oracle_member(o, {Rat(3), Rat(1, 3)}));
    CHECK_FALSE(oracle_member(o, {Rat(3), Rat(1, 4)}));
    CHECK_FALSE(oracle_member(o, {Rat(3, 2), Rat(2)}));  // x1 not integral
    CHECK_FALSE(oracle_member(o, {Rat(0), Rat(5)}));
  }
}

TEST_CASE("certificate verification") {
  SECTION("rank-1 family A_0..A_20") {
    MidpointCertificate c;
    c.oracle = RankLeOne{2, 2};
    for (long long k = 0; k <= 20; ++k) c.points.push_back(rank1_point(k));
    c = verify_certificate(std::move(c));
    CHECK(c.status == CertStatus::Verified);
  }
  SECTION("midpoint determinant of the rank-1 pair is ((k-k')/2)^2") {
    for (long long k = 0; k < 6; ++k)
      for (long long k2 = k + 1; k2 <= 6; ++k2) {
        Point mid = midpoint_of(rank1_point(k), rank1_point(k2));
        Rat det = Rat(mid[0] * mid[3] - mid[1] * mid[2]);
        Rat expect = Rat(Rat(k2 - k, 2) * Rat(k2 - k, 2));
        REQUIRE(det == expect);
      }
  }
  SECTION("primes {3,5}") {
    MidpointCertificate c{Primes{}, {{Rat(3)}, {Rat(5)}}, CertStatus::Unverified, {}};
    CHECK(verify_certificate(c).status == CertStatus::Verified);
  }
  SECTION("primes {3,5,7} refuted by the member midpoint 5") {
    MidpointCertificate c{Primes{}, {{Rat(3)}, {Rat(5)}, {Rat(7)}}, CertStatus::Unverified, {}};
    c = verify_certificate(std::move(c));
    REQUIRE(c.status == CertStatus::Refuted);
    REQUIRE(c.refutation.has_value());
    CHECK(c.refutation->kind == Refutation::Kind::MidpointInSet);
    CHECK(c.refutation->i == 0);
    CHECK(c.refutation->j == 2);
    CHECK(c.refutation->midpoint == Point{Rat(5)});
  }
  SECTION("non-member point refuted first") {
    MidpointCertificate c{Primes{}, {{Rat(3)}, {Rat(4)}}, CertStatus::Unverified, {}};
    c = verify_certificate(std::move(c));
    REQUIRE(c.status == CertStatus::Refuted);
    CHECK(c.refutation->kind == Refutation::Kind::PointNotInSet);
    CHECK(c.refutation->i == 1);
  }
  SECTION("12 rational points on the inner circle of the annulus") {
    MidpointCertificate c;
    c.oracle = Annulus{Rat(3, 2), Rat(2)};
    auto stream = circle_stream(Rat(3, 2));
    for (int i = 0; i < 12; ++i) c.points.push_back(*stream());
    c = verify_certificate(std::move(c));
    CHECK(c.status == CertStatus::Verified);
    // Every point has squared norm exactly 9/4.
    for (const Point& p : c.points) REQUIRE(Rat(p[0] * p[0] + p[1] * p[1]) == Rat(9, 4));
  }
  SECTION("verification is permutation invariant") {
    MidpointCertificate c;
    c.oracle = RankLeOne{2, 2};
    for (long long k : {7, 2, 19, 0, 11}) c.points.push_back(rank1_point(k));
    CHECK(verify_certificate(c).status == CertStatus::Verified);
    std::reverse(c.points.begin(), c.points.end());
    CHECK(verify_certificate(c).status == CertStatus::Verified);
  }
}

TEST_CASE("even-k parabola certificate") {
  MidpointCertificate c;
  c.oracle = ParabolaPwl{};
  auto stream = even_parabola_stream();
  for (int i = 0; i < 10; ++i) c.points.push_back(*stream());
  CHECK(verify_certificate(c).status == CertStatus::Verified);

  // Adjacent integers would break it: the chord of (0,0),(1,1) lies on the
  // interpolant.
  MidpointCertificate bad{ParabolaPwl{}, {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}},
                          CertStatus::Unverified, {}};
  bad = verify_certificate(std::move(bad));
  CHECK(bad.status == CertStatus::Refuted);
  CHECK(bad.refutation->kind == Refutation::Kind::MidpointInSet);
}

TEST_CASE("greedy certificate search") {
  SECTION("primes from 3 reach size 8") {
    SearchResult res = search_certificate(Primes{}, primes_stream(3), 8, 1'000'000);
    CHECK_FALSE(res.exhausted);
    CHECK(res.certificate.status == CertStatus::Verified);
    CHECK(res.certificate.points.size() == 8);
    // Deterministic given the stream.
    SearchResult res2 = search_certificate(Primes{}, primes_stream(3), 8, 1'000'000);
    CHECK(res.certificate.points == res2.certificate.points);
    CHECK(res.certificate.points[0] == Point{Rat(3)});
    CHECK(res.certificate.points[1] == Point{Rat(5)});
  }
  SECTION("mixed hyperbola stalls at two points") {
    SearchResult res = search_certificate(HyperbolaMixed{}, lattice_diag_stream(), 8, 4000);
    CHECK(res.exhausted);
    CHECK(res.certificate.points.size() == 2);
    CHECK(res.certificate.status == CertStatus::Verified);  // as a size-2 family
  }
  SECTION("collinear grid caps at two") {
    UserGrid grid{{{Rat(0)}, {Rat(1)}, {Rat(2)}}};
    SearchResult res = search_certificate(grid, grid_stream(grid.points), 3, 1000);
    CHECK(res.exhausted);
    CHECK(res.certificate.points.size() == 2);
  }
  SECTION("target below two is rejected") {
    CHECK_THROWS_AS(search_certificate(Primes{}, primes_stream(), 1, 10), std::invalid_argument);
  }
}

TEST_CASE("same parity pair") {
  SECTION("pigeonhole example in d = 2") {
    auto pair = same_parity_pair({{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}});
    REQUIRE(pair.has_value());
    CHECK(pair->first == 0);
    CHECK(pair->second == 4);
  }
  SECTION("d = 1") {
    auto pair = same_parity_pair({{1}, {3}});
    REQUIRE(pair.has_value());
  }
  SECTION("short list without a pair") {
    CHECK_FALSE(same_parity_pair({{0, 0}, {0, 1}}).has_value());
  }
  SECTION("random lists of 2^d + 1 vectors always pair with integral midpoint") {
    std::mt19937_64 rng(55);
    std::uniform_int_distribution<long long> coord(-100, 100);
    for (int d = 1; d <= 6; ++d)
      for (int iter = 0; iter < 50; ++iter) {
        std::vector<std::vector<long long>> vecs;
        for (int i = 0; i < (1 << d) + 1; ++i) {
          std::vector<long long> v(d);
          for (auto& c : v) c = coord(rng);
          vecs.push_back(std::move(v));
        }
        auto pair = same_parity_pair(vecs);
        REQUIRE(pair.has_value());
        for (int c = 0; c < d; ++c)
          REQUIRE((vecs[pair->first][c] + vecs[pair->second][c]) % 2 == 0);
      }
  }
}
