// JSON wire formats for every module type the CLI speaks. Rationals travel
// as canonical "p" / "p/q" strings (integers are also accepted on input),
// Q[sqrt2] scalars as {"u": ..., "v": ...} objects when the sqrt2 part is
// nonzero, and big integers as decimal strings. Output uses ordered_json so
// identical values serialize byte-identically.
#pragma once

#include "micprep/conic.hpp"
#include "micprep/conic_build.hpp"
#include "micprep/family.hpp"
#include "micprep/midpoint.hpp"
#include "micprep/natset.hpp"
#include "micprep/semigroup.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace micprep::io {

using Json = nlohmann::ordered_json;

struct bad_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Scalars.

inline Json rat_to_json(const Rat& q) { return rat_to_string(q); }

inline Rat rat_from_json(const Json& j) {
  try {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_number_unsigned()) return Rat(j.get<unsigned long long>());
  } catch (const std::invalid_argument& e) {
    throw bad_input(e.what());
  }
  throw bad_input("expected a rational ('p/q' string or integer), got " + j.dump());
}

inline Json q2_to_json(const Q2& x) {
  if (x.is_rational()) return rat_to_json(x.u);
  return Json{{"u", rat_to_json(x.u)}, {"v", rat_to_json(x.v)}};
}

inline Q2 q2_from_json(const Json& j) {
  if (j.is_object()) {
    Q2 x;
    if (j.contains("u")) x.u = rat_from_json(j.at("u"));
    if (j.contains("v")) x.v = rat_from_json(j.at("v"));
    return x;
  }
  return Q2{rat_from_json(j)};
}

inline Json int_to_json(const Int& n) { return n.str(); }

inline Int int_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::runtime_error&) {
      throw bad_input("bad integer literal: " + j.dump());
    }
  }
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
  throw bad_input("expected an integer, got " + j.dump());
}

inline nat nat_from_json(const Json& j) {
  if (j.is_number_unsigned()) return j.get<nat>();
  if (j.is_number_integer() && j.get<long long>() >= 0)
    return static_cast<nat>(j.get<long long>());
  throw bad_input("expected a natural number, got " + j.dump());
}

template <typename T, typename F>
std::vector<T> vector_from_json(const Json& j, F&& f, const char* what) {
  if (!j.is_array()) throw bad_input(std::string("expected an array of ") + what);
  std::vector<T> out;
  for (const Json& e : j) out.push_back(f(e));
  return out;
}

inline std::vector<Rat> point_from_json(const Json& j) {
  return vector_from_json<Rat>(j, rat_from_json, "rationals");
}

inline Json point_to_json(const std::vector<Rat>& p) {
  Json out = Json::array();
  for (const Rat& v : p) out.push_back(rat_to_json(v));
  return out;
}

// ---------------------------------------------------------------------------
// natset / semigroup.

inline Json eps_to_json(const natset::EventuallyPeriodicSet& s) {
  return Json{{"exceptional", s.exceptional},
              {"threshold", s.threshold},
              {"period", s.period},
              {"residues", s.residues}};
}

inline natset::EventuallyPeriodicSet eps_from_json(const Json& j) {
  natset::EventuallyPeriodicSet s;
  s.exceptional = vector_from_json<nat>(j.at("exceptional"), nat_from_json, "naturals");
  s.threshold = nat_from_json(j.at("threshold"));
  s.period = nat_from_json(j.at("period"));
  s.residues = vector_from_json<nat>(j.at("residues"), nat_from_json, "naturals");
  if (s.period == 0) throw bad_input("period must be >= 1");
  return s;
}

struct NatSetParts {
  std::vector<natset::ArithmeticProgression> aps;
  std::vector<nat> finite;
};

/// {"finite":[...], "aps":[{"offset":b,"step":a},...]}; also accepts a
/// canonical eventually periodic value (keyed by "residues") and splits it.
inline NatSetParts natset_parts_from_json(const Json& j) {
  NatSetParts parts;
  if (j.contains("residues")) {
    auto [finite, aps] = natset::common_step_form(eps_from_json(j));
    parts.finite = std::move(finite);
    parts.aps = std::move(aps);
    return parts;
  }
  if (j.contains("finite"))
    parts.finite = vector_from_json<nat>(j.at("finite"), nat_from_json, "naturals");
  if (j.contains("aps"))
    for (const Json& e : j.at("aps")) {
      nat off = nat_from_json(e.at("offset"));
      nat step = nat_from_json(e.at("step"));
      if (step == 0) throw bad_input("progression step must be >= 1");
      parts.aps.emplace_back(off, step);
    }
  return parts;
}

inline natset::EventuallyPeriodicSet eps_from_any_json(const Json& j) {
  NatSetParts parts = natset_parts_from_json(j);
  return natset::from_parts(parts.aps, parts.finite);
}

inline Json aps_to_json(const std::vector<natset::ArithmeticProgression>& aps) {
  Json arr = Json::array();
  for (const auto& ap : aps) arr.push_back(Json{{"offset", ap.offset}, {"step", ap.step}});
  return arr;
}

inline Json milp_verdict_to_json(const natset::MilpRepVerdict& v) {
  using Kind = natset::MilpRepVerdict::Kind;
  switch (v.kind) {
    case Kind::FiniteSet: return Json{{"verdict", "FiniteSet"}};
    case Kind::RepresentableWithStep:
      return Json{{"verdict", "RepresentableWithStep"}, {"step", v.step}};
    case Kind::NotRepresentable: return Json{{"verdict", "NotRepresentable"}};
  }
  return {};
}

inline Json gap_data_to_json(const semigroup::GapData& gd) {
  return Json{{"g", gd.g}, {"gaps", gd.gaps}, {"conductor", gd.conductor}};
}

inline Json milp_nat_rep_to_json(const semigroup::MilpNatRep& rep) {
  return Json{{"bases", rep.bases}, {"generators", rep.gens.gens}};
}

inline semigroup::MilpNatRep milp_nat_rep_from_json(const Json& j) {
  std::vector<nat> bases = vector_from_json<nat>(j.at("bases"), nat_from_json, "naturals");
  std::vector<nat> gens;
  if (j.contains("generators"))
    gens = vector_from_json<nat>(j.at("generators"), nat_from_json, "naturals");
  try {
    return semigroup::MilpNatRep{std::move(bases), semigroup::SemigroupGenerators{std::move(gens)}};
  } catch (const std::invalid_argument& e) {
    throw bad_input(e.what());
  }
}

// ---------------------------------------------------------------------------
// conic.

inline Json linconic_to_json(const conic::LinConicSet& s) {
  Json rows = Json::array();
  for (const auto& row : s.rows) {
    Json coeffs = Json::array();
    for (std::size_t j = 0; j < row.coeffs.size(); ++j)
      if (!(row.coeffs[j] == Q2{})) coeffs.push_back(Json::array({j, q2_to_json(row.coeffs[j])}));
    rows.push_back(Json{{"coeffs", coeffs}, {"constant", q2_to_json(row.constant)}});
  }
  Json blocks = Json::array();
  for (const auto& b : s.blocks)
    blocks.push_back(
        Json{{"cone", conic::cone_tag_name(b.tag)}, {"first", b.first}, {"count", b.count}});
  return Json{{"nvars", s.nvars}, {"rows", rows}, {"blocks", blocks}};
}

inline conic::LinConicSet linconic_from_json(const Json& j) {
  conic::LinConicSet s;
  s.nvars = nat_from_json(j.at("nvars"));
  for (const Json& jr : j.at("rows")) {
    conic::AffineRow row;
    row.coeffs.assign(s.nvars, Q2{});
    if (jr.contains("constant")) row.constant = q2_from_json(jr.at("constant"));
    for (const Json& jc : jr.at("coeffs")) {
      std::size_t var = nat_from_json(jc.at(0));
      if (var >= s.nvars) throw bad_input("coefficient variable index out of range");
      row.coeffs[var] = q2_from_json(jc.at(1));
    }
    s.rows.push_back(std::move(row));
  }
  for (const Json& jb : j.at("blocks")) {
    auto tag = conic::cone_tag_from_name(jb.at("cone").get<std::string>());
    if (!tag) throw bad_input("unknown cone tag " + jb.at("cone").dump());
    s.blocks.push_back({*tag, nat_from_json(jb.at("first")), nat_from_json(jb.at("count"))});
  }
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw bad_input(e.what());
  }
  return s;
}

inline Json formulation_to_json(const conic::MicpFormulation& f) {
  return Json{{"nx", f.nx}, {"ny", f.ny}, {"nz", f.nz}, {"body", linconic_to_json(f.body)}};
}

inline conic::MicpFormulation formulation_from_json(const Json& j) {
  conic::MicpFormulation f;
  f.nx = nat_from_json(j.at("nx"));
  f.ny = nat_from_json(j.at("ny"));
  f.nz = nat_from_json(j.at("nz"));
  f.body = linconic_from_json(j.at("body"));
  try {
    f.validate();
  } catch (const std::invalid_argument& e) {
    throw bad_input(e.what());
  }
  return f;
}

inline std::vector<Q2> q2_point_from_json(const Json& j) {
  return vector_from_json<Q2>(j, q2_from_json, "scalars");
}

inline Json q2_point_to_json(const std::vector<Q2>& p) {
  Json out = Json::array();
  for (const Q2& v : p) out.push_back(q2_to_json(v));
  return out;
}

inline conic::BoundedUnionSpec union_spec_from_json(const Json& j) {
  conic::BoundedUnionSpec spec;
  spec.nx = nat_from_json(j.at("nx"));
  spec.ny = nat_from_json(j.at("ny"));
  for (const Json& jp : j.at("pieces"))
    spec.pieces.push_back({linconic_from_json(jp.at("set")), q2_point_from_json(jp.at("witness"))});
  return spec;
}

inline Json feas_report_to_json(const conic::FeasReport& rep) {
  Json blocks = Json::array();
  for (const auto& b : rep.blocks)
    blocks.push_back(Json{{"block", b.block},
                          {"cone", conic::cone_tag_name(b.tag)},
                          {"ok", b.ok},
                          {"residual", b.residual}});
  return Json{{"feasible", rep.feasible},
              {"exact", rep.exact},
              {"max_residual", rep.max_residual},
              {"fractional_z", rep.fractional_z},
              {"blocks", blocks}};
}

inline Json decomposition_to_json(const conic::PointDecomposition& d) {
  Json ints = Json::array();
  for (const Int& n : d.integer_parts) ints.push_back(int_to_json(n));
  Json fracs = Json::array();
  for (const Rat& f : d.fractional) fracs.push_back(rat_to_json(f));
  Json lambdas = Json::array();
  for (const Rat& l : d.lambdas) lambdas.push_back(rat_to_json(l));
  return Json{{"point", point_to_json(d.point)},
              {"hat_point", point_to_json(d.hat_point)},
              {"lambdas", lambdas},
              {"fractional", fracs},
              {"integer_parts", ints}};
}

inline Json match_report_to_json(const conic::MatchReport& rep) {
  Json extra = Json::array(), missing = Json::array();
  for (const auto& p : rep.extra) extra.push_back(point_to_json(p));
  for (const auto& p : rep.missing) missing.push_back(point_to_json(p));
  return Json{{"equal", rep.equal},
              {"extra", extra},
              {"missing", missing},
              {"bound_hit", rep.bound_hit},
              {"enumerated", rep.enumerated}};
}

// ---------------------------------------------------------------------------
// Set oracles (shared by midpoint certificates and the window checker).

inline Json oracle_to_json(const midpoint::SetOracle& o) {
  using namespace midpoint;
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RankLeOne>)
          return Json{{"kind", "rank_le_one"}, {"m", v.m}, {"n", v.n}};
        else if constexpr (std::is_same_v<T, Annulus>)
          return Json{{"kind", "annulus"},
                      {"r_in", rat_to_json(v.r_in)},
                      {"r_out", rat_to_json(v.r_out)}};
        else if constexpr (std::is_same_v<T, Primes>)
          return Json{{"kind", "primes"}};
        else if constexpr (std::is_same_v<T, ParabolaPwl>)
          return Json{{"kind", "parabola_pwl"}};
        else if constexpr (std::is_same_v<T, HyperbolaMixed>)
          return Json{{"kind", "hyperbola_mixed"}};
        else {
          Json pts = Json::array();
          for (const auto& p : v.points) pts.push_back(point_to_json(p));
          return Json{{"kind", "user_grid"}, {"points", pts}};
        }
      },
      o);
}

inline midpoint::SetOracle oracle_from_json(const Json& j) {
  using namespace midpoint;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rank_le_one")
    return RankLeOne{nat_from_json(j.at("m")), nat_from_json(j.at("n"))};
  if (kind == "annulus") {
    Rat r_in = rat_from_json(j.at("r_in")), r_out = rat_from_json(j.at("r_out"));
    if (r_in < 0 || r_out < r_in) throw bad_input("annulus needs 0 <= r_in <= r_out");
    return Annulus{std::move(r_in), std::move(r_out)};
  }
  if (kind == "primes") return Primes{};
  if (kind == "parabola_pwl") return ParabolaPwl{};
  if (kind == "hyperbola_mixed") return HyperbolaMixed{};
  if (kind == "user_grid") {
    UserGrid g;
    for (const Json& jp : j.at("points")) g.points.push_back(point_from_json(jp));
    return g;
  }
  throw bad_input("unknown oracle kind: " + kind);
}

inline Json certificate_to_json(const midpoint::MidpointCertificate& c) {
  using midpoint::CertStatus;
  Json pts = Json::array();
  for (const auto& p : c.points) pts.push_back(point_to_json(p));
  Json out{{"oracle", oracle_to_json(c.oracle)},
           {"points", pts},
           {"status", c.status == CertStatus::Verified
                          ? "verified"
                          : (c.status == CertStatus::Refuted ? "refuted" : "unverified")}};
  if (c.refutation) {
    const auto& r = *c.refutation;
    const char* kind = r.kind == midpoint::Refutation::Kind::DuplicatePoint ? "duplicate_point"
                       : r.kind == midpoint::Refutation::Kind::PointNotInSet ? "point_not_in_set"
                                                                             : "midpoint_in_set";
    Json jr{{"kind", kind}, {"i", r.i}, {"j", r.j}};
    if (r.kind == midpoint::Refutation::Kind::MidpointInSet)
      jr["midpoint"] = point_to_json(r.midpoint);
    out["refutation"] = std::move(jr);
  }
  return out;
}

inline midpoint::MidpointCertificate certificate_from_json(const Json& j) {
  midpoint::MidpointCertificate c;
  c.oracle = oracle_from_json(j.at("oracle"));
  for (const Json& jp : j.at("points")) c.points.push_back(point_from_json(jp));
  return c;  // status always recomputed by verification
}

inline midpoint::CandidateStream stream_from_json(const Json& j) {
  using namespace midpoint;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "primes") {
    long long from = j.contains("from") ? j.at("from").get<long long>() : 3;
    return primes_stream(from);
  }
  if (kind == "integers") {
    long long start = j.contains("start") ? j.at("start").get<long long>() : 0;
    long long step = j.contains("step") ? j.at("step").get<long long>() : 1;
    return integer_stream(start, step);
  }
  if (kind == "even_parabola") return even_parabola_stream();
  if (kind == "circle") return circle_stream(rat_from_json(j.at("radius")));
  if (kind == "lattice_diag") return lattice_diag_stream();
  if (kind == "grid") {
    std::vector<Point> pts;
    for (const Json& jp : j.at("points")) pts.push_back(point_from_json(jp));
    return grid_stream(std::move(pts));
  }
  throw bad_input("unknown stream kind: " + kind);
}

// ---------------------------------------------------------------------------
// family.

inline family::IntervalFamily interval_family_from_json(const Json& j) {
  family::IntervalFamily fam;
  fam.dim = nat_from_json(j.at("dim"));
  for (const Json& jz : j.at("domain")) fam.domain.push_back(point_from_json(jz));
  for (const Json& jf : j.at("lower")) fam.lower.push_back(q2_from_json(jf));
  for (const Json& jg : j.at("upper")) {
    if (jg.is_string() && jg.get<std::string>() == "inf")
      fam.upper.emplace_back(std::nullopt);
    else
      fam.upper.emplace_back(q2_from_json(jg));
  }
  try {
    fam.validate();
  } catch (const std::invalid_argument& e) {
    throw bad_input(e.what());
  }
  return fam;
}

inline Json interval_family_to_json(const family::IntervalFamily& fam) {
  Json domain = Json::array(), lower = Json::array(), upper = Json::array();
  for (const auto& z : fam.domain) domain.push_back(point_to_json(z));
  for (const auto& f : fam.lower) lower.push_back(q2_to_json(f));
  for (const auto& g : fam.upper) upper.push_back(g ? q2_to_json(*g) : Json("inf"));
  return Json{{"dim", fam.dim}, {"domain", domain}, {"lower", lower}, {"upper", upper}};
}

inline family::RationalPolyhedron polyhedron_from_json(const Json& j) {
  family::RationalPolyhedron p;
  p.dim = nat_from_json(j.at("dim"));
  for (const Json& jr : j.at("A")) p.A.push_back(point_from_json(jr));
  for (const Json& jb : j.at("b")) p.b.push_back(rat_from_json(jb));
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw bad_input(e.what());
  }
  return p;
}

}  // namespace micprep::io
