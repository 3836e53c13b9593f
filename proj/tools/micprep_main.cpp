// Command-line front end: every library operation behind one subcommand with
// JSON payloads on stdout and logs on stderr. Exit codes: 0 success, 1 for
// domain-negative verdicts (NotRepresentable, Refuted, Violation, no match,
// ...), 2 for usage or input errors.

#include "micprep/conic.hpp"
#include "micprep/conic_build.hpp"
#include "micprep/conic_text.hpp"
#include "micprep/family.hpp"
#include "micprep/json.hpp"
#include "micprep/midpoint.hpp"
#include "micprep/natset.hpp"
#include "micprep/semigroup.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace micprep;
using io::Json;

constexpr int kOk = 0;
constexpr int kVerdict = 1;
constexpr int kUsage = 2;

struct CommonOpts {
  std::string input;   // empty: stdin
  std::string output;  // empty: stdout
  double tolerance = 1e-9;
  std::uint64_t seed = 0;  // reserved for randomized streams; builtins are deterministic
  std::uint64_t budget = 1'000'000;
};

void add_io_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("-i,--input", opts.input, "input JSON file (default: stdin)");
  cmd->add_option("-o,--output", opts.output, "output file (default: stdout)");
}

std::string slurp(const CommonOpts& opts) {
  if (opts.input.empty()) {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(opts.input);
  if (!f) throw io::bad_input("cannot open input file: " + opts.input);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json read_json(const CommonOpts& opts) {
  try {
    return Json::parse(slurp(opts));
  } catch (const nlohmann::json::parse_error& e) {
    throw io::bad_input(std::string("invalid JSON: ") + e.what());
  }
}

void write_payload(const CommonOpts& opts, const std::string& text) {
  if (opts.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opts.output);
  if (!f) throw io::bad_input("cannot open output file: " + opts.output);
  f << text;
}

void emit(const CommonOpts& opts, const Json& payload) {
  write_payload(opts, payload.dump(2) + "\n");
}

// Membership predicate on naturals for the periodicity scanner.
std::function<bool(nat)> nat_oracle_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "natset") {
    auto s = std::make_shared<natset::EventuallyPeriodicSet>(io::eps_from_any_json(j));
    return [s](nat n) { return s->contains(n); };
  }
  if (kind == "primes") return [](nat n) { return midpoint::is_prime(Int(n)); };
  throw io::bad_input("natset scan supports oracle kinds 'natset' and 'primes'");
}

// Membership predicate on rational points for the window checker.
std::function<bool(const std::vector<Rat>&)> window_oracle_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "natset") {
    auto s = std::make_shared<natset::EventuallyPeriodicSet>(io::eps_from_any_json(j));
    return [s](const std::vector<Rat>& p) {
      return p.size() == 1 && is_integer(p[0]) && p[0] >= 0 &&
             s->contains(rat_num(p[0]).convert_to<nat>());
    };
  }
  auto oracle = std::make_shared<midpoint::SetOracle>(io::oracle_from_json(j));
  return [oracle](const std::vector<Rat>& p) { return midpoint::oracle_member(*oracle, p); };
}

// ---------------------------------------------------------------------------

int run_natset(const std::string& op, const CommonOpts& opts) {
  if (op == "scan") {
    Json in = read_json(opts);
    nat window = in.contains("window") ? io::nat_from_json(in.at("window")) : 1000;
    nat max_period = in.contains("max_period") ? io::nat_from_json(in.at("max_period")) : 64;
    auto oracle = nat_oracle_from_json(in.at("oracle"));
    auto s = natset::oracle_periodicity_scan(oracle, window, max_period);
    if (!s) {
      emit(opts, Json{{"found", false}, {"window", window}, {"max_period", max_period}});
      return kVerdict;
    }
    emit(opts, Json{{"found", true}, {"eps", io::eps_to_json(*s)}});
    return kOk;
  }

  natset::EventuallyPeriodicSet s = io::eps_from_any_json(read_json(opts));
  if (op == "normalize") {
    emit(opts, io::eps_to_json(s));
    return kOk;
  }
  if (op == "decide-milp") {
    natset::MilpRepVerdict v = natset::decide_rational_milp(s);
    emit(opts, io::milp_verdict_to_json(v));
    return v.kind == natset::MilpRepVerdict::Kind::NotRepresentable ? kVerdict : kOk;
  }
  if (op == "decide-micp") {
    natset::NatUnionDecomposition d = natset::decide_rational_micp(s);
    emit(opts, Json{{"a0", d.a0}, {"aps", io::aps_to_json(d.progressions)}});
    return kOk;
  }
  throw io::bad_input("unknown operation: " + op);
}

semigroup::SemigroupGenerators gens_from_json(const Json& j) {
  try {
    return semigroup::SemigroupGenerators{
        io::vector_from_json<nat>(j, io::nat_from_json, "naturals")};
  } catch (const std::invalid_argument& e) {
    throw io::bad_input(e.what());
  }
}

int run_semigroup(const std::string& op, const CommonOpts& opts, std::optional<nat> n) {
  Json in = read_json(opts);
  if (op == "member") {
    if (!n) throw io::bad_input("semigroup member needs --n");
    bool member = semigroup::intcone_member(gens_from_json(in.at("generators")), *n);
    emit(opts, Json{{"n", *n}, {"member", member}});
    return member ? kOk : kVerdict;
  }
  if (op == "gaps") {
    auto gens = gens_from_json(in.at("generators"));
    if (gens.empty()) throw io::bad_input("gaps needs a nonempty generator set");
    emit(opts, io::gap_data_to_json(semigroup::gaps_and_conductor(gens)));
    return kOk;
  }
  if (op == "to-eps") {
    emit(opts, io::eps_to_json(semigroup::milp_nat_to_eps(io::milp_nat_rep_from_json(in))));
    return kOk;
  }
  if (op == "from-eps") {
    auto rep = semigroup::eps_to_milp_nat(io::eps_from_any_json(in));
    if (!rep) {
      emit(opts, Json{{"verdict", "NotRepresentable"}});
      return kVerdict;
    }
    emit(opts, io::milp_nat_rep_to_json(*rep));
    return kOk;
  }
  throw io::bad_input("unknown operation: " + op);
}

int run_conic(const std::string& op, const CommonOpts& opts) {
  Json in = read_json(opts);
  if (op == "hull") {
    conic::LinConicSet t = io::linconic_from_json(in.at("set"));
    auto witness = io::q2_point_from_json(in.at("witness"));
    emit(opts, io::linconic_to_json(conic::conic_hull(t, witness)));
    return kOk;
  }
  if (op == "build-union") {
    emit(opts, io::formulation_to_json(conic::build_bounded_union(io::union_spec_from_json(in))));
    return kOk;
  }
  if (op == "build-nat") {
    auto a0 = io::vector_from_json<nat>(in.at("a0"), io::nat_from_json, "naturals");
    auto bases = io::vector_from_json<nat>(in.at("bases"), io::nat_from_json, "naturals");
    nat step = io::nat_from_json(in.at("step"));
    emit(opts, io::formulation_to_json(conic::build_nat_union_formulation(a0, bases, step)));
    return kOk;
  }
  if (op == "eval") {
    const Json& jp = in.at("point");
    bool approximate = false;
    for (const Json& e : jp) approximate = approximate || e.is_number_float();
    conic::FeasReport rep;
    auto eval_target = [&](auto&& point) {
      if (in.contains("formulation"))
        return conic::eval_point(io::formulation_from_json(in.at("formulation")), point);
      return conic::eval_point(io::linconic_from_json(in.at("set")), point);
    };
    auto eval_target_tol = [&](const std::vector<double>& point) {
      if (in.contains("formulation"))
        return conic::eval_point(io::formulation_from_json(in.at("formulation")), point,
                                 opts.tolerance);
      return conic::eval_point(io::linconic_from_json(in.at("set")), point, opts.tolerance);
    };
    if (approximate) {
      std::vector<double> point;
      for (const Json& e : jp) point.push_back(e.get<double>());
      rep = eval_target_tol(point);
    } else {
      rep = eval_target(io::q2_point_from_json(jp));
    }
    emit(opts, io::feas_report_to_json(rep));
    return rep.feasible ? kOk : kVerdict;
  }
  if (op == "decompose") {
    auto verts = io::vector_from_json<std::vector<Rat>>(in.at("vertices"), io::point_from_json,
                                                        "points");
    auto rays = io::vector_from_json<std::vector<Int>>(
        in.at("rays"),
        [](const Json& jr) {
          return io::vector_from_json<Int>(jr, io::int_from_json, "integers");
        },
        "integer vectors");
    auto lambdas = io::point_from_json(in.at("lambdas"));
    auto gammas = io::point_from_json(in.at("gammas"));
    emit(opts, io::decomposition_to_json(conic::decompose_point(verts, rays, lambdas, gammas)));
    return kOk;
  }
  if (op == "milprep-check") {
    auto oracle = window_oracle_from_json(in.at("oracle"));
    std::vector<std::vector<std::vector<Rat>>> pieces;
    for (const Json& jp : in.at("pieces"))
      pieces.push_back(io::vector_from_json<std::vector<Rat>>(jp, io::point_from_json, "points"));
    auto rays = io::vector_from_json<std::vector<Int>>(
        in.at("rays"),
        [](const Json& jr) {
          return io::vector_from_json<Int>(jr, io::int_from_json, "integers");
        },
        "integer vectors");
    conic::WindowBox window;
    window.lo = io::vector_from_json<Int>(in.at("window").at("lo"), io::int_from_json, "integers");
    window.hi = io::vector_from_json<Int>(in.at("window").at("hi"), io::int_from_json, "integers");
    nat grid = in.contains("grid_denominator") ? io::nat_from_json(in.at("grid_denominator")) : 1;
    std::uint64_t max_mult =
        in.contains("max_multiplier") ? io::nat_from_json(in.at("max_multiplier")) : 64;
    conic::MatchReport rep =
        conic::milprep_window_check(oracle, pieces, rays, window, grid, max_mult);
    emit(opts, io::match_report_to_json(rep));
    return rep.equal ? kOk : kVerdict;
  }
  if (op == "emit") {
    std::string text = in.contains("formulation")
                           ? conic::emit_conic_text(io::formulation_from_json(in.at("formulation")))
                           : conic::emit_conic_text(io::linconic_from_json(in.at("set")));
    write_payload(opts, text);
    return kOk;
  }
  throw io::bad_input("unknown operation: " + op);
}

int run_midpoint(const std::string& op, const CommonOpts& opts) {
  Json in = read_json(opts);
  if (op == "verify") {
    auto cert = midpoint::verify_certificate(io::certificate_from_json(in));
    emit(opts, io::certificate_to_json(cert));
    return cert.status == midpoint::CertStatus::Verified ? kOk : kVerdict;
  }
  if (op == "search") {
    auto oracle = io::oracle_from_json(in.at("oracle"));
    auto stream = io::stream_from_json(in.at("stream"));
    std::size_t target = io::nat_from_json(in.at("target"));
    auto res = midpoint::search_certificate(oracle, std::move(stream), target, opts.budget);
    emit(opts, Json{{"certificate", io::certificate_to_json(res.certificate)},
                    {"exhausted", res.exhausted},
                    {"oracle_calls", res.oracle_calls}});
    return res.exhausted ? kVerdict : kOk;
  }
  if (op == "parity") {
    std::vector<std::vector<long long>> vectors;
    for (const Json& jv : in.at("vectors")) {
      std::vector<long long> v;
      for (const Json& e : jv) v.push_back(e.get<long long>());
      vectors.push_back(std::move(v));
    }
    auto pair = midpoint::same_parity_pair(vectors);
    if (!pair) {
      emit(opts, Json{{"found", false}});
      return kVerdict;
    }
    Json mid = Json::array();
    for (std::size_t c = 0; c < vectors[pair->first].size(); ++c)
      mid.push_back(io::rat_to_json(Rat(vectors[pair->first][c] + vectors[pair->second][c], 2)));
    emit(opts, Json{{"found", true}, {"i", pair->first}, {"j", pair->second}, {"midpoint", mid}});
    return kOk;
  }
  throw io::bad_input("unknown operation: " + op);
}

struct BeattyOpts {
  std::string epsilon;
  std::optional<nat> member;
  bool escape = false;
  nat a = 1, b = 0, k_max = 2000;
};

int run_family(const std::string& op, const CommonOpts& opts, const BeattyOpts& beatty) {
  if (op == "beatty") {
    family::BeattyGapSet s{rat_from_string(beatty.epsilon)};
    if (beatty.member) {
      bool m = s.contains(*beatty.member);
      emit(opts, Json{{"x", *beatty.member}, {"member", m}});
      return m ? kOk : kVerdict;
    }
    if (beatty.escape) {
      auto k = family::ap_escape_scan(s, beatty.a, beatty.b, beatty.k_max);
      if (k) {
        emit(opts, Json{{"found", true}, {"k", *k}, {"x", beatty.a * *k + beatty.b}});
        return kOk;
      }
      emit(opts, Json{{"found", false}, {"k_max", beatty.k_max}});
      return kVerdict;
    }
    throw io::bad_input("beatty needs --member or --escape");
  }

  Json in = read_json(opts);
  if (op == "convex-check") {
    auto fam = io::interval_family_from_json(in.at("family"));
    auto lambdas = io::point_from_json(in.at("lambdas"));
    family::ConvexCheckReport rep = family::check_convex_family(fam, lambdas);
    Json out{{"ok", rep.ok()}, {"checked", rep.checked}, {"skipped", rep.skipped.size()}};
    if (rep.violation)
      out["violation"] = Json{{"i", rep.violation->i},
                              {"j", rep.violation->j},
                              {"lambda", io::rat_to_json(rep.violation->lambda)},
                              {"side", rep.violation->lower_side ? "lower" : "upper"}};
    emit(opts, out);
    return rep.ok() ? kOk : kVerdict;
  }
  if (op == "closed-check") {
    auto fam = io::interval_family_from_json(in.at("family"));
    std::vector<family::ClosednessSample> samples;
    for (const Json& js : in.at("samples")) {
      family::ClosednessSample s;
      for (const Json& ji : js.at("indices")) s.index_seq.push_back(io::point_from_json(ji));
      for (const Json& jp : js.at("points")) s.point_seq.push_back(io::q2_from_json(jp));
      s.limit_index = io::point_from_json(js.at("limit_index"));
      s.limit_point = io::q2_from_json(js.at("limit_point"));
      samples.push_back(std::move(s));
    }
    family::ClosednessReport rep = family::check_closed_sampled(fam, samples);
    Json out{{"ok", rep.ok()}, {"checked", rep.checked}};
    if (rep.violation) out["violation"] = *rep.violation;
    emit(opts, out);
    return rep.ok() ? kOk : kVerdict;
  }
  if (op == "recession") {
    auto p = io::polyhedron_from_json(in);
    auto r = family::integer_recession_direction(p);
    if (!r) {
      emit(opts, Json{{"found", false}});
      return kVerdict;
    }
    Json dir = Json::array();
    for (const Int& c : *r) dir.push_back(io::int_to_json(c));
    emit(opts, Json{{"found", true}, {"direction", dir}});
    return kOk;
  }
  throw io::bad_input("unknown operation: " + op);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"representability toolkit for mixed-integer convex sets"};
  app.require_subcommand(1);
  CommonOpts opts;
  BeattyOpts beatty;
  std::optional<nat> semigroup_n;
  std::string op;
  int rc = kOk;

  auto make_group = [&](const std::string& name, const std::vector<std::string>& ops,
                        auto&& runner) {
    CLI::App* group = app.add_subcommand(name);
    group->require_subcommand(1);
    for (const std::string& sub : ops) {
      CLI::App* cmd = group->add_subcommand(sub);
      add_io_flags(cmd, opts);
      cmd->add_option("--tolerance", opts.tolerance, "feasibility tolerance for float points");
      cmd->add_option("--seed", opts.seed, "seed for randomized streams");
      cmd->add_option("--budget", opts.budget, "search budget (oracle calls)");
      if (name == "semigroup") cmd->add_option("--n", semigroup_n, "query value");
      if (name == "family" && sub == "beatty") {
        cmd->add_option("--epsilon", beatty.epsilon, "window parameter as p/q")->required();
        cmd->add_option("--member", beatty.member, "test membership of one natural");
        cmd->add_flag("--escape", beatty.escape, "scan a*k+b for the first non-member");
        cmd->add_option("--a", beatty.a, "progression step");
        cmd->add_option("--b", beatty.b, "progression offset");
        cmd->add_option("--kmax", beatty.k_max, "scan bound");
      }
      cmd->callback([&, sub, runner] {
        op = sub;
        rc = runner();
      });
    }
    return group;
  };

  make_group("natset", {"normalize", "decide-milp", "decide-micp", "scan"},
             [&] { return run_natset(op, opts); });
  make_group("semigroup", {"member", "gaps", "to-eps", "from-eps"},
             [&] { return run_semigroup(op, opts, semigroup_n); });
  make_group("conic", {"hull", "build-union", "build-nat", "eval", "decompose", "milprep-check",
                       "emit"},
             [&] { return run_conic(op, opts); });
  make_group("midpoint", {"verify", "search", "parity"}, [&] { return run_midpoint(op, opts); });
  make_group("family", {"convex-check", "closed-check", "recession", "beatty"},
             [&] { return run_family(op, opts, beatty); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
    return kUsage;
  } catch (const io::bad_input& e) {
    std::cerr << "input error: " << e.what() << "\n";
    std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
    return kUsage;
  }
  return rc;
}
