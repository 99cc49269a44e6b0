#pragma once

// Command-line front end. run() is the whole program minus process exit so
// that tests can drive it in-process.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "corpus.hpp"
#include "json_io.hpp"
#include "stonekit/criterion.hpp"
#include "stonekit/descent.hpp"
#include "stonekit/fork.hpp"
#include "stonekit/stone.hpp"

namespace stonekit::cli {

using io::json;

enum Exit : int { kOk = 0, kInternal = 1, kValidation = 2 };

struct Flags {
  std::string input;
  std::string output;
  std::string dot;
  std::string cat = "both";
  std::string oracle = "auto";
  std::string group;
  std::string relation;
  std::uint64_t seed = corpus::Options{}.seed;
  std::size_t max_size = corpus::Options{}.max_size;
  std::size_t count = corpus::Options{}.count;
  bool inject_mutant = false;
  std::string reproducer_dir = ".";
};

/// Emitted text plus an optional DOT document.
struct Output {
  std::string text;
  std::string dot;
};

inline OracleMode oracle_mode(const std::string& s) {
  if (s == "on") return OracleMode::On;
  if (s == "off") return OracleMode::Off;
  return OracleMode::Auto;
}

inline json space_summary(const FinSpace& x) {
  return {{"space", io::emit_space(x)}, {"points", x.size()}, {"t0", x.is_t0()}};
}

inline Output cmd_spec(const Flags& fl) {
  DistLattice l = io::parse_lattice(io::Document::open(fl.input));
  FinSpace s = spec_of_lattice(l).space;
  return {io::dump(io::emit_space(s)), io::dot_space(s, "spec")};
}

inline Output cmd_omega(const Flags& fl) {
  FinSpace x = io::parse_space(io::load_file(fl.input));
  DistLattice l = omega(x);
  return {io::dump(io::emit_lattice(l)), io::dot_lattice(l, "omega")};
}

inline Output cmd_hochster(const Flags& fl) {
  FinSpace x = io::parse_space(io::load_file(fl.input));
  FinSpace d = hochster_dual(x);
  return {io::dump(io::emit_space(d)), io::dot_space(d, "hochster")};
}

inline Output cmd_kq(const Flags& fl) {
  FinSpace x = io::parse_space(io::load_file(fl.input));
  FinSpace k = FinSpace::from_poset(kq(x).poset);
  return {io::dump(io::emit_space(k)), io::dot_space(k, "kq")};
}

inline Output cmd_coeq(const Flags& fl) {
  CoeqProblem p = io::parse_coeq(io::Document::open(fl.input));
  json report;
  std::string dot = io::dot_space(p.target(), "Y");
  const OracleMode mode = oracle_mode(fl.oracle);
  auto spectral_json = [](const SpectralCoequalizer& s) {
    json j = space_summary(s.space);
    j["map"] = s.map.assignment();
    j["equalizer_size"] = s.equalizer.lattice.size();
    return j;
  };
  auto top_json = [](const Quotient& q) {
    json j = space_summary(q.space);
    j["map"] = q.map.assignment();
    j["kq_points"] = kq(q.space).poset.size();
    return j;
  };
  if (fl.cat == "spec") {
    SpectralCoequalizer s = spectral_coequalizer(p);
    report["spectral"] = spectral_json(s);
    dot += io::dot_space(s.space, "spectral");
  } else if (fl.cat == "top") {
    Quotient q = topological_coequalizer(p.g(), p.h(), mode);
    report["topological"] = top_json(q);
    dot += io::dot_space(q.space, "topological");
  } else {
    ComparisonReport c = comparison(p, mode);
    report["spectral"] = spectral_json(c.spectral);
    report["topological"] = top_json(c.topological);
    json flags = json::array();
    if (!c.top_t0) flags.push_back("not T0");
    if (!c.p_injective) flags.push_back("p not injective");
    report["comparison"] = {{"p", c.p},
                            {"surjective", c.p_surjective},
                            {"injective", c.p_injective},
                            {"closed", c.p_closed},
                            {"phi_s_closed", c.phi_s_closed},
                            {"homeomorphism", c.p_homeomorphism},
                            {"top_t0", c.top_t0},
                            {"kq_homeomorphism", c.kq_homeomorphism},
                            {"flags", flags}};
    dot += io::dot_space(c.spectral.space, "spectral") + io::dot_space(c.topological.space, "topological");
  }
  return {io::dump(report), dot};
}

inline Output cmd_check_fork(const Flags& fl) {
  json j = io::load_file(fl.input);
  json report;
  if (!j.contains("kind")) {
    ForkDiagram d = io::parse_fork(j);
    report["equalizer"] = io::emit_verdict(is_equalizer(d));
    if (d.u() && d.v()) report["split"] = io::emit_verdict(split_fork_check(d));
    return {io::dump(report), {}};
  }
  io::LadderFile lf = io::parse_ladder(j);
  report["kind"] = lf.kind;
  if (lf.kind == "injective") {
    InjectiveLemmaReport r = lemma_injective_decide(lf.ladder);
    report["bottom_is_equalizer"] = io::emit_verdict(r.bottom_is_equalizer);
    report["lifting_condition"] = io::emit_verdict(r.lifting_condition);
    report["equivalent"] = r.equivalent;
  } else {
    RetractionLemmaReport r = lemma_retraction_decide(lf.ladder);
    report["r0_bijective"] = io::emit_verdict(r.r0_bijective);
    report["square_commutes"] = io::emit_verdict(r.square_commutes);
    report["bottom_is_equalizer"] = io::emit_verdict(r.bottom_is_equalizer);
    report["equivalent"] = r.equivalent;
  }
  return {io::dump(report), {}};
}

inline Output cmd_descend(const Flags& fl) {
  DescentDiagram d = io::parse_descent(io::Document::open(fl.input));
  DescentReport r = verify_split_descent(d);
  json report{{"certified", true},
              {"agreement", r.agreement},
              {"equalizer", {{"size", r.equalizer.lattice.size()}, {"carrier", r.equalizer.carrier}}},
              {"l0_to_equalizer", r.l0_to_equalizer},
              {"dual",
               {{"spec_L0", io::emit_space(r.spec_f.dst())},
                {"spec_f", r.spec_f.assignment()},
                {"coequalizer", io::emit_space(r.coequalizer.space)},
                {"phi_S", r.coequalizer.map.assignment()},
                {"homeomorphism", r.spec_l0_to_coequalizer}}}};
  return {io::dump(report), io::dot_space(r.spec_f.dst(), "spec_L0") + io::dot_space(r.coequalizer.space, "coequalizer")};
}

inline Output cmd_quotient(const Flags& fl) {
  const OracleMode mode = oracle_mode(fl.oracle);
  if (!fl.group.empty()) {
    GroupAction a = io::parse_action(io::Document::open(fl.group));
    OrbitReport r = group_coequalizer(a, mode);
    json report{{"group_order", a.order()},
                {"orbits", r.comparison.topological.relation.classes()},
                {"orbit_space", io::emit_space(r.orbit_space)},
                {"spectral", io::emit_space(r.comparison.spectral.space)},
                {"homeomorphism", r.homeomorphism},
                {"one_step_order", r.order_is_one_step}};
    return {io::dump(report), io::dot_space(a.space(), "X") + io::dot_space(r.orbit_space, "orbits")};
  }
  if (fl.relation.empty() || fl.input.empty())
    throw Error(ErrorKind::Parse, "quotient needs --group <action.json> or --relation <relation.json> <space.json>");
  FinSpace x = io::parse_space(io::load_file(fl.input));
  EquivRelation rel = io::parse_relation(io::load_file(fl.relation), x.size());
  QuotientCriterionReport r = check_quotient_criterion(x, rel, mode);
  json report{{"topological", space_summary(r.topological.space)},
              {"spectral", space_summary(r.spectral.space)},
              {"p_S", r.spectral.map.assignment()},
              {"comparison", r.comparison},
              {"hypotheses",
               {{"p_closed", io::emit_verdict(r.p_closed)},
                {"fibers_t1", io::emit_verdict(r.fibers_t1)},
                {"fibers_saturated", io::emit_verdict(r.fibers_saturated)}}},
              {"hypotheses_hold", r.hypotheses_hold()},
              {"c_homeomorphism", r.c_homeomorphism}};
  return {io::dump(report), io::dot_space(r.topological.space, "X/R") + io::dot_space(r.spectral.space, "X//R")};
}

/// Summary text and whether every suite passed.
inline std::pair<Output, bool> cmd_corpus(const Flags& fl, std::ostream& err) {
  corpus::Options opt;
  opt.seed = fl.seed;
  opt.max_size = fl.max_size;
  opt.count = fl.count;
  opt.inject_mutant = fl.inject_mutant;
  opt.reproducer_dir = fl.reproducer_dir;
  std::vector<corpus::SuiteResult> res = corpus::run(opt, err);
  std::ostringstream os;
  bool ok = true;
  std::size_t passed = 0, failed = 0;
  for (const auto& r : res) {
    os << r.name << ": " << r.passed << " passed, " << r.failed << " failed\n";
    ok = ok && r.failed == 0;
    passed += r.passed;
    failed += r.failed;
  }
  os << "total: " << passed << " passed, " << failed << " failed (seed " << fl.seed << ")\n";
  return {{os.str(), {}}, ok};
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::Parse, "cannot write " + path);
  f << text;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"stonekit: finite Stone duality, coequalizers and descent"};
  app.require_subcommand(1);
  Flags fl;
  auto add_common = [&](CLI::App* sub, bool needs_input) {
    sub->add_option("-o,--output", fl.output, "write the result here instead of stdout");
    sub->add_option("--dot", fl.dot, "write Hasse diagrams in DOT format");
    sub->add_option("--oracle", fl.oracle, "quotient oracle cross-check")->check(CLI::IsMember({"on", "off", "auto"}));
    sub->add_option("--seed", fl.seed, "random seed");
    sub->add_option("--max-size", fl.max_size, "largest generated instance");
    if (needs_input) sub->add_option("input", fl.input, "input JSON file")->required();
  };
  auto* spec = app.add_subcommand("spec", "prime spectrum of a lattice");
  auto* omg = app.add_subcommand("omega", "lattice of opens of a space");
  auto* hoch = app.add_subcommand("hochster", "Hochster dual of a T0 space");
  auto* kqc = app.add_subcommand("kq", "Kolmogorov quotient of a space");
  auto* coeq = app.add_subcommand("coeq", "spectral and topological coequalizers of a fork");
  auto* fork = app.add_subcommand("check-fork", "split fork and ladder lemma checks");
  auto* desc = app.add_subcommand("descend", "verify a split descent diagram of lattices");
  auto* quot = app.add_subcommand("quotient", "orbit spaces and the quotient criterion");
  auto* corp = app.add_subcommand("corpus", "run the seeded self-check suites");
  for (auto* s : {spec, omg, hoch, kqc, coeq, fork, desc}) add_common(s, true);
  coeq->add_option("--cat", fl.cat, "which coequalizer")->check(CLI::IsMember({"spec", "top", "both"}));
  add_common(quot, false);
  quot->add_option("--group", fl.group, "group action JSON");
  quot->add_option("--relation", fl.relation, "equivalence relation JSON");
  quot->add_option("input", fl.input, "space JSON (with --relation)");
  add_common(corp, false);
  corp->add_option("--count", fl.count, "random instances per suite");
  corp->add_flag("--inject-mutant", fl.inject_mutant, "corrupt one lattice map to exercise failure reporting");
  corp->add_option("--reproducer-dir", fl.reproducer_dir, "directory for reproducer files");

  std::vector<const char*> argv{"stonekit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    Output result;
    int status = kOk;
    if (spec->parsed()) result = cmd_spec(fl);
    else if (omg->parsed()) result = cmd_omega(fl);
    else if (hoch->parsed()) result = cmd_hochster(fl);
    else if (kqc->parsed()) result = cmd_kq(fl);
    else if (coeq->parsed()) result = cmd_coeq(fl);
    else if (fork->parsed()) result = cmd_check_fork(fl);
    else if (desc->parsed()) result = cmd_descend(fl);
    else if (quot->parsed()) result = cmd_quotient(fl);
    else {
      auto [o, ok] = cmd_corpus(fl, err);
      result = std::move(o);
      status = ok ? kOk : kInternal;
    }
    if (fl.output.empty()) out << result.text;
    else write_file(fl.output, result.text);
    if (!fl.dot.empty()) write_file(fl.dot, result.dot);
    return status;
  } catch (const Error& e) {
    err << io::dump(io::emit_error(e));
    return e.trap() ? kInternal : kValidation;
  } catch (const std::exception& e) {
    err << io::dump(json{{"error", "InternalError"}, {"message", e.what()}});
    return kInternal;
  }
}

}  // namespace stonekit::cli
