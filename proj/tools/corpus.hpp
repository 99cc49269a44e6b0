#pragma once

// Seeded self-check suites behind `stonekit corpus`. Each suite builds
// hypothesis-satisfying instances, runs the library operation and the
// consistency checks it promises; any Error or disagreement is a violation
// and dumps a reproducer.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json_io.hpp"
#include "stonekit/criterion.hpp"
#include "stonekit/descent.hpp"
#include "stonekit/generate.hpp"
#include "stonekit/stone.hpp"

namespace stonekit::corpus {

struct Options {
  std::uint64_t seed = 20240601;
  std::size_t max_size = 6;
  std::size_t count = 100;  // random instances per suite
  bool inject_mutant = false;
  std::filesystem::path reproducer_dir = ".";
};

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::optional<std::filesystem::path> reproducer;
};

/// One generated instance: its inputs as JSON and the check to run.
struct Case {
  io::json input;
  std::function<void()> check;
};

using Generator = std::function<std::optional<Case>(gen::Rng&, std::size_t index)>;

namespace detail {

inline io::json map_json(const SpectralMap& f) {
  return {{"src", io::emit_space(f.src())}, {"dst", io::emit_space(f.dst())}, {"assign", f.assignment()}};
}

inline io::json lattice_map_json(const LatticeMap& f) {
  return {{"src", io::emit_lattice(f.src())}, {"dst", io::emit_lattice(f.dst())}, {"assign", f.assignment()}};
}

inline io::json row_json(const ParallelRow& r) {
  return {{"sizes", {r.s0, r.s1, r.s2}}, {"f", r.f}, {"alpha", r.a}, {"beta", r.b}};
}

inline io::json ladder_json(const LadderDiagram& l, const char* kind) {
  io::json j{{"kind", kind}, {"top", row_json(l.top)}, {"bottom", row_json(l.bottom)},
             {"i0", l.i0}, {"i1", l.i1}, {"i2", l.i2}};
  if (l.u) j["top"]["u"] = *l.u;
  if (l.v) j["top"]["v"] = *l.v;
  if (l.r0) j["r0"] = *l.r0;
  if (l.r1) j["r1"] = *l.r1;
  if (l.r2) j["r2"] = *l.r2;
  return j;
}

inline void violation(const std::string& what, std::vector<std::size_t> witness = {}) {
  throw Error(ErrorKind::InvariantViolation, what, std::move(witness));
}

inline std::size_t pick_size(gen::Rng& rng, std::size_t max) { return gen::uniform(rng, 1, max); }

}  // namespace detail

inline std::vector<std::pair<std::string, Generator>> suites(const Options& opt) {
  using detail::violation;
  const std::size_t max = opt.max_size;
  std::vector<std::pair<std::string, Generator>> out;

  out.emplace_back("stone-roundtrip", [max](gen::Rng& rng, std::size_t) -> std::optional<Case> {
    FinSpace x = FinSpace::from_poset(gen::poset(rng, detail::pick_size(rng, std::min<std::size_t>(max, 8))));
    return Case{io::emit_space(x), [x] {
                  Assignment w = round_trip_space(x);
                  DistLattice l = omega(x);
                  LatticeMap m = round_trip_lattice(l);
                  if (!lattice_isomorphism(l, m.dst())) violation("Ω(spec(L)) not isomorphic to L");
                  (void)w;
                }};
  });

  out.emplace_back("equalizer", [max, mutant = opt.inject_mutant](gen::Rng& rng, std::size_t i) -> std::optional<Case> {
    DistLattice l = from_birkhoff(gen::poset(rng, detail::pick_size(rng, std::min<std::size_t>(max, 5))));
    DistLattice m = from_birkhoff(gen::poset(rng, detail::pick_size(rng, std::min<std::size_t>(max, 5))));
    LatticeMap a = gen::lattice_map(rng, l, m);
    LatticeMap b = gen::lattice_map(rng, l, m);
    if (mutant && i == 0) {
      Assignment bad = a.assignment();
      bad[l.top()] = m.bottom();  // breaks preservation of 1
      a = LatticeMap::unchecked(l, m, bad);
    }
    io::json input{{"alpha", detail::lattice_map_json(a)}, {"beta", detail::lattice_map_json(b)}};
    return Case{input, [a, b] {
                  LatticeMap va = LatticeMap::validate(a.src(), a.dst(), a.assignment());
                  LatticeMap vb = LatticeMap::validate(b.src(), b.dst(), b.assignment());
                  Equalizer e = equalizer(va, vb);
                  for (std::size_t x = 0; x < va.src().size(); ++x) {
                    const bool in = std::binary_search(e.carrier.begin(), e.carrier.end(), x);
                    if (in != (va(x) == vb(x))) violation("carrier differs from the set equalizer", {x});
                  }
                  (void)sublattice(va.src(), e.carrier);
                }};
  });

  out.emplace_back("pipeline", [max](gen::Rng& rng, std::size_t) -> std::optional<Case> {
    FinSpace z = FinSpace::from_poset(gen::poset(rng, gen::uniform(rng, 0, max)));
    FinSpace y = FinSpace::from_poset(gen::poset(rng, detail::pick_size(rng, max)));
    SpectralMap g = gen::spectral_map(rng, z, y), h = gen::spectral_map(rng, z, y);
    io::json input{{"Z", io::emit_space(z)}, {"Y", io::emit_space(y)}, {"g", g.assignment()}, {"h", h.assignment()}};
    return Case{input, [g, h] {
                  CoeqProblem p = CoeqProblem::validate(g, h);
                  ComparisonReport r = comparison(p);
                  FinSpace k = FinSpace::from_poset(kq(r.topological.space).poset);
                  if (!homeomorphism(k, r.spectral.space)) violation("spectral coequalizer differs from KQ(T^Top)");
                }};
  });

  out.emplace_back("fork-injective", [max](gen::Rng& rng, std::size_t) -> std::optional<Case> {
    if (max == 0) return std::nullopt;
    LadderDiagram l = gen::injective_ladder(rng, std::max<std::size_t>(max, 1));
    return Case{detail::ladder_json(l, "injective"), [l] {
                  InjectiveLemmaReport r = lemma_injective_decide(l);
                  if (!r.equivalent) violation("(a) <=> (b) fails for the injective lemma");
                }};
  });

  out.emplace_back("fork-retraction", [max](gen::Rng& rng, std::size_t) -> std::optional<Case> {
    if (max == 0) return std::nullopt;
    LadderDiagram l = gen::retraction_ladder(rng, max);
    return Case{detail::ladder_json(l, "retraction"), [l] {
                  RetractionLemmaReport r = lemma_retraction_decide(l);
                  if (!r.equivalent) violation("(a) <=> (b) <=> (c) fails for the retraction lemma");
                }};
  });

  out.emplace_back("criterion", [max](gen::Rng& rng, std::size_t) -> std::optional<Case> {
    FinSpace x = FinSpace::from_poset(gen::poset(rng, detail::pick_size(rng, max)));
    EquivRelation r = gen::relation(rng, x.size());
    io::json input{{"space", io::emit_space(x)}, {"relation", io::emit_relation(r)}};
    return Case{input, [x, r] { (void)check_quotient_criterion(x, r); }};
  });

  out.emplace_back("orbit", [max](gen::Rng& rng, std::size_t i) -> std::optional<Case> {
    GroupAction a = gen::cyclic_action(rng, detail::pick_size(rng, std::min<std::size_t>(max, 8)), 2 + i % 2);
    io::json input{{"space", io::emit_space(a.space())}, {"group", a.elements()}};
    return Case{input, [a] { (void)group_coequalizer(a); }};
  });

  out.emplace_back("quotient-oracle", [max](gen::Rng& rng, std::size_t) -> std::optional<Case> {
    FinSpace x = gen::space(rng, detail::pick_size(rng, max));
    EquivRelation r = gen::relation(rng, x.size());
    io::json input{{"space", io::emit_space(x)}, {"relation", io::emit_relation(r)}};
    return Case{input, [x, r] { (void)quotient(x, r, OracleMode::On); }};
  });

  out.emplace_back("descent", [max](gen::Rng& rng, std::size_t) -> std::optional<Case> {
    if (max < 2) return std::nullopt;
    FinPoset x = gen::poset(rng, gen::uniform(rng, 1, 3));
    FinPoset c = gen::poset(rng, gen::uniform(rng, 1, 2));
    const std::size_t c0 = gen::uniform(rng, 0, c.size() - 1);
    io::json input{{"X", io::emit_poset(x)}, {"C", io::emit_poset(c)}, {"c0", c0}};
    return Case{input, [x, c, c0] { (void)verify_split_descent(gen::split_descent(x, c, c0)); }};
  });
  return out;
}

inline std::filesystem::path dump_reproducer(const Options& opt, const std::string& suite, std::size_t index,
                                             const io::json& input, const Error& e) {
  std::filesystem::create_directories(opt.reproducer_dir);
  const std::filesystem::path path =
      opt.reproducer_dir / ("stonekit-repro-" + suite + "-" + std::to_string(index) + ".json");
  io::json j{{"suite", suite}, {"seed", opt.seed}, {"instance", index}, {"input", input}, {"error", io::emit_error(e)}};
  std::ofstream(path) << io::dump(j);
  return path;
}

/// Runs every suite; the first failure of each suite is dumped.
inline std::vector<SuiteResult> run(const Options& opt, std::ostream& log) {
  std::vector<SuiteResult> results;
  std::uint64_t salt = 0;
  for (auto& [name, make] : suites(opt)) {
    gen::Rng rng(opt.seed + 0x9e3779b97f4a7c15ULL * ++salt);
    SuiteResult res;
    res.name = name;
    const std::size_t count = opt.max_size == 0 ? 0 : opt.count;
    for (std::size_t i = 0; i < count; ++i) {
      std::optional<Case> c = make(rng, i);
      if (!c) continue;
      try {
        c->check();
        ++res.passed;
      } catch (const Error& e) {
        ++res.failed;
        if (!res.reproducer) {
          res.reproducer = dump_reproducer(opt, name, i, c->input, e);
          log << name << ": instance " << i << " failed: " << to_string(e.kind()) << ": " << e.message();
          if (!e.witness().empty()) {
            log << " witness";
            for (std::size_t w : e.witness()) log << ' ' << w;
          }
          log << " (reproducer " << res.reproducer->string() << ")\n";
        }
      }
    }
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace stonekit::corpus
